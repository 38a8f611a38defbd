#include "kohnspec/gaussian_rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kohnspec {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    Rational n2 = o.norm2();
    Rational r = (re * o.re + im * o.im) / n2;
    Rational i = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const GaussianRational& z) {
    if (z.is_zero()) return "0";
    std::ostringstream os;
    bool have_re = sgn(z.re) != 0;
    if (have_re) os << z.re;
    if (sgn(z.im) != 0) {
        if (sgn(z.im) > 0 && have_re) os << "+";
        if (z.im == -1)
            os << "-";
        else if (z.im != 1)
            os << z.im;
        os << "i";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

namespace {

// Parses a signed rational or finite decimal starting at pos; advances pos.
std::optional<Rational> parse_rational_at(const std::string& s, size_t& pos) {
    size_t start = pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    if (digits.empty()) {
        pos = start;
        return std::nullopt;
    }
    Rational value;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::string frac;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) frac += s[pos++];
        // Explicit base 10: the auto-detecting constructor would read a
        // leading zero ("035") as octal.
        mpz_class num(digits + frac, 10);
        mpz_class den(1);
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        value = Rational(num, den);
    } else if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::string dens;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) dens += s[pos++];
        if (dens.empty()) {
            pos = start;
            return std::nullopt;
        }
        mpz_class den(dens, 10);
        if (den == 0) {
            pos = start;
            return std::nullopt;
        }
        value = Rational(mpz_class(digits, 10), den);
    } else {
        value = Rational(mpz_class(digits, 10));
    }
    value.canonicalize();
    if (neg) value = -value;
    return value;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    size_t pos = 0;
    auto r = parse_rational_at(text, pos);
    if (!r || pos != text.size()) return std::nullopt;
    return r;
}

std::optional<GaussianRational> parse_gaussian_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    size_t pos = 0;
    // Pure-imaginary shorthand: "i", "-i", "+i".
    auto imaginary_unit = [&](size_t p) {
        return p < text.size() && text[p] == 'i' && p + 1 == text.size();
    };
    if (imaginary_unit(0)) return GaussianRational{0, 1};
    if ((text[0] == '+' || text[0] == '-') && imaginary_unit(1))
        return GaussianRational{0, text[0] == '-' ? -1 : 1};

    auto first = parse_rational_at(text, pos);
    if (!first) return std::nullopt;
    if (pos == text.size()) return GaussianRational{*first, 0};
    if (text[pos] == 'i' && pos + 1 == text.size()) return GaussianRational{0, *first};
    // Remainder must be a signed imaginary part: "+1/2i", "-3i", "+i", "-i".
    if (text[pos] != '+' && text[pos] != '-') return std::nullopt;
    if (imaginary_unit(pos + 1)) return GaussianRational{*first, text[pos] == '-' ? -1 : 1};
    auto second = parse_rational_at(text, pos);
    if (!second) return std::nullopt;
    if (pos + 1 != text.size() || text[pos] != 'i') return std::nullopt;
    return GaussianRational{*first, *second};
}

}  // namespace kohnspec
