#pragma once

#include "kohnspec/gaussian_rational.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kohnspec {

// Monomial z1^a z2^b conj(z1)^c conj(z2)^d restricted to S^3.  Bidegree is
// (p, q) = (a+b, c+d): p holomorphic factors, q antiholomorphic ones.
struct Monomial {
    int a = 0;  // exponent of z1
    int b = 0;  // exponent of z2
    int c = 0;  // exponent of conj(z1)
    int d = 0;  // exponent of conj(z2)

    int p() const { return a + b; }
    int q() const { return c + d; }
    int degree() const { return a + b + c + d; }

    friend bool operator==(const Monomial& x, const Monomial& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator<(const Monomial& x, const Monomial& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    }
};

std::string to_string(const Monomial& m);

template <class K>
struct scalar_ops;

template <>
struct scalar_ops<GaussianRational> {
    static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
    static GaussianRational from_int(long n) { return GaussianRational(n); }
    static Rational norm2(const GaussianRational& z) { return z.norm2(); }
};

template <>
struct scalar_ops<std::complex<double>> {
    static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
    static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{0.0, 0.0}; }
    static std::complex<double> from_int(long n) { return {static_cast<double>(n), 0.0}; }
    static double norm2(const std::complex<double>& z) { return std::norm(z); }
};

// Polynomial in z1, z2, conj(z1), conj(z2) with coefficients in K.  K is either
// GaussianRational (exact mode) or std::complex<double> (float fallback, used
// only when group elements have irrational entries).
template <class K>
class Poly {
  public:
    using term_map = std::map<Monomial, K>;

    Poly() = default;
    static Poly monomial(const Monomial& m, K coeff = scalar_ops<K>::from_int(1)) {
        Poly p;
        p.add_term(m, coeff);
        return p;
    }
    static Poly constant(K coeff) { return monomial(Monomial{}, coeff); }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K{} : it->second;
    }

    void add_term(const Monomial& m, const K& coeff) {
        if (scalar_ops<K>::is_zero(coeff)) return;
        auto [it, inserted] = terms_.emplace(m, coeff);
        if (!inserted) {
            it->second += coeff;
            if (scalar_ops<K>::is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, K{} - c);
        return *this;
    }
    Poly& operator*=(const K& s) {
        if (scalar_ops<K>::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly x, const Poly& y) { return x += y; }
    friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
    friend Poly operator*(Poly x, const K& s) { return x *= s; }
    friend Poly operator*(const K& s, Poly x) { return x *= s; }
    friend Poly operator-(Poly x) {
        for (auto& [m, c] : x.terms_) c = K{} - c;
        return x;
    }

    friend Poly operator*(const Poly& x, const Poly& y) {
        Poly out;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_)
                out.add_term({mx.a + my.a, mx.b + my.b, mx.c + my.c, mx.d + my.d}, cx * cy);
        return out;
    }

    friend bool operator==(const Poly& x, const Poly& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

    // True if every term has bidegree (p, q).
    bool is_bihomogeneous(int p, int q) const {
        for (const auto& [m, c] : terms_)
            if (m.p() != p || m.q() != q) return false;
        return true;
    }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

  private:
    term_map terms_;
};

using PolyQ = Poly<GaussianRational>;
using PolyD = Poly<std::complex<double>>;

template <class K>
std::string to_string(const Poly<K>& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")" << to_string(m);
    }
    return os.str();
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Poly<K>& f) {
    return os << to_string(f);
}

// Tangential CR field L = conj(z1) d/dz2 - conj(z2) d/dz1 applied termwise.
template <class K>
Poly<K> apply_L(const Poly<K>& f) {
    Poly<K> out;
    for (const auto& [m, c] : f.terms()) {
        if (m.b > 0) out.add_term({m.a, m.b - 1, m.c + 1, m.d}, c * scalar_ops<K>::from_int(m.b));
        if (m.a > 0) out.add_term({m.a - 1, m.b, m.c, m.d + 1}, K{} - c * scalar_ops<K>::from_int(m.a));
    }
    return out;
}

// Conjugate field Lbar = z1 d/dconj(z2) - z2 d/dconj(z1).
template <class K>
Poly<K> apply_Lbar(const Poly<K>& f) {
    Poly<K> out;
    for (const auto& [m, c] : f.terms()) {
        if (m.d > 0) out.add_term({m.a + 1, m.b, m.c, m.d - 1}, c * scalar_ops<K>::from_int(m.d));
        if (m.c > 0) out.add_term({m.a, m.b + 1, m.c - 1, m.d}, K{} - c * scalar_ops<K>::from_int(m.c));
    }
    return out;
}

// Full conjugation: swaps holomorphic and antiholomorphic variables and
// conjugates coefficients.
template <class K>
Poly<K> conjugate(const Poly<K>& f) {
    Poly<K> out;
    for (const auto& [m, c] : f.terms()) out.add_term({m.c, m.d, m.a, m.b}, scalar_ops<K>::conj(c));
    return out;
}

// Hermitian L^2(S^3) pairing with the normalized round measure,
// conjugate-linear in the second argument.  Exact in rational mode via the
// closed-form monomial moments.
GaussianRational inner_product(const PolyQ& f, const PolyQ& g);
std::complex<double> inner_product(const PolyD& f, const PolyD& g);

// Squared L^2 norm (real part of the self-pairing; the self-pairing is real).
Rational norm2(const PolyQ& f);

}  // namespace kohnspec
