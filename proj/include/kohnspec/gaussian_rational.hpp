#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace kohnspec {

using Rational = mpq_class;

// Complex number with exact rational real and imaginary parts.  This is the
// scalar type for all exact computations: polynomial coefficients, matrix
// entries, perturbation parameters and group elements with rational entries.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }
    // |z|^2, an exact nonnegative rational.
    Rational norm2() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return cmp(a.re, b.re) == 0 && cmp(a.im, b.im) == 0;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

// Compact text form, e.g. "0", "1/2", "-3+4/5i", "i", "-2/3i".  Inverse of
// parse_gaussian_rational below.
std::string to_string(const GaussianRational& z);

// Parses a rational scalar: "p", "p/q", or a finite decimal like "-0.35"
// (converted exactly, 35/100 -> 7/20).  Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

// Parses a complex scalar with rational components: "1/2", "-0.3+2i",
// "1/2-1/3i", "i", "-i", "0,1" style is NOT accepted here (see parse pairs in
// the CLI layer).  Returns nullopt on malformed input.
std::optional<GaussianRational> parse_gaussian_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace kohnspec
