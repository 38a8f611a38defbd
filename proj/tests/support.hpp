#pragma once

// Shared test helpers: quadrature and dense-eigensolver oracles, random data.

#include "kohnspec/dense.hpp"
#include "kohnspec/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

namespace testsupport {

using kohnspec::DenseD;
using kohnspec::DenseQ;
using kohnspec::GaussianRational;
using kohnspec::Monomial;
using kohnspec::Poly;
using kohnspec::PolyD;
using kohnspec::PolyQ;
using kohnspec::Rational;

inline std::complex<double> eval(const PolyD& f, std::complex<double> z1, std::complex<double> z2) {
    std::complex<double> sum = 0;
    for (const auto& [m, c] : f.terms()) {
        std::complex<double> v = c;
        for (int i = 0; i < m.a; ++i) v *= z1;
        for (int i = 0; i < m.b; ++i) v *= z2;
        for (int i = 0; i < m.c; ++i) v *= std::conj(z1);
        for (int i = 0; i < m.d; ++i) v *= std::conj(z2);
        sum += v;
    }
    return sum;
}

inline PolyD to_double(const PolyQ& f) {
    PolyD out;
    for (const auto& [m, c] : f.terms()) out.add_term(m, c.to_complex());
    return out;
}

// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on Legendre
// polynomials (plenty accurate for the small node counts used here).
inline void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = (1.0 + t) / 2.0;
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Independent numerical pairing on S^3: product quadrature in the torus
// angles (trapezoid, exact for trigonometric polynomials) and a Gauss rule in
// s = |z2|^2.  Exact up to rounding for polynomial integrands.
inline std::complex<double> quadrature_inner(const PolyD& f, const PolyD& g) {
    int deg = std::max(f.degree(), g.degree());
    int nphi = 2 * deg + 3;
    int ns = deg + 2;
    std::vector<double> sx, sw;
    gauss_legendre01(ns, sx, sw);
    std::complex<double> acc = 0;
    for (int is = 0; is < ns; ++is) {
        double s = sx[is];
        double r1 = std::sqrt(1.0 - s), r2 = std::sqrt(s);
        for (int i1 = 0; i1 < nphi; ++i1) {
            double phi1 = 2.0 * M_PI * i1 / nphi;
            std::complex<double> z1 = std::polar(r1, phi1);
            for (int i2 = 0; i2 < nphi; ++i2) {
                double phi2 = 2.0 * M_PI * i2 / nphi;
                std::complex<double> z2 = std::polar(r2, phi2);
                acc += sw[is] / (1.0 * nphi * nphi) * eval(f, z1, z2) * std::conj(eval(g, z1, z2));
            }
        }
    }
    return acc;
}

inline Eigen::MatrixXcd to_eigen(const DenseD& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m.at(i, j);
    return out;
}

// Dense brute-force eigenvalue oracle; returns eigenvalues sorted by
// (real, imag).
inline std::vector<std::complex<double>> dense_eigenvalues(const DenseD& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
    std::vector<std::complex<double>> out(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) out[i] = solver.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

// Dense symmetric oracle for real symmetric matrices, ascending.
inline std::vector<double> dense_sym_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

inline PolyQ random_poly(std::mt19937_64& rng, int max_exp = 2, int terms = 4) {
    std::uniform_int_distribution<int> exp_dist(0, max_exp), coef_dist(-4, 4);
    PolyQ out;
    for (int i = 0; i < terms; ++i) {
        Monomial m{exp_dist(rng), exp_dist(rng), exp_dist(rng), exp_dist(rng)};
        out.add_term(m, GaussianRational{coef_dist(rng), coef_dist(rng)});
    }
    return out;
}

// Random element of H_{0,n}: rational combination of the antiholomorphic
// monomial basis.
inline PolyQ random_antiholomorphic(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> coef_dist(-3, 3);
    PolyQ out;
    for (int a = 0; a <= n; ++a) out.add_term({0, 0, a, n - a}, GaussianRational{coef_dist(rng), coef_dist(rng)});
    if (out.is_zero()) out.add_term({0, 0, n, 0}, GaussianRational{1});
    return out;
}

}  // namespace testsupport
