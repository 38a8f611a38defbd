#pragma once

#include "kohnspec/dense.hpp"
#include "kohnspec/gaussian_rational.hpp"
#include "kohnspec/poly.hpp"

#include <optional>
#include <vector>

namespace kohnspec {

// Perturbation parameter t of the deformed structure, |t| < 1.  Every
// supported input (rational pairs, finite decimals, machine doubles — which
// are dyadic rationals) converts exactly, so the value is always held as an
// exact Gaussian rational.
class PerturbationParam {
  public:
    PerturbationParam() = default;  // t = 0, the standard structure
    explicit PerturbationParam(GaussianRational value);
    static PerturbationParam from_complex(std::complex<double> t);

    const GaussianRational& value() const { return value_; }
    const Rational& norm2() const { return norm2_; }
    bool is_zero() const { return value_.is_zero(); }

    // Metric normalization h(t) = (1 + |t|^2) / (1 - |t|^2)^2, an exact
    // positive rational.  Raw-convention eigenvalues are h(t) times the
    // unscaled ones.
    Rational h_factor() const;

  private:
    GaussianRational value_;
    Rational norm2_{0};
};

// Unscaled deformed Laplacian
//   box_t f = -(L Lbar + |t|^2 Lbar L + t L^2 + tbar Lbar^2) f,
// the operator whose chain matrices V and W are built in closed form.  The
// raw-convention operator is h(t) times this one.
PolyQ apply_box_t(const PolyQ& f, const PerturbationParam& t, bool scaled = false);
PolyD apply_box_t(const PolyD& f, std::complex<double> t, bool scaled = false);

// Pullback f(g . z) by the S^3 = SU(2) left translation associated with the
// unit pair (xi1, xi2), |xi1|^2 + |xi2|^2 = 1:
//   (xi1, xi2) . (z1, z2) = (xi1 z1 - conj(xi2) z2, xi2 z1 + conj(xi1) z2).
// Throws if the pair is not a unit (exact test in rational mode).
PolyQ pullback(const PolyQ& f, const GaussianRational& xi1, const GaussianRational& xi2);
PolyD pullback(const PolyD& f, std::complex<double> xi1, std::complex<double> xi2);

// Iterated-Lbar chain seeded at conj(z1)^n: v_sigma = Lbar^sigma conj(z1)^n,
// sigma = 0..n.  v_sigma is the monomial (-1)^sigma n!/(n-sigma)! z2^sigma
// conj(z1)^(n-sigma), of bidegree (sigma, n - sigma).
std::vector<PolyQ> chain_basis(int n);

// Chain grown from an arbitrary seed in H_{0,n} by iterating Lbar until it
// dies; returns the n+1 nonzero stages.
std::vector<PolyQ> chain_from(const PolyQ& seed);

// Which part of a chain to keep when building a matrix: even stages (V-type),
// odd stages (W-type), or all of them.
enum class ChainPart { full, V, W };

// Matrix of the unscaled box_t on the selected stages of a chain, computed
// honestly: apply the operator, expand in the chain basis through the exact
// Gram pairing, and verify the expansion reproduces the image exactly.
// Entry (i, j) is the coefficient of stage i in box_t(stage j).
DenseQ oracle_matrix(int n, const PerturbationParam& t, ChainPart part);
DenseQ oracle_matrix_from(const std::vector<PolyQ>& chain, const PerturbationParam& t, ChainPart part);

}  // namespace kohnspec
