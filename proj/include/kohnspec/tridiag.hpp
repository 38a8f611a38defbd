#pragma once

#include "kohnspec/dense.hpp"
#include "kohnspec/gaussian_rational.hpp"
#include "kohnspec/harmonics.hpp"

#include <utility>
#include <vector>

namespace kohnspec {

// Eigenvalue normalization conventions.
//   raw      — eigenvalues of the metric-normalized operator, h(t) times unscaled
//   unscaled — the operator -(L Lbar + |t|^2 Lbar L + t L^2 + tbar Lbar^2)
//   halved   — unscaled divided by 2 (the convention of the Gershgorin bound,
//              whose statement is "rows stay >= 1")
enum class Scaling { raw, unscaled, halved };

// Exact positive ratio converting an eigenvalue between conventions:
// value_to = value_from * scaling_ratio(from, to, t).
Rational scaling_ratio(Scaling from, Scaling to, const PerturbationParam& t);

// Complex tridiagonal matrix with exact entries (the chain matrices of the
// deformed Laplacian).
struct TriDiag {
    std::vector<GaussianRational> diag;
    std::vector<GaussianRational> super;  // entries (j, j+1)
    std::vector<GaussianRational> sub;    // entries (j+1, j)
    Scaling scaling = Scaling::unscaled;

    size_t dim() const { return diag.size(); }
    DenseQ to_dense() const;
};

// Real symmetric tridiagonal matrix carrying exact data: the diagonal as
// rationals and the *squares* of the off-diagonal entries (the entries
// themselves are |t| sqrt(integer), irrational in general, but every
// eigenvalue count only needs the squares).
struct SymTriDiag {
    std::vector<Rational> diag;
    std::vector<Rational> off2;  // squared off-diagonal entries, size dim-1
    Scaling scaling = Scaling::unscaled;

    size_t dim() const { return diag.size(); }
    std::vector<double> diag_d() const;
    std::vector<double> off_d() const;  // sqrt of off2, for display/float work
};

// Closed-form matrix of the unscaled deformed Laplacian on the even stages of
// the degree-2k chain (dimension k+1):
//   diag_j  = 2((2k-2j+2)(2j-1) + |t|^2 (2j-2)(2k-2j+3)),   j = 1..k+1
//   super_j = -4t (2j)(2j-1)(2k-2j+1)(2k-2j+2),             j = 1..k
//   sub_j   = -conj(t)
TriDiag build_V_matrix(int k, const PerturbationParam& t, Scaling scaling = Scaling::unscaled);

// Closed-form matrix on the odd stages (dimension k):
//   diag_j  = 2((2k-2j+1)(2j) + |t|^2 (2j-1)(2k-2j+2)),     j = 1..k
//   super_j = -4t (2j+1)(2j)(2k-2j)(2k-2j+1),               j = 1..k-1
//   sub_j   = -conj(t)
TriDiag build_W_matrix(int k, const PerturbationParam& t, Scaling scaling = Scaling::unscaled);

// Matrix of the unscaled deformed Laplacian on the even (V) or odd (W) stages
// sigma of the degree-n chain, valid for both parities of n.  With sigma the
// stage of the column and sigma' of the row:
//   diag (sigma' = sigma):   2((n-sigma)(sigma+1) + |t|^2 sigma(n-sigma+1))
//   super (sigma' = sigma-2): -4t sigma(sigma-1)(n-sigma+1)(n-sigma+2)
//   sub  (sigma' = sigma+2): -conj(t)
// At even n = 2k this reproduces build_V_matrix / build_W_matrix exactly; odd
// degrees extend the same recurrence and are cross-checked against
// oracle_matrix.  V stages are {0,2,...}, W stages {1,3,...}; part = full is
// rejected (the full-chain matrix is not tridiagonal in stage order).
TriDiag build_chain_matrix(int n, ChainPart part, const PerturbationParam& t,
                           Scaling scaling = Scaling::unscaled);

// Diagonal-similarity symmetrization: replaces the off-diagonal pair
// (super_j, sub_j) by the real entry sqrt(super_j * sub_j).  Requires each
// product super_j * sub_j to be real and nonnegative (true for every chain
// matrix: the product is 4|t|^2 times a nonnegative integer); throws
// otherwise.  Eigenvalues are preserved.
SymTriDiag symmetrize(const TriDiag& m);

// Multiplies all entries by an exact positive factor, retagging the scaling
// convention.
TriDiag rescale(TriDiag m, const Rational& factor, Scaling new_scaling);
SymTriDiag rescale(SymTriDiag m, const Rational& factor, Scaling new_scaling);

// Exact characteristic polynomial det(M - lambda I) by the three-term leading
// minor recurrence; coefficients ascending in lambda (size dim + 1).
std::vector<GaussianRational> char_poly(const TriDiag& m);

// Number of zero eigenvalues, read off the exact characteristic polynomial as
// the order of vanishing at 0.  (Chain matrices are diagonalizable — they are
// diagonal or similar to real symmetric — so algebraic = geometric.)
size_t kernel_multiplicity(const TriDiag& m);

// Closed interval of rationals.
struct RatInterval {
    Rational lo, hi;
    double mid_d() const { return Rational((lo + hi) / 2).get_d(); }
};

// Row intervals [m_j - r_j, m_j + r_j] of a symmetric tridiagonal matrix
// (double precision, for display; r_j sums the adjacent off-diagonals).
std::vector<std::pair<double, double>> gershgorin_intervals(const SymTriDiag& m);

// Exact check that every Gershgorin row lower endpoint is >= c, i.e.
// diag_j - off_{j-1} - off_j >= c, decided without evaluating the square
// roots (compare sqrt(A) + sqrt(B) <= C through squarings).
bool gershgorin_rows_at_least(const SymTriDiag& m, const Rational& c);

// Certified minimum nonzero eigenvalue over the union of the V and W spectra
// at even degree 2k, in the requested convention.  Exact kernel detection via
// char_poly, exact Sturm refinement of the smallest positive eigenvalue.
RatInterval min_nonzero_eigenvalue(int k, const PerturbationParam& t, Scaling scaling = Scaling::raw);

}  // namespace kohnspec
