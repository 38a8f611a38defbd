#pragma once

#include "kohnspec/tridiag.hpp"

#include <cstddef>
#include <vector>

namespace kohnspec {

// Exact eigenvalue counts for a symmetric tridiagonal matrix at a rational
// shift, via the sign sequence of the leading principal minors evaluated in
// integer arithmetic (denominators cleared).  Zero minors are resolved by the
// one-sided limit conventions, so both strict and non-strict counts are exact
// for any rational x.
int exact_count_less(const SymTriDiag& m, const Rational& x);
int exact_count_leq(const SymTriDiag& m, const Rational& x);

// All eigenvalues in ascending order, each wrapped in a certified enclosure,
// by double-precision Sturm bisection inside the Gershgorin hull.  Endpoints
// are dyadic doubles converted exactly to rationals.  Enclosures are reliable;
// widths bottom out near machine precision, so eigenvalues smaller than
// ~1e-12 * scale are enclosed but not separated from zero — use the exact
// refinement below when that matters.
std::vector<RatInterval> sturm_eigenvalues(const SymTriDiag& m, double rel_tol = 1e-12);

// Shrinks an enclosure of the idx-th smallest eigenvalue (0-based) to
// relative width rel_tol by exact-count bisection on dyadic midpoints.
// Requires exact_count_leq(lo) <= idx < exact_count_leq(hi) on entry.
RatInterval exact_refine_eigenvalue(const SymTriDiag& m, size_t idx, RatInterval bracket,
                                    const Rational& rel_tol, int max_iter = 4000);

// Certified enclosure of the smallest positive eigenvalue of a positive
// semidefinite matrix with exactly kernel_mult zero eigenvalues; verifies the
// PSD/kernel structure by exact counts and throws if it does not hold.
RatInterval exact_min_positive(const SymTriDiag& m, size_t kernel_mult, const Rational& rel_tol);

// Rational upper bound for all eigenvalues (Gershgorin, radicals rounded up).
Rational eigenvalue_upper_bound(const SymTriDiag& m);

}  // namespace kohnspec
