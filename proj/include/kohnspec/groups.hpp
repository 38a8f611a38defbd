#pragma once

#include "kohnspec/dense.hpp"
#include "kohnspec/gaussian_rational.hpp"
#include "kohnspec/poly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace kohnspec {

// Element of SU(2) stored as the first column (xi1, xi2) of
// [[xi1, -conj(xi2)], [xi2, conj(xi1)]].  Exact entries are carried whenever
// available; double images always.  After group construction each element
// also carries its eigenphase theta as the reduced fraction theta / pi =
// phase_num / phase_den (elements of finite order have theta an exact
// rational multiple of pi, so characters at any degree lose no precision)
// and its order.
struct SU2Element {
    GaussianRational x1, x2;
    std::complex<double> x1d, x2d;
    bool exact = false;
    int phase_num = 0;
    int phase_den = 0;  // 0 until the phase is finalized
    int elem_order = 0;

    static SU2Element identity();
    static SU2Element from_exact(GaussianRational x1, GaussianRational x2);
    static SU2Element from_complex(std::complex<double> x1, std::complex<double> x2);

    SU2Element operator*(const SU2Element& o) const;
    SU2Element inverse() const;
    SU2Element conjugated_by(const SU2Element& tau) const;  // tau g tau^-1
    bool approx_equal(const SU2Element& o, double tol = 1e-9) const;
    bool is_identity(double tol = 1e-9) const;
    bool is_minus_identity(double tol = 1e-9) const;
    int order() const { return elem_order; }
};

// Parsed group description:  C:<n>, Dic:<n>, 2T, 2O, 2I, or a conjugate
// conj:<spec>:<xi1>,<xi2> with exact unit conjugator entries.
struct GroupSpec {
    enum class Kind { cyclic, dicyclic, tetrahedral, octahedral, icosahedral };
    Kind kind = Kind::cyclic;
    int n = 1;  // parameter for cyclic (order n) and dicyclic (order 4n)
    bool conjugated = false;
    GaussianRational tau1{1}, tau2{0};

    std::string format() const;
    static GroupSpec parse(const std::string& text);  // throws std::invalid_argument
    long order() const;
};

// Finite subgroup of SU(2) with construction-time validation: unit entries,
// identity present, inverses present, closure, a unique involution when the
// order is even, cyclicity when the order is odd, and snapped eigenphases.
class FiniteSubgroup {
  public:
    FiniteSubgroup(std::string label, std::vector<SU2Element> elements,
                   std::optional<GroupSpec> spec = std::nullopt,
                   std::optional<int> standard_cyclic = std::nullopt);

    const std::string& label() const { return label_; }
    const std::optional<GroupSpec>& spec() const { return spec_; }
    const std::vector<SU2Element>& elements() const { return elements_; }
    long order() const { return static_cast<long>(elements_.size()); }
    bool exact() const { return exact_; }
    // Set for groups built directly as <(zeta_d, 0)>, which act diagonally on
    // monomials; enables O(1) dimension counts and exact projection for any d.
    std::optional<int> standard_cyclic() const { return standard_cyclic_; }

  private:
    void validate();
    std::string label_;
    std::vector<SU2Element> elements_;
    std::optional<GroupSpec> spec_;
    std::optional<int> standard_cyclic_;
    bool exact_ = false;
};

FiniteSubgroup make_group(const GroupSpec& spec);
FiniteSubgroup make_group(const std::string& spec);

// Character of the degree-k harmonic representation at g:
// chi_k(g) = sin((k+1) theta) / sin(theta) evaluated through the exact
// rational phase, so the value stays accurate for k in the tens of thousands.
double character(const SU2Element& g, long k);

// dim H_{0,k}^G (= dim H_{p,q}^G for p + q = k).  Dispatch: direct counting
// for standard cyclic groups, character averaging with an integrality gate
// (tolerance 1e-6) otherwise.  Throws std::runtime_error when the average is
// not close to an integer.
long dim_invariant(const FiniteSubgroup& G, long k);

// Exact route: projector rank on the antiholomorphic monomial basis of
// H_{0,k} (monomial weights for diagonal cyclic groups, averaged exact
// pullback matrices otherwise).  Requires an exact group.
long dim_invariant_exact(const FiniteSubgroup& G, long k);

// Ground-truth count #{a in [0,k] : d | 2a - k} — O(1) modular form and the
// brute-force loop it is tested against.
long cyclic_dim_count(long d, long k);
long cyclic_dim_count_brute(long d, long k);
// Closed form for even d: 0 for odd k, 2 floor(k/d) + 1 for even k.
long cyclic_dim_closed_form_even(long d, long k);
// The closed form as printed in the source derivation, all parities; kept
// verbatim so the discrepancy detector can compare it against the count.
long cyclic_dim_printed_formula(long d, long k);

// G-average of the pullbacks: exact for diagonal cyclic and exact groups;
// float overload for the rest.
PolyQ project_invariant(const PolyQ& f, const FiniteSubgroup& G);
PolyD project_invariant(const PolyD& f, const FiniteSubgroup& G);

// Invariant dimensions of G and tau G tau^-1 side by side, k = 0..k_max,
// computed through the exact routes (and cross-checked against character
// averages).  Requires exact tau and an exact or standard-cyclic G.
struct DimsComparison {
    std::vector<long> dims_base, dims_conj;
    bool equal = false;
};
DimsComparison dims_conjugation_invariance(const FiniteSubgroup& G, const SU2Element& tau, int k_max);

// The cyclic subgroups generated by the even-order elements; verifies they
// cover G (every odd-order g lies in <(-1) g>).  Requires |G| even.
std::vector<FiniteSubgroup> even_cyclic_cover(const FiniteSubgroup& G);

// Molien series coefficients dim (Sym^k C^2)^G for the nonabelian kinds,
// computed from the invariant-degree data (p, q, m) as the power series of
// (1 + x^m) / ((1 - x^p)(1 - x^q)) — an independent oracle for dimension
// tests.  Throws for cyclic specs.
std::vector<long> molien_series_dims(const GroupSpec& spec, int k_max);

}  // namespace kohnspec
