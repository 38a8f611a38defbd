#pragma once

#include "kohnspec/spectrum.hpp"

#include <optional>
#include <vector>

namespace kohnspec {

enum class Parity { even, odd };

// Multiplicity of lambda as recorded by a standard table, or nullopt when the
// window does not cover lambda: a full table covers the nonzero eigenvalues
// lambda <= 2K (absent entry = multiplicity zero), a selected table covers
// exactly its selected keys.
std::optional<long> table_multiplicity(const SpectrumTable& S, long lambda);

// Odd primes alpha usable by the given stage: the probe and the odd-case
// estimator need 2 alpha covered, the even-case estimator also 4 alpha.
std::vector<long> usable_primes(const SpectrumTable& S, bool need_4alpha);

// |G| is odd iff 2 alpha is in the spectrum.  The probe is decisive once
// alpha >= |G| (an odd-order quotient can miss low odd degrees), so callers
// probe at the largest usable prime; correctness of the answer therefore
// carries the same window caveat as the estimators.
Parity parity_probe(const SpectrumTable& S, long alpha);

struct PrimeEstimate {
    long alpha = 0;
    long multiplicity = 0;  // mult(2 alpha) in the odd case, mult(4 alpha) in the even case
    double ratio = 0.0;     // pre-rounding order estimate
    long rounded = 0;       // rounded to the parity-correct nearest integer
};

struct HearingReport {
    Parity parity = Parity::odd;
    long parity_alpha = 0;             // prime used by the probe
    Rational constant{2};              // numerator constant of the estimator
    std::vector<PrimeEstimate> estimates;
    long final_order = 0;              // estimate at the largest usable prime
    int stabilization = 0;             // trailing primes agreeing with final_order
    bool stabilized = false;           // stabilization >= 3
};

// The even-case constant c in mult(4 alpha) ~ (c/|G|) alpha, computed -- not
// transcribed -- from exact C2 and C4 multiplicities: on a fixed residue
// class mod 4 the exact count is linear in alpha, so the slope between two
// large primes gives c/|G| exactly; both groups must yield the same integer,
// and single-prime ratios must approach it.  Throws if the calibration does
// not converge.  (The validated value is 12.)
Rational calibrate_even_constant();

// d(alpha) = 2 alpha / mult(2 alpha), rounded to the nearest odd integer;
// accepted when the last three usable primes agree.
HearingReport estimate_order_odd(const SpectrumTable& S);

// |G|(alpha) = c alpha / mult(4 alpha), rounded to the nearest even integer.
HearingReport estimate_order_even(const SpectrumTable& S);

// Parity probe at the largest usable prime, then the matching estimator.
HearingReport hear(const SpectrumTable& S);

}  // namespace kohnspec
