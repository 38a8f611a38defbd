#pragma once

#include <string>
#include <vector>

namespace kohnspec {

// Self-verification registry: each named property re-runs one module
// invariant (formula-vs-oracle equalities, certified bounds, round trips)
// at a scale chosen to finish in seconds; `k_max` rescales the heaviest
// loop of each property when positive.
struct VerifyOptions {
    std::vector<std::string> only;  // empty = run everything
    int k_max = 0;                  // 0 = per-property default scale
    int jobs = 0;                   // parallelism for the spectrum passes
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    // Reports findings (the documented formula discrepancies) rather than
    // asserting their absence; contributes pass/fail like any other check.
    bool informational = false;
    std::string detail;  // one line of evidence
};

struct VerifyReport {
    std::vector<PropertyResult> results;
    bool all_passed() const;
};

// Names in registry order, with one-line descriptions.
struct PropertyInfo {
    std::string name;
    std::string description;
};
std::vector<PropertyInfo> verify_properties();

// Runs the selected properties; throws std::invalid_argument for an unknown
// name in opts.only.  Never throws on a failing property — failures are
// reported in the result list.
VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace kohnspec
