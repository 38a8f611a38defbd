#include "kohnspec/hearing.hpp"

#include "kohnspec/groups.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kohnspec {

namespace {

long round_to_parity(double x, bool even) {
    long r;
    if (even) {
        r = 2 * std::lround(x / 2.0);
        if (r < 2) r = 2;
    } else {
        r = 2 * std::lround((x - 1.0) / 2.0) + 1;
        if (r < 1) r = 1;
    }
    return r;
}

void finalize(HearingReport& r) {
    if (r.estimates.empty()) {
        r.final_order = 0;
        r.stabilization = 0;
        r.stabilized = false;
        return;
    }
    r.final_order = r.estimates.back().rounded;
    int agree = 0;
    for (auto it = r.estimates.rbegin(); it != r.estimates.rend(); ++it) {
        if (it->rounded != r.final_order) break;
        ++agree;
    }
    r.stabilization = agree;
    r.stabilized = agree >= 3;
}

}  // namespace

std::optional<long> table_multiplicity(const SpectrumTable& S, long lambda) {
    if (S.structure != Structure::standard)
        throw std::invalid_argument("table_multiplicity: standard-structure table required");
    if (lambda < 0) return std::nullopt;
    if (lambda % 2 != 0) return 0;  // odd eigenvalues never occur
    bool covered;
    if (S.selected)
        covered = std::binary_search(S.selected->begin(), S.selected->end(), lambda) &&
                  lambda <= 2L * S.max_degree;
    else
        covered = lambda > 0 && lambda <= 2L * S.max_degree;
    if (!covered) return std::nullopt;
    const SpectrumEntry* e = S.find(lambda);
    if (!e) return 0;
    if (!e->complete) return std::nullopt;
    return e->multiplicity;
}

std::vector<long> usable_primes(const SpectrumTable& S, bool need_4alpha) {
    std::vector<long> out;
    for (long alpha : primes_up_to(S.max_degree)) {
        if (alpha < 3) continue;
        if (!table_multiplicity(S, 2 * alpha)) continue;
        if (need_4alpha && !table_multiplicity(S, 4 * alpha)) continue;
        out.push_back(alpha);
    }
    return out;
}

Parity parity_probe(const SpectrumTable& S, long alpha) {
    auto m = table_multiplicity(S, 2 * alpha);
    if (!m)
        throw std::invalid_argument("parity_probe: window does not cover the eigenvalue 2*alpha");
    return *m > 0 ? Parity::odd : Parity::even;
}

Rational calibrate_even_constant() {
    // Exact slope of alpha -> mult(4 alpha) on a fixed residue class mod 4:
    // the count is piecewise linear there, so two primes per class determine
    // c/|G| with no asymptotics involved.
    auto primes = primes_up_to(2000);
    std::optional<Rational> c;
    for (const char* spec : {"C:2", "C:4"}) {
        FiniteSubgroup G = make_group(spec);
        auto mult4 = [&](long alpha) {
            return standard_multiplicity(G, 4 * alpha, static_cast<int>(2 * alpha)).multiplicity;
        };
        for (long residue : {1L, 3L}) {
            std::vector<long> cls;
            for (long p : primes)
                if (p % 4 == residue) cls.push_back(p);
            if (cls.size() < 2)
                throw std::runtime_error("calibrate_even_constant: not enough primes");
            long a1 = cls[cls.size() - 2], a2 = cls.back();
            Rational slope(mult4(a2) - mult4(a1), a2 - a1);
            slope.canonicalize();
            Rational cand = Rational(G.order()) * slope;
            if (cand.get_den() != 1)
                throw std::runtime_error("calibrate_even_constant: non-integer slope");
            if (c && cmp(*c, cand) != 0)
                throw std::runtime_error("calibrate_even_constant: groups disagree");
            c = cand;
            // single-prime ratios must sit within a bounded offset of the
            // linear law |G| mult(4a) = c a + O(1)
            Rational err = Rational(G.order() * mult4(a2)) - cand * a2;
            if (cmp(abs(err.get_num()), 40 * err.get_den()) > 0)
                throw std::runtime_error("calibrate_even_constant: offset too large");
        }
    }
    // Cross-module consistency: the even equidistribution constant measured
    // from the exact C2 dimensions (dim H_{0,2k}^G = 2k + 1) is
    // |G| dim/(2k+1) = 2, and c must equal 6 of them (three bidegree source
    // pairs, each contributing one unit per source).
    FiniteSubgroup c2 = make_group("C:2");
    long k = 5000;
    Rational equi(c2.order() * dim_invariant(c2, 2 * k), 2 * k + 1);
    equi.canonicalize();
    if (cmp(*c, 6 * equi) != 0)
        throw std::runtime_error("calibrate_even_constant: equidistribution mismatch");
    return *c;
}

HearingReport estimate_order_odd(const SpectrumTable& S) {
    HearingReport r;
    r.parity = Parity::odd;
    r.constant = Rational(2);
    auto primes = usable_primes(S, false);
    if (primes.empty())
        throw std::invalid_argument("estimate_order_odd: window covers no usable primes");
    r.parity_alpha = primes.back();
    for (long alpha : primes) {
        long m = *table_multiplicity(S, 2 * alpha);
        if (m == 0) continue;  // prime below the group order; uninformative
        PrimeEstimate e;
        e.alpha = alpha;
        e.multiplicity = m;
        e.ratio = 2.0 * static_cast<double>(alpha) / static_cast<double>(m);
        e.rounded = round_to_parity(e.ratio, false);
        r.estimates.push_back(e);
    }
    finalize(r);
    return r;
}

HearingReport estimate_order_even(const SpectrumTable& S) {
    HearingReport r;
    r.parity = Parity::even;
    r.constant = calibrate_even_constant();
    double c = r.constant.get_d();
    auto primes = usable_primes(S, true);
    if (primes.empty())
        throw std::invalid_argument("estimate_order_even: window covers no usable primes");
    r.parity_alpha = primes.back();
    for (long alpha : primes) {
        long m = *table_multiplicity(S, 4 * alpha);
        if (m == 0) continue;
        PrimeEstimate e;
        e.alpha = alpha;
        e.multiplicity = m;
        e.ratio = c * static_cast<double>(alpha) / static_cast<double>(m);
        e.rounded = round_to_parity(e.ratio, true);
        r.estimates.push_back(e);
    }
    finalize(r);
    return r;
}

HearingReport hear(const SpectrumTable& S) {
    auto probe_primes = usable_primes(S, false);
    if (probe_primes.empty())
        throw std::invalid_argument("hear: window covers no usable primes");
    long probe_alpha = probe_primes.back();
    Parity parity = parity_probe(S, probe_alpha);
    HearingReport r = parity == Parity::odd ? estimate_order_odd(S) : estimate_order_even(S);
    r.parity = parity;
    r.parity_alpha = probe_alpha;
    return r;
}

}  // namespace kohnspec
