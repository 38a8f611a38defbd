#include "kohnspec/spectrum.hpp"

#include "kohnspec/harmonics.hpp"

#include "doctest.h"

#include <algorithm>
#include <map>

using namespace kohnspec;

namespace {

PerturbationParam t_rat(long pn, long pd, long qn = 0, long qd = 1) {
    return PerturbationParam{GaussianRational{Rational(pn, pd), Rational(qn, qd)}};
}

long table_mult(const SpectrumTable& S, long lambda) {
    const SpectrumEntry* e = S.find(lambda);
    return e ? e->multiplicity : 0;
}

}  // namespace

TEST_CASE("general chain matrices agree with the oracle at both parities") {
    std::vector<PerturbationParam> ts = {PerturbationParam{}, t_rat(1, 2), t_rat(3, 10),
                                         t_rat(0, 1, 1, 3), t_rat(-2, 5, 1, 7)};
    for (int n = 0; n <= 13; ++n) {
        for (const auto& t : ts) {
            for (ChainPart part : {ChainPart::V, ChainPart::W}) {
                TriDiag built = build_chain_matrix(n, part, t);
                DenseQ oracle = oracle_matrix(n, t, part);
                REQUIRE(built.dim() == oracle.rows());
                CHECK(built.to_dense() == oracle);
            }
        }
    }
}

TEST_CASE("general chain matrices reproduce the closed even-degree forms") {
    for (int k = 0; k <= 6; ++k) {
        for (const auto& t : {PerturbationParam{}, t_rat(1, 2), t_rat(2, 7, -1, 3)}) {
            CHECK(build_chain_matrix(2 * k, ChainPart::V, t).to_dense() ==
                  build_V_matrix(k, t).to_dense());
            CHECK(build_chain_matrix(2 * k, ChainPart::W, t).to_dense() ==
                  build_W_matrix(k, t).to_dense());
        }
    }
}

TEST_CASE("chain matrix stage dimensions") {
    PerturbationParam t = t_rat(1, 3);
    CHECK(build_chain_matrix(0, ChainPart::V, t).dim() == 1);
    CHECK(build_chain_matrix(0, ChainPart::W, t).dim() == 0);
    CHECK(build_chain_matrix(7, ChainPart::V, t).dim() == 4);
    CHECK(build_chain_matrix(7, ChainPart::W, t).dim() == 4);
    CHECK(build_chain_matrix(8, ChainPart::V, t).dim() == 5);
    CHECK(build_chain_matrix(8, ChainPart::W, t).dim() == 4);
    CHECK_THROWS_AS(build_chain_matrix(4, ChainPart::full, t), std::invalid_argument);
}

TEST_CASE("standard spectrum of the sphere matches the brute-force chain oracle") {
    // Diagonalize the unperturbed operator on all of H_n, n <= 4, through the
    // oracle matrices (diagonal at t = 0), with one copy per chain seed.
    FiniteSubgroup triv = make_group("C:1");
    int K = 4;
    SpectrumTable S = standard_spectrum(triv, K);
    std::map<long, long> brute;
    PerturbationParam t0;
    for (int n = 0; n <= K; ++n) {
        DenseQ full = oracle_matrix(n, t0, ChainPart::full);
        for (size_t i = 0; i < full.rows(); ++i) {
            const GaussianRational& v = full.at(i, i);
            REQUIRE(v.is_real());
            REQUIRE(v.re.get_den() == 1);
            brute[v.re.get_num().get_si()] += n + 1;  // n + 1 chains per degree
        }
    }
    REQUIRE(S.entries.size() == brute.size());
    for (const auto& e : S.entries) {
        REQUIRE(cmp(e.eigenvalue.lo, e.eigenvalue.hi) == 0);
        long lambda = e.eigenvalue.lo.get_num().get_si();
        CHECK(e.multiplicity == brute.at(lambda));
    }
    // Window of K = 2, spot values: the weighted counts, not the naive number
    // of contributing bidegrees.
    SpectrumTable S2 = standard_spectrum(triv, 2);
    CHECK(table_mult(S2, 0) == 6);
    CHECK(table_mult(S2, 2) == 2);
    CHECK(table_mult(S2, 4) == 6);
    CHECK(S2.entries.size() == 3);
    CHECK_FALSE(S2.find(0)->complete);
    CHECK(S2.find(2)->complete);
    CHECK(S2.find(4)->complete);
}

TEST_CASE("standard multiplicities: prime eigenvalue identities") {
    for (const char* spec : {"C:1", "C:3", "C:5", "C:7", "Dic:2", "2T"}) {
        FiniteSubgroup G = make_group(spec);
        for (long alpha : {3L, 5L, 7L, 11L}) {
            auto b2 = standard_multiplicity(G, 2 * alpha, static_cast<int>(alpha));
            CHECK(b2.multiplicity == 2 * dim_invariant(G, alpha));
            CHECK(b2.complete);
            auto b4 = standard_multiplicity(G, 4 * alpha, static_cast<int>(2 * alpha));
            CHECK(b4.multiplicity == 2 * (dim_invariant(G, 2 * alpha) + dim_invariant(G, alpha + 1)));
            CHECK(b4.complete);
        }
    }
    FiniteSubgroup c2 = make_group("C:2");
    for (long alpha : {3L, 5L, 7L, 11L, 13L})
        CHECK(standard_multiplicity(c2, 2 * alpha, 40).multiplicity == 0);
    FiniteSubgroup c3 = make_group("C:3");
    CHECK(standard_multiplicity(c3, 10, 5).multiplicity == 4);  // 2 dim H_{0,5}^G = 2*2
    FiniteSubgroup triv = make_group("C:1");
    for (long alpha : {3L, 5L, 13L})
        CHECK(standard_multiplicity(triv, 2 * alpha, static_cast<int>(alpha)).multiplicity == 2 * (alpha + 1));
}

TEST_CASE("standard multiplicity at the large documented prime") {
    // mult(2 * 1009) for C3: the direct count gives dim H_{0,1009} = 336
    // (brute loop agrees), so the multiplicity is 672 and the order estimate
    // still rounds to 3.
    FiniteSubgroup c3 = make_group("C:3");
    CHECK(cyclic_dim_count(3, 1009) == 336);
    CHECK(cyclic_dim_count_brute(3, 1009) == 336);
    auto b = standard_multiplicity(c3, 2018, 1009);
    CHECK(b.multiplicity == 672);
    CHECK(b.complete);
    double ratio = 2018.0 / static_cast<double>(b.multiplicity);
    CHECK(std::lround((ratio - 1.0) / 2.0) * 2 + 1 == 3);
}

TEST_CASE("standard multiplicity breakdown lists the divisor bidegrees") {
    FiniteSubgroup triv = make_group("C:1");
    auto b = standard_multiplicity(triv, 4 * 5, 10);  // m = 10 = q(p+1)
    REQUIRE(b.sources.size() == 4);
    std::vector<std::pair<int, int>> expect = {{9, 1}, {4, 2}, {1, 5}, {0, 10}};
    std::vector<std::pair<int, int>> got;
    for (const auto& s : b.sources) {
        REQUIRE(s.bidegree.has_value());
        got.push_back(*s.bidegree);
        CHECK(s.degree == s.bidegree->first + s.bidegree->second);
    }
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
}

TEST_CASE("window consistency: enlarging K fixes nonzero multiplicities") {
    for (const char* spec : {"C:1", "C:2", "C:3", "Dic:2", "2T"}) {
        FiniteSubgroup G = make_group(spec);
        SpectrumTable small = standard_spectrum(G, 10);
        SpectrumTable large = standard_spectrum(G, 16);
        for (const auto& e : small.entries) {
            long lambda = e.eigenvalue.lo.get_num().get_si();
            if (lambda == 0 || lambda > 20) continue;
            CHECK(e.complete);
            CHECK(table_mult(large, lambda) == e.multiplicity);
        }
        // and the zero eigenvalue keeps growing for groups with invariants at
        // degrees 11..16
        long extra = 0;
        for (int n = 11; n <= 16; ++n) extra += dim_invariant(G, n);
        CHECK(table_mult(large, 0) - table_mult(small, 0) == extra);
    }
}

TEST_CASE("full tables agree with the single-eigenvalue route") {
    FiniteSubgroup c3 = make_group("C:3");
    int K = 20;
    SpectrumTable S = standard_spectrum(c3, K);
    for (const auto& e : S.entries) {
        long lambda = e.eigenvalue.lo.get_num().get_si();
        auto b = standard_multiplicity(c3, lambda, K);
        CHECK(b.multiplicity == e.multiplicity);
        CHECK(b.complete == e.complete);
    }
    for (long lambda = 0; lambda <= 40; lambda += 2)
        if (!S.find(lambda)) CHECK(standard_multiplicity(c3, lambda, K).multiplicity == 0);
}

TEST_CASE("selected tables restrict without changing values") {
    FiniteSubgroup c7 = make_group("C:7");
    SpectrumTable S = standard_spectrum_primes_window(c7, 50);
    REQUIRE(S.selected.has_value());
    CHECK(S.max_degree == 100);
    // keys are {2a, 4a} over odd primes a <= 50
    auto primes = primes_up_to(50);
    size_t odd_primes = primes.size() - 1;
    CHECK(S.selected->size() == 2 * odd_primes);
    for (const auto& e : S.entries) {
        long lambda = e.eigenvalue.lo.get_num().get_si();
        CHECK(std::binary_search(S.selected->begin(), S.selected->end(), lambda));
        CHECK(e.multiplicity == standard_multiplicity(c7, lambda, 100).multiplicity);
        CHECK(e.complete);
    }
    CHECK(table_mult(S, 2 * 47) == 2 * dim_invariant(c7, 47));
}

TEST_CASE("rossi spectrum at t = 0 reduces to the standard spectrum") {
    for (const char* spec : {"C:1", "C:2", "C:3"}) {
        FiniteSubgroup G = make_group(spec);
        SpectrumTable rossi = rossi_spectrum(G, PerturbationParam{}, 4);
        SpectrumTable standard = standard_spectrum(G, 4);
        REQUIRE(rossi.entries.size() == standard.entries.size());
        for (size_t i = 0; i < rossi.entries.size(); ++i) {
            const auto& r = rossi.entries[i];
            const auto& s = standard.entries[i];
            CHECK(cmp(r.eigenvalue.lo, r.eigenvalue.hi) == 0);  // exact at t = 0
            CHECK(cmp(r.eigenvalue.lo, s.eigenvalue.lo) == 0);
            CHECK(r.multiplicity == s.multiplicity);
        }
    }
}

TEST_CASE("rossi spectrum of the C2 quotient at t = 1/2, K = 2") {
    FiniteSubgroup c2 = make_group("C:2");
    PerturbationParam t = t_rat(1, 2);
    SpectrumTable S = rossi_spectrum(c2, t, 2);
    REQUIRE(S.entries.size() == 2);
    // kernel: degree 0 (one copy) plus the V(2) kernel line (three copies)
    const auto& zero = S.entries[0];
    CHECK(cmp(zero.eigenvalue.lo, 0) == 0);
    CHECK(cmp(zero.eigenvalue.hi, 0) == 0);
    CHECK(zero.multiplicity == 4);
    // the nonzero eigenvalue (4 + 4|t|^2) h(t) = 5 * 20/9 = 100/9 from both
    // chains of degree 2, multiplicity dim H_{0,2}^G = 3 each, merged
    const auto& pos = S.entries[1];
    Rational expect(100, 9);
    CHECK(cmp(pos.eigenvalue.lo, expect) <= 0);
    CHECK(cmp(pos.eigenvalue.hi, expect) >= 0);
    CHECK(pos.multiplicity == 6);
    CHECK(pos.merged);
    REQUIRE(pos.sources.size() == 2);
    CHECK(pos.sources[0].chain == ChainPart::V);
    CHECK(pos.sources[1].chain == ChainPart::W);
    CHECK(pos.sources[0].copies == 3);
    CHECK(pos.sources[1].copies == 3);

    SpectrumTable unscaled = rossi_spectrum(c2, t, 2, Scaling::unscaled);
    CHECK(cmp(unscaled.entries[1].eigenvalue.lo, 5) <= 0);
    CHECK(cmp(unscaled.entries[1].eigenvalue.hi, 5) >= 0);
    SpectrumTable halved = rossi_spectrum(c2, t, 2, Scaling::halved);
    CHECK(cmp(halved.entries[1].eigenvalue.lo, Rational(5, 2)) <= 0);
    CHECK(cmp(halved.entries[1].eigenvalue.hi, Rational(5, 2)) >= 0);
}

TEST_CASE("rossi assembly is independent of the worker count") {
    FiniteSubgroup c3 = make_group("C:3");
    PerturbationParam t = t_rat(3, 10);
    SpectrumTable seq = rossi_spectrum(c3, t, 9, Scaling::raw, Rational(1, 1000000000), 1);
    SpectrumTable par = rossi_spectrum(c3, t, 9, Scaling::raw, Rational(1, 1000000000), 4);
    REQUIRE(seq.entries.size() == par.entries.size());
    for (size_t i = 0; i < seq.entries.size(); ++i) {
        CHECK(cmp(seq.entries[i].eigenvalue.lo, par.entries[i].eigenvalue.lo) == 0);
        CHECK(cmp(seq.entries[i].eigenvalue.hi, par.entries[i].eigenvalue.hi) == 0);
        CHECK(seq.entries[i].multiplicity == par.entries[i].multiplicity);
    }
}

TEST_CASE("rossi eigenvalues drift to the standard ones as t -> 0") {
    FiniteSubgroup c2 = make_group("C:2");
    SpectrumTable standard = standard_spectrum(c2, 6);
    auto drift = [&](const PerturbationParam& t) {
        SpectrumTable S = rossi_spectrum(c2, t, 6);
        double worst = 0.0;
        for (const auto& e : S.entries) {
            double v = e.value_d();
            double best = 1e300;
            for (const auto& s : standard.entries)
                best = std::min(best, std::abs(v - s.eigenvalue.mid_d()));
            worst = std::max(worst, best);
        }
        return worst;
    };
    double d1 = drift(t_rat(1, 10));
    double d2 = drift(t_rat(1, 100));
    double d3 = drift(t_rat(1, 1000));
    CHECK(d2 < d1 / 5);
    CHECK(d3 < d2 / 5);
}

TEST_CASE("odd windows shrink the minimum nonzero eigenvalue") {
    FiniteSubgroup c3 = make_group("C:3");
    PerturbationParam t = t_rat(1, 2);
    DegreeMinimum m11 = window_min_positive(c3, t, 11);
    DegreeMinimum m21 = window_min_positive(c3, t, 21);
    CHECK(cmp(m21.enclosure.hi, m11.enclosure.lo) < 0);
}

TEST_CASE("window minimum localizes the decaying W chain") {
    FiniteSubgroup c3 = make_group("C:3");
    PerturbationParam t = t_rat(1, 2);
    DegreeMinimum m = window_min_positive(c3, t, 21, Scaling::unscaled);
    CHECK(m.degree == 21);
    CHECK(m.chain == ChainPart::W);
    CHECK(sgn(m.enclosure.lo) > 0);
    CHECK(cmp(m.enclosure.hi, Rational(1, 100000)) < 0);  // ~4.8e-6 measured
    CHECK(cmp(m.enclosure.lo, Rational(1, 100000000)) > 0);
}

TEST_CASE("embeddability ladder") {
    CHECK(embeddability_windows(201) == std::vector<int>{21, 51, 101, 201});
    CHECK(embeddability_windows(21) == std::vector<int>{21});
    CHECK(embeddability_windows(10) == std::vector<int>{10});
    CHECK(embeddability_windows(60) == std::vector<int>{21, 51, 60});
    CHECK(embeddability_windows(500) == std::vector<int>{21, 51, 101, 201, 401, 500});
}

TEST_CASE("embeddability verdicts and evidence") {
    PerturbationParam t = t_rat(1, 2);

    FiniteSubgroup c2 = make_group("C:2");
    EmbeddabilityReport even = classify_embeddability(c2, t, 20);
    CHECK(even.embeddable);
    CHECK(even.gap_certified);
    CHECK(cmp(even.gap_bound, Rational(40, 9)) == 0);
    REQUIRE(even.min_nonzero.has_value());
    CHECK(cmp(even.min_nonzero->enclosure.lo, even.gap_bound) >= 0);
    CHECK(even.window_minima.empty());

    FiniteSubgroup c3 = make_group("C:3");
    EmbeddabilityReport odd = classify_embeddability(c3, t, 51);
    CHECK_FALSE(odd.embeddable);
    REQUIRE(odd.window_minima.size() == 2);
    CHECK(odd.window_minima[0].window == 21);
    CHECK(odd.window_minima[1].window == 51);
    CHECK(cmp(odd.window_minima[1].minimum.enclosure.hi, odd.window_minima[0].minimum.enclosure.lo) < 0);

    FiniteSubgroup triv = make_group("C:1");
    CHECK_FALSE(classify_embeddability(triv, t, 12).embeddable);

    CHECK_THROWS_AS(classify_embeddability(c3, PerturbationParam{}, 12), std::invalid_argument);
}

TEST_CASE("invariant eigenspace crosscheck by exact projection") {
    for (const char* spec : {"C:1", "C:2", "C:3", "C:4"}) {
        FiniteSubgroup G = make_group(spec);
        CrosscheckReport r = invariant_eigenspace_crosscheck(G, 4);
        CHECK(r.ok);
        for (const auto& line : r.lines) CHECK(line.assembled == line.projected);
    }
}

TEST_CASE("conjugate subgroups assemble identical spectra") {
    FiniteSubgroup c4 = make_group("C:4");
    FiniteSubgroup conj = make_group("conj:C:4:3/5,4/5");
    CrosscheckReport base = invariant_eigenspace_crosscheck(c4, 6);
    CrosscheckReport moved = invariant_eigenspace_crosscheck(conj, 6);
    CHECK(base.ok);
    CHECK(moved.ok);
    REQUIRE(base.lines.size() == moved.lines.size());
    for (size_t i = 0; i < base.lines.size(); ++i) {
        CHECK(base.lines[i].eigenvalue == moved.lines[i].eigenvalue);
        CHECK(base.lines[i].projected == moved.lines[i].projected);
    }
    SpectrumTable a = standard_spectrum(c4, 12);
    SpectrumTable b = standard_spectrum(conj, 12);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(cmp(a.entries[i].eigenvalue.lo, b.entries[i].eigenvalue.lo) == 0);
        CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
    }
}
