#include "kohnspec/spectrum.hpp"

#include "kohnspec/harmonics.hpp"
#include "kohnspec/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace kohnspec {

namespace {

// Compute budget for per-degree matrix builds; beyond this the quadratic
// degree loops and the exact bisections stop being interactive.
constexpr int kMaxRossiDegree = 2000;

bool chain_less(const std::optional<ChainPart>& a, const std::optional<ChainPart>& b) {
    auto rank = [](const std::optional<ChainPart>& c) {
        if (!c) return 0;
        return c == ChainPart::V ? 1 : 2;
    };
    return rank(a) < rank(b);
}

void sort_sources(std::vector<SpectrumSource>& sources) {
    std::sort(sources.begin(), sources.end(), [](const SpectrumSource& x, const SpectrumSource& y) {
        if (x.degree != y.degree) return x.degree < y.degree;
        if (x.bidegree && y.bidegree) return *x.bidegree < *y.bidegree;
        return chain_less(x.chain, y.chain);
    });
}

}  // namespace

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("KOHNSPEC_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

const SpectrumEntry* SpectrumTable::find(long eigenvalue) const {
    for (const auto& e : entries) {
        if (cmp(e.eigenvalue.lo, e.eigenvalue.hi) != 0) continue;
        if (cmp(e.eigenvalue.lo, eigenvalue) == 0) return &e;
    }
    return nullptr;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
    for (long p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= n; q += p) composite[q] = true;
    }
    return out;
}

MultiplicityBreakdown standard_multiplicity(const FiniteSubgroup& G, long lambda, int K) {
    if (K < 0) throw std::invalid_argument("standard_multiplicity: K >= 0 required");
    MultiplicityBreakdown out;
    if (lambda < 0 || lambda % 2 != 0) {
        out.complete = true;  // odd or negative values never occur
        return out;
    }
    if (lambda == 0) {
        out.complete = false;  // every degree contributes its CR functions
        for (long p = 0; p <= K; ++p) {
            long d = dim_invariant(G, p);
            if (d == 0) continue;
            out.multiplicity += d;
            out.sources.push_back({static_cast<int>(p), std::nullopt,
                                   std::make_pair(static_cast<int>(p), 0), d});
        }
        return out;
    }
    long m = lambda / 2;
    // lambda = 2q(p+1): q runs over the divisors of m, p = m/q - 1, and the
    // contributing degree is n = p + q <= m, so the count is final once K >= m.
    out.complete = m <= K;
    std::vector<long> divisors;
    for (long q = 1; q * q <= m; ++q) {
        if (m % q != 0) continue;
        divisors.push_back(q);
        if (q != m / q) divisors.push_back(m / q);
    }
    std::sort(divisors.begin(), divisors.end());
    for (long q : divisors) {
        long p = m / q - 1;
        long n = p + q;
        if (n > K) continue;
        long d = dim_invariant(G, n);
        if (d == 0) continue;
        out.multiplicity += d;
        out.sources.push_back({static_cast<int>(n), std::nullopt,
                               std::make_pair(static_cast<int>(p), static_cast<int>(q)), d});
    }
    sort_sources(out.sources);
    return out;
}

SpectrumTable standard_spectrum(const FiniteSubgroup& G, int K) {
    if (K < 0) throw std::invalid_argument("standard_spectrum: K >= 0 required");
    SpectrumTable table;
    table.structure = Structure::standard;
    table.group = G.spec() ? *G.spec() : GroupSpec{};
    table.max_degree = K;
    table.scaling = Scaling::raw;

    std::map<long, SpectrumEntry> by_value;
    for (int n = 0; n <= K; ++n) {
        long d = dim_invariant(G, n);
        if (d == 0) continue;
        for (int sigma = 0; sigma <= n; ++sigma) {
            long lambda = 2L * (n - sigma) * (sigma + 1);
            SpectrumEntry& e = by_value[lambda];
            e.multiplicity += d;
            e.sources.push_back({n, std::nullopt, std::make_pair(sigma, n - sigma), d});
        }
    }
    for (auto& [lambda, e] : by_value) {
        e.eigenvalue = {Rational(lambda), Rational(lambda)};
        e.complete = lambda > 0 && lambda / 2 <= K;
        e.merged = false;
        sort_sources(e.sources);
        table.entries.push_back(std::move(e));
    }
    return table;
}

SpectrumTable standard_spectrum_selected(const FiniteSubgroup& G, int K, std::vector<long> eigenvalues) {
    if (K < 0) throw std::invalid_argument("standard_spectrum_selected: K >= 0 required");
    std::sort(eigenvalues.begin(), eigenvalues.end());
    eigenvalues.erase(std::unique(eigenvalues.begin(), eigenvalues.end()), eigenvalues.end());
    SpectrumTable table;
    table.structure = Structure::standard;
    table.group = G.spec() ? *G.spec() : GroupSpec{};
    table.max_degree = K;
    table.scaling = Scaling::raw;
    table.selected = eigenvalues;
    for (long lambda : eigenvalues) {
        MultiplicityBreakdown b = standard_multiplicity(G, lambda, K);
        if (b.multiplicity == 0) continue;
        SpectrumEntry e;
        e.eigenvalue = {Rational(lambda), Rational(lambda)};
        e.multiplicity = b.multiplicity;
        e.sources = std::move(b.sources);
        e.complete = b.complete;
        table.entries.push_back(std::move(e));
    }
    return table;
}

SpectrumTable standard_spectrum_primes_window(const FiniteSubgroup& G, long P) {
    if (P < 3) throw std::invalid_argument("standard_spectrum_primes_window: P >= 3 required");
    std::vector<long> keys;
    for (long alpha : primes_up_to(P)) {
        if (alpha == 2) continue;
        keys.push_back(2 * alpha);
        keys.push_back(4 * alpha);
    }
    return standard_spectrum_selected(G, static_cast<int>(2 * P), std::move(keys));
}

namespace {

struct RossiItem {
    RatInterval enc;  // unscaled convention
    int degree = 0;
    ChainPart chain = ChainPart::V;
    long copies = 0;
    bool zero = false;  // exact kernel eigenvalue
};

// Certified unscaled enclosures of one chain matrix's full spectrum: exact
// kernel count from the characteristic polynomial, double-precision Sturm
// enclosures for the rest, with exact refinement whenever an enclosure of a
// positive eigenvalue fails to separate from zero.
std::vector<RossiItem> chain_items(int n, ChainPart part, const PerturbationParam& t, long copies) {
    std::vector<RossiItem> items;
    TriDiag td = build_chain_matrix(n, part, t);
    if (td.dim() == 0) return items;
    if (t.is_zero()) {
        for (const auto& d : td.diag) {
            RossiItem it{{d.re, d.re}, n, part, copies, sgn(d.re) == 0};
            items.push_back(std::move(it));
        }
        std::sort(items.begin(), items.end(),
                  [](const RossiItem& x, const RossiItem& y) { return cmp(x.enc.lo, y.enc.lo) < 0; });
        return items;
    }
    size_t kern = kernel_multiplicity(td);
    SymTriDiag sym = symmetrize(td);
    auto encs = sturm_eigenvalues(sym);
    for (size_t i = 0; i < encs.size(); ++i) {
        if (i < kern) {
            items.push_back({{Rational(0), Rational(0)}, n, part, copies, true});
            continue;
        }
        RatInterval enc = encs[i];
        if (sgn(enc.lo) <= 0)
            enc = exact_refine_eigenvalue(sym, i, {Rational(0), enc.hi}, Rational(1, 8));
        items.push_back({enc, n, part, copies, false});
    }
    return items;
}

}  // namespace

SpectrumTable rossi_spectrum(const FiniteSubgroup& G, const PerturbationParam& t, int K,
                             Scaling scaling, const Rational& merge_tol, int jobs) {
    if (K < 0) throw std::invalid_argument("rossi_spectrum: K >= 0 required");
    if (K > kMaxRossiDegree) throw std::invalid_argument("rossi_spectrum: K exceeds the compute budget");
    if (cmp(t.norm2(), 1) >= 0) throw std::invalid_argument("rossi_spectrum: |t| < 1 required");
    if (sgn(merge_tol) < 0) throw std::invalid_argument("rossi_spectrum: merge_tol >= 0 required");

    SpectrumTable table;
    table.structure = Structure::rossi;
    table.t = t;
    table.group = G.spec() ? *G.spec() : GroupSpec{};
    table.max_degree = K;
    table.scaling = scaling;
    table.merge_tolerance = merge_tol;

    std::vector<std::vector<RossiItem>> per_degree(static_cast<size_t>(K) + 1);
    std::vector<long> dims(static_cast<size_t>(K) + 1, 0);
    for (int n = 0; n <= K; ++n) dims[n] = dim_invariant(G, n);
    parallel_for(static_cast<size_t>(K) + 1, jobs, [&](size_t n) {
        if (dims[n] == 0) return;
        auto items = chain_items(static_cast<int>(n), ChainPart::V, t, dims[n]);
        auto w = chain_items(static_cast<int>(n), ChainPart::W, t, dims[n]);
        items.insert(items.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
        per_degree[n] = std::move(items);
    });

    std::vector<RossiItem> items;
    for (auto& v : per_degree)
        items.insert(items.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));

    Rational factor = scaling_ratio(Scaling::unscaled, scaling, t);
    for (auto& it : items) {
        it.enc.lo *= factor;
        it.enc.hi *= factor;
    }

    std::sort(items.begin(), items.end(), [](const RossiItem& x, const RossiItem& y) {
        if (x.zero != y.zero) return x.zero;  // exact zeros first
        int c = cmp(x.enc.lo, y.enc.lo);
        if (c != 0) return c < 0;
        c = cmp(x.enc.hi, y.enc.hi);
        if (c != 0) return c < 0;
        if (x.degree != y.degree) return x.degree < y.degree;
        return chain_less(x.chain, y.chain);
    });

    auto add_source = [](SpectrumEntry& e, const RossiItem& it) {
        for (auto& s : e.sources) {
            if (s.degree == it.degree && s.chain == it.chain) {
                s.copies += it.copies;
                return;
            }
        }
        e.sources.push_back({it.degree, it.chain, std::nullopt, it.copies});
    };

    for (size_t i = 0; i < items.size();) {
        SpectrumEntry e;
        e.eigenvalue = items[i].enc;
        e.multiplicity = items[i].copies;
        e.complete = false;  // a Rossi table is always a finite window
        bool zero_entry = items[i].zero;
        add_source(e, items[i]);
        size_t j = i + 1;
        // Exact zeros only pool with exact zeros; certified-positive
        // enclosures never collapse into the kernel entry.
        while (j < items.size() && items[j].zero == zero_entry &&
               (zero_entry || cmp(items[j].enc.lo - e.eigenvalue.hi, merge_tol) <= 0)) {
            if (cmp(items[j].enc.hi, e.eigenvalue.hi) > 0) e.eigenvalue.hi = items[j].enc.hi;
            e.multiplicity += items[j].copies;
            add_source(e, items[j]);
            ++j;
        }
        e.merged = e.sources.size() > 1;
        sort_sources(e.sources);
        table.entries.push_back(std::move(e));
        i = j;
    }
    return table;
}

namespace {

struct ChainHandle {
    int degree = 0;
    ChainPart part = ChainPart::V;
    SymTriDiag sym;      // unscaled
    size_t kern = 0;
    bool has_positive = false;
};

std::vector<ChainHandle> window_chains(const FiniteSubgroup& G, const PerturbationParam& t, int K,
                                       int jobs) {
    std::vector<long> dims(static_cast<size_t>(K) + 1, 0);
    for (int n = 1; n <= K; ++n) dims[n] = dim_invariant(G, n);
    std::vector<std::vector<ChainHandle>> per_degree(static_cast<size_t>(K) + 1);
    parallel_for(static_cast<size_t>(K) + 1, jobs, [&](size_t n) {
        if (n == 0 || dims[n] == 0) return;
        for (ChainPart part : {ChainPart::W, ChainPart::V}) {
            TriDiag td = build_chain_matrix(static_cast<int>(n), part, t);
            if (td.dim() == 0) continue;
            ChainHandle h;
            h.degree = static_cast<int>(n);
            h.part = part;
            h.kern = kernel_multiplicity(td);
            h.has_positive = h.kern < td.dim();
            h.sym = symmetrize(td);
            per_degree[n].push_back(std::move(h));
        }
    });
    std::vector<ChainHandle> out;
    // Descending degree, W before V: the decaying minima live in the
    // odd-degree W chains, so this order lets a single refined candidate
    // eliminate almost every other chain with one exact count each.
    for (size_t n = per_degree.size(); n-- > 0;)
        for (auto& h : per_degree[n]) out.push_back(std::move(h));
    return out;
}

DegreeMinimum window_min_over(const std::vector<ChainHandle>& chains, const PerturbationParam& t,
                              Scaling scaling, const Rational& refine_rel) {
    bool have = false;
    RatInterval best;  // elementwise minima over the refined enclosures
    int best_degree = 0;
    ChainPart best_part = ChainPart::V;
    for (const auto& h : chains) {
        if (!h.has_positive) continue;
        if (have && exact_count_less(h.sym, best.hi) == static_cast<int>(h.kern))
            continue;  // certified: this chain's minimum is >= best.hi
        RatInterval enc = exact_min_positive(h.sym, h.kern, refine_rel);
        if (!have) {
            best = enc;
            best_degree = h.degree;
            best_part = h.part;
            have = true;
            continue;
        }
        if (cmp(enc.hi, best.hi) < 0) {
            best.hi = enc.hi;
            best_degree = h.degree;
            best_part = h.part;
        }
        if (cmp(enc.lo, best.lo) < 0) best.lo = enc.lo;
    }
    if (!have) throw std::domain_error("window_min_positive: no positive eigenvalues in the window");
    Rational factor = scaling_ratio(Scaling::unscaled, scaling, t);
    return {best_degree, best_part, {best.lo * factor, best.hi * factor}};
}

}  // namespace

DegreeMinimum window_min_positive(const FiniteSubgroup& G, const PerturbationParam& t, int K,
                                  Scaling scaling, const Rational& refine_rel) {
    if (K < 1) throw std::invalid_argument("window_min_positive: K >= 1 required");
    if (K > kMaxRossiDegree) throw std::invalid_argument("window_min_positive: K exceeds the compute budget");
    return window_min_over(window_chains(G, t, K, 0), t, scaling, refine_rel);
}

std::vector<int> embeddability_windows(int K) {
    std::vector<int> out;
    if (K < 1) return out;
    int w = 21;
    while (w < K) {
        out.push_back(w);
        if (w < 201)
            w = w <= 21 ? 51 : (w <= 51 ? 101 : 201);
        else
            w = 2 * w - 1;
    }
    out.push_back(K);
    return out;
}

EmbeddabilityReport classify_embeddability(const FiniteSubgroup& G, const PerturbationParam& t,
                                           int K, int jobs) {
    if (t.is_zero())
        throw std::invalid_argument(
            "classify_embeddability: t != 0 required (at t = 0 the structure is standard and "
            "every quotient embeds)");
    if (K < 1) throw std::invalid_argument("classify_embeddability: K >= 1 required");
    if (K > kMaxRossiDegree) throw std::invalid_argument("classify_embeddability: K exceeds the compute budget");
    if (cmp(t.norm2(), 1) >= 0) throw std::invalid_argument("classify_embeddability: |t| < 1 required");

    EmbeddabilityReport report;
    report.group = G.spec() ? *G.spec() : GroupSpec{};
    report.order = G.order();
    report.t = t;
    report.max_degree = K;
    report.embeddable = G.order() % 2 == 0;

    auto chains = window_chains(G, t, K, jobs);
    if (report.embeddable) {
        report.gap_bound = 2 * t.h_factor();
        // Certify: no chain eigenvalues in (0, 2) unscaled — i.e. (0, 2h(t))
        // raw — from degrees >= 8.  Eigenvalues from the few lower degrees
        // are reported through min_nonzero but exempt from the bound.
        bool ok = true;
        for (const auto& h : chains) {
            if (h.degree < 8) continue;
            if (exact_count_less(h.sym, Rational(2)) != static_cast<int>(h.kern)) ok = false;
        }
        report.gap_certified = ok;
        try {
            report.min_nonzero = window_min_over(chains, t, Scaling::raw, Rational(1, 8));
        } catch (const std::domain_error&) {
            report.min_nonzero.reset();
        }
    } else {
        for (int w : embeddability_windows(K)) {
            std::vector<ChainHandle> sub;
            for (const auto& h : chains)
                if (h.degree <= w) sub.push_back(h);
            try {
                report.window_minima.push_back({w, window_min_over(sub, t, Scaling::raw, Rational(1, 8))});
            } catch (const std::domain_error&) {
                // window with no invariant nonzero eigenvalues — skip
            }
        }
    }
    return report;
}

namespace {

long rank_of(const std::vector<PolyQ>& vs) {
    std::map<Monomial, size_t> index;
    for (const auto& v : vs)
        for (const auto& [m, c] : v.terms())
            index.emplace(m, index.size());
    if (index.empty()) return 0;
    DenseQ M(index.size(), vs.size());
    for (size_t j = 0; j < vs.size(); ++j)
        for (const auto& [m, c] : vs[j].terms()) M.at(index.at(m), j) = c;
    return static_cast<long>(exact_rank(M));
}

}  // namespace

CrosscheckReport invariant_eigenspace_crosscheck(const FiniteSubgroup& G, int K) {
    if (K < 0) throw std::invalid_argument("invariant_eigenspace_crosscheck: K >= 0 required");
    CrosscheckReport report;
    report.ok = true;
    for (int n = 0; n <= K; ++n) {
        long d = dim_invariant(G, n);
        // All n+1 chains of degree n, stage by stage: stages[sigma][a] spans
        // H_{sigma, n-sigma} as a runs over the seeds conj(z1)^a conj(z2)^(n-a).
        std::vector<std::vector<PolyQ>> stages(n + 1);
        for (int a = 0; a <= n; ++a) {
            PolyQ seed = PolyQ::monomial({0, 0, a, n - a});
            auto chain = chain_from(seed);
            for (int sigma = 0; sigma <= n; ++sigma) stages[sigma].push_back(chain[sigma]);
        }
        std::map<long, CrosscheckLine> lines;
        for (int sigma = 0; sigma <= n; ++sigma) {
            std::vector<PolyQ> projected;
            projected.reserve(stages[sigma].size());
            for (const auto& v : stages[sigma]) projected.push_back(project_invariant(v, G));
            long rank = rank_of(projected);
            long lambda = 2L * (n - sigma) * (sigma + 1);
            CrosscheckLine& line = lines[lambda];
            line.degree = n;
            line.eigenvalue = lambda;
            line.assembled += d;
            line.projected += rank;
            if (rank != d) report.ok = false;  // one slot per bidegree and chain
        }
        for (auto& [lambda, line] : lines) {
            if (line.assembled != line.projected) report.ok = false;
            report.lines.push_back(line);
        }
    }
    return report;
}

}  // namespace kohnspec
