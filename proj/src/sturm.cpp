#include "kohnspec/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kohnspec {

namespace {

// Maximal runs with nonzero interior off-diagonals; eigenvalue counts are
// summed over the runs (a zero coupling splits the matrix into independent
// blocks).
struct Block {
    size_t start, len;
};

std::vector<Block> split_blocks(const SymTriDiag& m) {
    std::vector<Block> blocks;
    size_t start = 0;
    for (size_t j = 0; j + 1 < m.dim(); ++j) {
        if (sgn(m.off2[j]) == 0) {
            blocks.push_back({start, j - start + 1});
            start = j + 1;
        }
    }
    if (m.dim() > 0) blocks.push_back({start, m.dim() - start});
    return blocks;
}

struct CountPair {
    int less = 0;  // eigenvalues strictly below x
    int leq = 0;   // eigenvalues at most x
};

// Sign-variation counts of the leading-minor sequence of one unreduced block,
// evaluated exactly at x.  Denominators are cleared so the recurrence runs in
// integers:
//   q_0 = 1, q_1 = A_1, q_j = A_j q_{j-1} - B_{j-1} q_{j-2}
// with A_j = s (diag_j - x), B_j = s^2 off2_j for a common denominator s.
// A zero minor takes the sign of its predecessor for the strict count and the
// opposite sign for the non-strict count (the one-sided limits from below and
// above); interior zeros contribute one variation either way because their
// neighbors have opposite signs in an unreduced block.
CountPair block_counts(const SymTriDiag& m, const Block& b, const Rational& x) {
    mpz_class s = x.get_den();
    for (size_t j = 0; j < b.len; ++j) {
        mpz_class d = m.diag[b.start + j].get_den();
        mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    }
    for (size_t j = 0; j + 1 < b.len; ++j) {
        mpz_class d = m.off2[b.start + j].get_den();
        mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    }
    mpz_class s2 = s * s;

    auto cleared = [&](const Rational& r, const mpz_class& mult) {
        Rational scaled = r * Rational(mult);
        if (scaled.get_den() != 1) throw std::logic_error("block_counts: denominator not cleared");
        return scaled.get_num();
    };

    mpz_class q_prev2 = 1, q_prev;
    int sgn_strict_prev = 1, sgn_leq_prev = 1;
    CountPair out;
    q_prev = cleared(m.diag[b.start] - x, s);
    for (size_t j = 1; j <= b.len; ++j) {
        if (j >= 2) {
            mpz_class A = cleared(m.diag[b.start + j - 1] - x, s);
            mpz_class B = cleared(m.off2[b.start + j - 2], s2);
            mpz_class q = A * q_prev - B * q_prev2;
            q_prev2 = std::move(q_prev);
            q_prev = std::move(q);
        }
        int sg = sgn(q_prev);
        int sg_strict = sg == 0 ? sgn_strict_prev : sg;
        int sg_leq = sg == 0 ? -sgn_leq_prev : sg;
        if (sg_strict != sgn_strict_prev) ++out.less;
        if (sg_leq != sgn_leq_prev) ++out.leq;
        sgn_strict_prev = sg_strict;
        sgn_leq_prev = sg_leq;
    }
    return out;
}

CountPair exact_counts(const SymTriDiag& m, const Rational& x) {
    CountPair total;
    for (const auto& b : split_blocks(m)) {
        CountPair c = block_counts(m, b, x);
        total.less += c.less;
        total.leq += c.leq;
    }
    return total;
}

// Double-precision count of eigenvalues strictly below x (LDL pivot signs).
int count_below_d(const std::vector<double>& diag, const std::vector<double>& off2, double x) {
    int cnt = 0;
    double d = 1.0;
    for (size_t i = 0; i < diag.size(); ++i) {
        d = diag[i] - x - (i > 0 ? off2[i - 1] / d : 0.0);
        if (d == 0.0) d = -std::numeric_limits<double>::min();
        if (d < 0.0) ++cnt;
    }
    return cnt;
}

}  // namespace

int exact_count_less(const SymTriDiag& m, const Rational& x) { return exact_counts(m, x).less; }
int exact_count_leq(const SymTriDiag& m, const Rational& x) { return exact_counts(m, x).leq; }

std::vector<RatInterval> sturm_eigenvalues(const SymTriDiag& m, double rel_tol) {
    size_t n = m.dim();
    std::vector<RatInterval> out;
    if (n == 0) return out;
    auto diag = m.diag_d();
    std::vector<double> off2(m.off2.size());
    for (size_t i = 0; i < off2.size(); ++i) off2[i] = m.off2[i].get_d();

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    auto off = m.off_d();
    for (size_t j = 0; j < n; ++j) {
        double r = (j > 0 ? off[j - 1] : 0.0) + (j + 1 < n ? off[j] : 0.0);
        lo = std::min(lo, diag[j] - r);
        hi = std::max(hi, diag[j] + r);
    }
    double span = std::max(hi - lo, 1.0);
    lo -= 1e-10 * span;
    hi += 1e-10 * span;

    out.reserve(n);
    for (size_t idx = 0; idx < n; ++idx) {
        double a = lo, b = hi;
        // Invariant: count(a) <= idx < count(b).
        while (true) {
            double width_target = rel_tol * std::max({std::abs(a), std::abs(b), 1e-290});
            if (b - a <= width_target) break;
            double mid = a + (b - a) / 2;
            if (mid <= a || mid >= b) break;  // ulp floor
            if (count_below_d(diag, off2, mid) > static_cast<int>(idx))
                b = mid;
            else
                a = mid;
        }
        out.push_back({Rational(a), Rational(b)});
    }
    return out;
}

RatInterval exact_refine_eigenvalue(const SymTriDiag& m, size_t idx, RatInterval bracket,
                                    const Rational& rel_tol, int max_iter) {
    Rational lo = bracket.lo, hi = bracket.hi;
    if (exact_count_leq(m, lo) > static_cast<int>(idx) || exact_count_leq(m, hi) <= static_cast<int>(idx))
        throw std::invalid_argument("exact_refine_eigenvalue: bracket does not isolate index");
    for (int it = 0; it < max_iter; ++it) {
        Rational width = hi - lo;
        Rational alo(abs(lo)), ahi(abs(hi));
        Rational mag = cmp(alo, ahi) > 0 ? alo : ahi;
        if (cmp(width, rel_tol * mag) <= 0) break;
        // Dyadic midpoint: keeps denominators to a single power of two.
        Rational half = (lo + hi) / 2;
        Rational quarter_width = width / 4;
        mpz_class e(1);
        while (cmp(Rational(1, e), quarter_width) >= 0) e *= 2;
        Rational scaled = half * Rational(e);
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        Rational mid(fl, e);
        mid.canonicalize();
        if (cmp(mid, lo) <= 0 || cmp(mid, hi) >= 0) mid = half;
        if (exact_count_leq(m, mid) > static_cast<int>(idx))
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

Rational eigenvalue_upper_bound(const SymTriDiag& m) {
    // diag_j + sqrt(A) + sqrt(B) <= diag_j + ceil-sqrt(A) + ceil-sqrt(B) with
    // sqrt(p/q) <= (isqrt(pq) + 1)/q.
    auto root_up = [](const Rational& r) {
        if (sgn(r) == 0) return Rational(0);
        mpz_class pq = r.get_num() * r.get_den();
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), pq.get_mpz_t());
        return Rational(root + 1, r.get_den());
    };
    Rational best(0);
    for (size_t j = 0; j < m.dim(); ++j) {
        Rational row = m.diag[j];
        if (j > 0) row += root_up(m.off2[j - 1]);
        if (j + 1 < m.dim()) row += root_up(m.off2[j]);
        if (cmp(row, best) > 0) best = row;
    }
    return best;
}

RatInterval exact_min_positive(const SymTriDiag& m, size_t kernel_mult, const Rational& rel_tol) {
    if (m.dim() == 0) throw std::invalid_argument("exact_min_positive: empty matrix");
    if (exact_count_less(m, Rational(0)) != 0)
        throw std::domain_error("exact_min_positive: matrix has a negative eigenvalue");
    if (exact_count_leq(m, Rational(0)) != static_cast<int>(kernel_mult))
        throw std::domain_error("exact_min_positive: kernel multiplicity mismatch");
    if (kernel_mult >= m.dim()) throw std::domain_error("exact_min_positive: no positive eigenvalues");
    // Power-of-two upper bound so every bisection midpoint is dyadic.
    Rational H = eigenvalue_upper_bound(m);
    Rational H2(1);
    while (cmp(H2, H) < 0) H2 *= 2;
    return exact_refine_eigenvalue(m, kernel_mult, {Rational(0), H2}, rel_tol);
}

}  // namespace kohnspec
