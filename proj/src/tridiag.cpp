#include "kohnspec/tridiag.hpp"

#include "kohnspec/sturm.hpp"

#include <cmath>
#include <stdexcept>

namespace kohnspec {

namespace {

Rational convention_factor(Scaling s, const PerturbationParam& t) {
    switch (s) {
        case Scaling::raw: return t.h_factor();
        case Scaling::unscaled: return Rational(1);
        case Scaling::halved: return Rational(1, 2);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Rational scaling_ratio(Scaling from, Scaling to, const PerturbationParam& t) {
    return convention_factor(to, t) / convention_factor(from, t);
}

DenseQ TriDiag::to_dense() const {
    DenseQ out(dim(), dim());
    for (size_t i = 0; i < dim(); ++i) out.at(i, i) = diag[i];
    for (size_t i = 0; i + 1 < dim(); ++i) {
        out.at(i, i + 1) = super[i];
        out.at(i + 1, i) = sub[i];
    }
    return out;
}

std::vector<double> SymTriDiag::diag_d() const {
    std::vector<double> out(diag.size());
    for (size_t i = 0; i < diag.size(); ++i) out[i] = diag[i].get_d();
    return out;
}

std::vector<double> SymTriDiag::off_d() const {
    std::vector<double> out(off2.size());
    for (size_t i = 0; i < off2.size(); ++i) out[i] = std::sqrt(off2[i].get_d());
    return out;
}

TriDiag build_V_matrix(int k, const PerturbationParam& t, Scaling scaling) {
    if (k < 0) throw std::invalid_argument("build_V_matrix: k >= 0 required");
    const Rational& n2 = t.norm2();
    TriDiag m;
    m.diag.reserve(k + 1);
    for (long j = 1; j <= k + 1; ++j)
        m.diag.emplace_back(2 * ((2 * k - 2 * j + 2) * (2 * j - 1) + n2 * ((2 * j - 2) * (2 * k - 2 * j + 3))));
    for (long j = 1; j <= k; ++j) {
        Rational u = Rational(4) * (2 * j) * (2 * j - 1) * (2 * k - 2 * j + 1) * (2 * k - 2 * j + 2);
        m.super.push_back(-(t.value() * GaussianRational(u)));
        m.sub.push_back(-t.value().conj());
    }
    m.scaling = Scaling::unscaled;
    if (scaling != Scaling::unscaled)
        return rescale(std::move(m), scaling_ratio(Scaling::unscaled, scaling, t), scaling);
    return m;
}

TriDiag build_W_matrix(int k, const PerturbationParam& t, Scaling scaling) {
    if (k < 0) throw std::invalid_argument("build_W_matrix: k >= 0 required");
    const Rational& n2 = t.norm2();
    TriDiag m;
    m.diag.reserve(k);
    for (long j = 1; j <= k; ++j)
        m.diag.emplace_back(2 * ((2 * k - 2 * j + 1) * (2 * j) + n2 * ((2 * j - 1) * (2 * k - 2 * j + 2))));
    for (long j = 1; j + 1 <= k; ++j) {
        Rational u = Rational(4) * (2 * j + 1) * (2 * j) * (2 * k - 2 * j) * (2 * k - 2 * j + 1);
        m.super.push_back(-(t.value() * GaussianRational(u)));
        m.sub.push_back(-t.value().conj());
    }
    m.scaling = Scaling::unscaled;
    if (scaling != Scaling::unscaled)
        return rescale(std::move(m), scaling_ratio(Scaling::unscaled, scaling, t), scaling);
    return m;
}

TriDiag build_chain_matrix(int n, ChainPart part, const PerturbationParam& t, Scaling scaling) {
    if (n < 0) throw std::invalid_argument("build_chain_matrix: n >= 0 required");
    if (part == ChainPart::full)
        throw std::invalid_argument("build_chain_matrix: part must be V or W");
    const Rational& n2 = t.norm2();
    TriDiag m;
    int first = part == ChainPart::V ? 0 : 1;
    for (long s = first; s <= n; s += 2) {
        m.diag.emplace_back(2 * ((n - s) * (s + 1) + n2 * (s * (n - s + 1))));
        if (s + 2 <= n) {
            Rational u = Rational(4) * (s + 2) * (s + 1) * (n - s - 1) * (n - s);
            m.super.push_back(-(t.value() * GaussianRational(u)));
            m.sub.push_back(-t.value().conj());
        }
    }
    m.scaling = Scaling::unscaled;
    if (scaling != Scaling::unscaled)
        return rescale(std::move(m), scaling_ratio(Scaling::unscaled, scaling, t), scaling);
    return m;
}

SymTriDiag symmetrize(const TriDiag& m) {
    SymTriDiag s;
    s.scaling = m.scaling;
    s.diag.reserve(m.dim());
    for (const auto& d : m.diag) {
        if (!d.is_real()) throw std::invalid_argument("symmetrize: diagonal must be real");
        s.diag.push_back(d.re);
    }
    s.off2.reserve(m.super.size());
    for (size_t j = 0; j < m.super.size(); ++j) {
        GaussianRational prod = m.super[j] * m.sub[j];
        if (!prod.is_real() || sgn(prod.re) < 0)
            throw std::invalid_argument("symmetrize: super*sub must be real nonnegative");
        s.off2.push_back(prod.re);
    }
    return s;
}

TriDiag rescale(TriDiag m, const Rational& factor, Scaling new_scaling) {
    if (sgn(factor) <= 0) throw std::invalid_argument("rescale: positive factor required");
    GaussianRational f{factor};
    for (auto& d : m.diag) d *= f;
    for (auto& s : m.super) s *= f;
    for (auto& s : m.sub) s *= f;
    m.scaling = new_scaling;
    return m;
}

SymTriDiag rescale(SymTriDiag m, const Rational& factor, Scaling new_scaling) {
    if (sgn(factor) <= 0) throw std::invalid_argument("rescale: positive factor required");
    Rational f2 = factor * factor;
    for (auto& d : m.diag) d *= factor;
    for (auto& o : m.off2) o *= f2;
    m.scaling = new_scaling;
    return m;
}

std::vector<GaussianRational> char_poly(const TriDiag& m) {
    // p_0 = 1, p_j = (diag_j - lambda) p_{j-1} - super_{j-1} sub_{j-1} p_{j-2};
    // coefficients ascending in lambda.
    std::vector<GaussianRational> prev2{GaussianRational(1)};  // p_0
    if (m.dim() == 0) return prev2;
    std::vector<GaussianRational> prev{m.diag[0], GaussianRational(-1)};  // p_1
    for (size_t j = 2; j <= m.dim(); ++j) {
        std::vector<GaussianRational> next(j + 1);
        for (size_t i = 0; i < prev.size(); ++i) {
            next[i] += m.diag[j - 1] * prev[i];
            next[i + 1] -= prev[i];
        }
        GaussianRational w = m.super[j - 2] * m.sub[j - 2];
        for (size_t i = 0; i < prev2.size(); ++i) next[i] -= w * prev2[i];
        prev2 = std::move(prev);
        prev = std::move(next);
    }
    return prev;
}

size_t kernel_multiplicity(const TriDiag& m) {
    auto p = char_poly(m);
    for (size_t i = 0; i < p.size(); ++i)
        if (!p[i].is_zero()) return i;
    throw std::logic_error("kernel_multiplicity: zero characteristic polynomial");
}

std::vector<std::pair<double, double>> gershgorin_intervals(const SymTriDiag& m) {
    auto d = m.diag_d();
    auto o = m.off_d();
    std::vector<std::pair<double, double>> rows(m.dim());
    for (size_t j = 0; j < m.dim(); ++j) {
        double r = (j > 0 ? o[j - 1] : 0.0) + (j + 1 < m.dim() ? o[j] : 0.0);
        rows[j] = {d[j] - r, d[j] + r};
    }
    return rows;
}

bool gershgorin_rows_at_least(const SymTriDiag& m, const Rational& c) {
    // Row j requires sqrt(A) + sqrt(B) <= C with A, B the adjacent squared
    // off-diagonals and C = diag_j - c.  Equivalent radical-free test:
    // C >= 0, C^2 - A - B >= 0, and 4AB <= (C^2 - A - B)^2.
    for (size_t j = 0; j < m.dim(); ++j) {
        Rational A = j > 0 ? m.off2[j - 1] : Rational(0);
        Rational B = j + 1 < m.dim() ? m.off2[j] : Rational(0);
        Rational C = m.diag[j] - c;
        if (sgn(C) < 0) return false;
        Rational S = C * C - A - B;
        if (sgn(S) < 0) return false;
        if (cmp(4 * A * B, S * S) > 0) return false;
    }
    return true;
}

RatInterval min_nonzero_eigenvalue(int k, const PerturbationParam& t, Scaling scaling) {
    if (k < 1) throw std::invalid_argument("min_nonzero_eigenvalue: k >= 1 required");
    TriDiag V = build_V_matrix(k, t);
    TriDiag W = build_W_matrix(k, t);
    RatInterval best;
    bool have = false;
    auto consider = [&](const TriDiag& m) {
        if (m.dim() == 0) return;
        if (t.is_zero()) {
            // Diagonal matrix: the spectrum is the diagonal, exactly.
            for (const auto& d : m.diag) {
                if (sgn(d.re) == 0) continue;
                if (!have || cmp(d.re, best.lo) < 0) best = {d.re, d.re};
                have = true;
            }
            return;
        }
        size_t kern = kernel_multiplicity(m);
        if (kern == m.dim()) return;
        RatInterval enc = exact_min_positive(symmetrize(m), kern, Rational(1, 1000000000));
        if (!have) {
            best = enc;
            have = true;
        } else {
            if (cmp(enc.lo, best.lo) < 0) best.lo = enc.lo;
            if (cmp(enc.hi, best.hi) < 0) best.hi = enc.hi;
        }
    };
    consider(V);
    consider(W);
    if (!have) throw std::domain_error("min_nonzero_eigenvalue: no nonzero eigenvalues");
    Rational f = scaling_ratio(Scaling::unscaled, scaling, t);
    return {best.lo * f, best.hi * f};
}

}  // namespace kohnspec
