#include "kohnspec/harmonics.hpp"

#include <stdexcept>

namespace kohnspec {

namespace {

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

// Normalized moment of |z1|^(2a) |z2|^(2b) over S^3: a! b! / (a+b+1)!.
Rational moment(unsigned a, unsigned b) { return factorial(a) * factorial(b) / factorial(a + b + 1); }

double moment_d(unsigned a, unsigned b) {
    // a! b! / (a+b+1)! as a product of ratios <= 1 so intermediates never
    // overflow: b! / ((a+1)...(a+b)) * 1/(a+b+1).
    double v = 1.0;
    for (unsigned i = 1; i <= b; ++i) v *= static_cast<double>(i) / static_cast<double>(a + i);
    return v / static_cast<double>(a + b + 1);
}

// Two monomials pair to a nonzero moment exactly when the product
// m * conj(m') is a polynomial in |z1|^2, |z2|^2.
bool pairs(const Monomial& m, const Monomial& n) {
    return m.a - m.c == n.a - n.c && m.b - m.d == n.b - n.d;
}

}  // namespace

GaussianRational inner_product(const PolyQ& f, const PolyQ& g) {
    GaussianRational sum;
    for (const auto& [mf, cf] : f.terms())
        for (const auto& [mg, cg] : g.terms()) {
            if (!pairs(mf, mg)) continue;
            GaussianRational w(moment(mf.a + mg.c, mf.b + mg.d));
            sum += cf * cg.conj() * w;
        }
    return sum;
}

std::complex<double> inner_product(const PolyD& f, const PolyD& g) {
    std::complex<double> sum;
    for (const auto& [mf, cf] : f.terms())
        for (const auto& [mg, cg] : g.terms()) {
            if (!pairs(mf, mg)) continue;
            sum += cf * std::conj(cg) * moment_d(mf.a + mg.c, mf.b + mg.d);
        }
    return sum;
}

Rational norm2(const PolyQ& f) {
    GaussianRational v = inner_product(f, f);
    if (sgn(v.im) != 0) throw std::logic_error("norm2: self-pairing not real");
    return v.re;
}

std::string to_string(const Monomial& m) {
    std::string s;
    auto app = [&s](const char* name, int e) {
        if (e == 0) return;
        s += name;
        if (e > 1) s += "^" + std::to_string(e);
    };
    app("z1", m.a);
    app("z2", m.b);
    app("z1b", m.c);
    app("z2b", m.d);
    if (s.empty()) s = "1";
    return s;
}

PerturbationParam::PerturbationParam(GaussianRational value) : value_(std::move(value)), norm2_(value_.norm2()) {
    if (cmp(norm2_, 1) >= 0) throw std::invalid_argument("PerturbationParam: |t| < 1 required");
}

PerturbationParam PerturbationParam::from_complex(std::complex<double> t) {
    // Doubles are dyadic rationals; mpq_class(double) converts exactly.
    return PerturbationParam(GaussianRational(Rational(t.real()), Rational(t.imag())));
}

Rational PerturbationParam::h_factor() const {
    Rational one_minus = 1 - norm2_;
    return (1 + norm2_) / (one_minus * one_minus);
}

// The box normalization carries an overall factor 2 relative to the plain
// composition of the fields above, fixed by the eigenvalue 2q(p+1) on
// H_{p,q}; equivalently the CR field is the sqrt(2)-normalized one, which
// cannot be represented rationally, so the factor is kept on the products.
PolyQ apply_box_t(const PolyQ& f, const PerturbationParam& t, bool scaled) {
    const GaussianRational& tv = t.value();
    PolyQ Lb = apply_Lbar(f);
    PolyQ out = apply_L(Lb);                        // L Lbar f
    if (!tv.is_zero()) {
        PolyQ Lf = apply_L(f);
        out += GaussianRational(t.norm2()) * apply_Lbar(Lf);  // |t|^2 Lbar L f
        out += tv * apply_L(Lf);                              // t L^2 f
        out += tv.conj() * apply_Lbar(Lb);                    // tbar Lbar^2 f
    }
    out *= GaussianRational(-2);
    if (scaled) out *= GaussianRational(t.h_factor());
    return out;
}

PolyD apply_box_t(const PolyD& f, std::complex<double> t, bool scaled) {
    double n2 = std::norm(t);
    if (n2 >= 1.0) throw std::invalid_argument("apply_box_t: |t| < 1 required");
    PolyD Lb = apply_Lbar(f);
    PolyD out = apply_L(Lb);
    if (t != std::complex<double>{0.0, 0.0}) {
        PolyD Lf = apply_L(f);
        out += std::complex<double>{n2, 0.0} * apply_Lbar(Lf);
        out += t * apply_L(Lf);
        out += std::conj(t) * apply_Lbar(Lb);
    }
    out *= std::complex<double>{-2.0, 0.0};
    if (scaled) out *= std::complex<double>{(1.0 + n2) / ((1.0 - n2) * (1.0 - n2)), 0.0};
    return out;
}

namespace {

template <class K>
Poly<K> pullback_impl(const Poly<K>& f, const K& xi1, const K& xi2) {
    K c1 = scalar_ops<K>::conj(xi1);
    K c2 = scalar_ops<K>::conj(xi2);
    // Images of the four variables under z -> g . z.
    Poly<K> s1, s2, s1c, s2c;
    s1.add_term({1, 0, 0, 0}, xi1);
    s1.add_term({0, 1, 0, 0}, K{} - c2);
    s2.add_term({1, 0, 0, 0}, xi2);
    s2.add_term({0, 1, 0, 0}, c1);
    s1c.add_term({0, 0, 1, 0}, c1);
    s1c.add_term({0, 0, 0, 1}, K{} - xi2);
    s2c.add_term({0, 0, 1, 0}, c2);
    s2c.add_term({0, 0, 0, 1}, xi1);

    int ma = 0, mb = 0, mc = 0, md = 0;
    for (const auto& [m, c] : f.terms()) {
        ma = std::max(ma, m.a);
        mb = std::max(mb, m.b);
        mc = std::max(mc, m.c);
        md = std::max(md, m.d);
    }
    auto powers = [](const Poly<K>& base, int top) {
        std::vector<Poly<K>> p(top + 1);
        p[0] = Poly<K>::constant(scalar_ops<K>::from_int(1));
        for (int e = 1; e <= top; ++e) p[e] = p[e - 1] * base;
        return p;
    };
    auto p1 = powers(s1, ma), p2 = powers(s2, mb), p1c = powers(s1c, mc), p2c = powers(s2c, md);

    Poly<K> out;
    for (const auto& [m, c] : f.terms()) {
        Poly<K> term = p1[m.a] * p2[m.b] * p1c[m.c] * p2c[m.d];
        out += term * c;
    }
    return out;
}

}  // namespace

PolyQ pullback(const PolyQ& f, const GaussianRational& xi1, const GaussianRational& xi2) {
    if (xi1.norm2() + xi2.norm2() != 1) throw std::invalid_argument("pullback: (xi1, xi2) must be a unit pair");
    return pullback_impl(f, xi1, xi2);
}

PolyD pullback(const PolyD& f, std::complex<double> xi1, std::complex<double> xi2) {
    if (std::abs(std::norm(xi1) + std::norm(xi2) - 1.0) > 1e-9)
        throw std::invalid_argument("pullback: (xi1, xi2) must be a unit pair");
    return pullback_impl(f, xi1, xi2);
}

std::vector<PolyQ> chain_basis(int n) {
    if (n < 0) throw std::invalid_argument("chain_basis: n >= 0 required");
    return chain_from(PolyQ::monomial({0, 0, n, 0}));
}

std::vector<PolyQ> chain_from(const PolyQ& seed) {
    if (seed.is_zero()) throw std::invalid_argument("chain_from: zero seed");
    int n = seed.degree();
    if (!seed.is_bihomogeneous(0, n)) throw std::invalid_argument("chain_from: seed must lie in H_{0,n}");
    std::vector<PolyQ> chain;
    chain.reserve(n + 1);
    chain.push_back(seed);
    for (int s = 1; s <= n; ++s) {
        PolyQ next = apply_Lbar(chain.back());
        if (next.is_zero()) throw std::logic_error("chain_from: chain died early");
        chain.push_back(std::move(next));
    }
    if (!apply_Lbar(chain.back()).is_zero()) throw std::logic_error("chain_from: chain failed to terminate");
    return chain;
}

DenseQ oracle_matrix(int n, const PerturbationParam& t, ChainPart part) {
    return oracle_matrix_from(chain_basis(n), t, part);
}

DenseQ oracle_matrix_from(const std::vector<PolyQ>& chain, const PerturbationParam& t, ChainPart part) {
    if (chain.empty()) throw std::invalid_argument("oracle_matrix_from: empty chain");
    std::vector<size_t> keep;
    for (size_t s = 0; s < chain.size(); ++s) {
        bool even = s % 2 == 0;
        if (part == ChainPart::full || (part == ChainPart::V && even) || (part == ChainPart::W && !even))
            keep.push_back(s);
    }
    size_t dim = keep.size();
    DenseQ m(dim, dim);
    // The selected stages must be mutually orthogonal with nonzero norms; a
    // failure here means the chain construction itself is broken.
    std::vector<Rational> gram(dim);
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < i; ++j)
            if (!inner_product(chain[keep[i]], chain[keep[j]]).is_zero())
                throw std::logic_error("oracle_matrix: chain stages not orthogonal");
        gram[i] = norm2(chain[keep[i]]);
        if (sgn(gram[i]) == 0) throw std::logic_error("oracle_matrix: degenerate chain stage");
    }
    for (size_t j = 0; j < dim; ++j) {
        PolyQ image = apply_box_t(chain[keep[j]], t, /*scaled=*/false);
        PolyQ residual = image;
        for (size_t i = 0; i < dim; ++i) {
            GaussianRational coeff = inner_product(image, chain[keep[i]]) / GaussianRational(gram[i]);
            m.at(i, j) = coeff;
            residual -= coeff * chain[keep[i]];
        }
        if (!residual.is_zero()) throw std::logic_error("oracle_matrix: image escapes the chain span");
    }
    // Change of basis w_sigma = 2^(sigma/2) v_sigma, the normalization of the
    // closed-form matrices.  Every nonzero entry couples stages of equal
    // parity, so the rescale factor 2^((sigma_j - sigma_i)/2) stays rational.
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            if (m.at(i, j).is_zero()) continue;
            long delta = static_cast<long>(keep[j]) - static_cast<long>(keep[i]);
            if (delta % 2 != 0) throw std::logic_error("oracle_matrix: odd-distance chain coupling");
            Rational scale;
            if (delta >= 0)
                mpq_mul_2exp(scale.get_mpq_t(), Rational(1).get_mpq_t(), static_cast<unsigned long>(delta / 2));
            else
                mpq_div_2exp(scale.get_mpq_t(), Rational(1).get_mpq_t(), static_cast<unsigned long>(-delta / 2));
            m.at(i, j) *= GaussianRational(scale);
        }
    return m;
}

size_t exact_rank(DenseQ m) {
    size_t rank = 0;
    size_t rows = m.rows(), cols = m.cols();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != row)
            for (size_t j = col; j < cols; ++j) std::swap(m.at(pivot, j), m.at(row, j));
        GaussianRational inv = GaussianRational(1) / m.at(row, col);
        for (size_t i = row + 1; i < rows; ++i) {
            if (m.at(i, col).is_zero()) continue;
            GaussianRational factor = m.at(i, col) * inv;
            for (size_t j = col; j < cols; ++j) m.at(i, j) -= factor * m.at(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

DenseD to_complex(const DenseQ& m) {
    DenseD out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).to_complex();
    return out;
}

}  // namespace kohnspec
