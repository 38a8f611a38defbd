#pragma once

#include "kohnspec/gaussian_rational.hpp"
#include "kohnspec/poly.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace kohnspec {

// Minimal dense matrix used for oracle output, flips and exact rank
// computations.  Not a linear-algebra library: production eigensolves go
// through the tridiagonal Sturm path, dense eigensolves only through the test
// oracle.
template <class K>
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K{}) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    K& at(size_t i, size_t j) { return data_.at(i * cols_ + j); }
    const K& at(size_t i, size_t j) const { return data_.at(i * cols_ + j); }

    friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }
    friend bool operator!=(const DenseMatrix& x, const DenseMatrix& y) { return !(x == y); }

    friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch");
        DenseMatrix out(x.rows_, y.cols_);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) {
                const K& v = x.at(i, k);
                if (scalar_ops<K>::is_zero(v)) continue;
                for (size_t j = 0; j < y.cols_; ++j) out.at(i, j) += v * y.at(k, j);
            }
        return out;
    }

    DenseMatrix transpose() const {
        DenseMatrix out(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<K> data_;
};

using DenseQ = DenseMatrix<GaussianRational>;
using DenseD = DenseMatrix<std::complex<double>>;

// Conjugation by the antidiagonal permutation: F(M) = E M^T E where E is the
// exchange matrix.  F(M) is similar to M, so spectra agree.
template <class K>
DenseMatrix<K> flip(const DenseMatrix<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("flip: square matrix required");
    size_t n = m.rows();
    DenseMatrix<K> out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = m.at(n - 1 - j, n - 1 - i);
    return out;
}

// Exact rank over the Gaussian rationals by fraction-free-ish Gaussian
// elimination with exact pivot tests.
size_t exact_rank(DenseQ m);

DenseD to_complex(const DenseQ& m);

}  // namespace kohnspec
