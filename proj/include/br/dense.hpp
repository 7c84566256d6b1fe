#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "br/errors.hpp"

namespace br {

/// Minimal row-major dense matrix used for leaf eigenvector blocks,
/// selected-row matrices, and the quadratic oracle. Not a BLAS substitute;
/// everything that touches it is small or deliberately O(n^2).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Plain sequential dot product. Both solver pipelines route every
/// row-times-column product through this one helper so that results are
/// reproducible across schedules and comparable bit-for-bit.
inline double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t)
        acc += x[t] * y[t];
    return acc;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matmul: inner dimensions disagree");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const double ait = a(i, t);
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += ait * b(t, j);
        }
    return c;
}

} // namespace br
