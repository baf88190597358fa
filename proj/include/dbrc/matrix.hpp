#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dbrc/common.hpp"

namespace dbrc {

// Row-major dense matrix of doubles. Carries features, weights, activations,
// and gradients throughout the library.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    bool all_finite() const noexcept;

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B. Throws InvalidArgument on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// C = A^T * B and C = A * B^T without materializing the transpose.
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& m);

// a += b / a -= b, elementwise; shapes must match.
void add_inplace(DenseMatrix& a, const DenseMatrix& b);
void sub_inplace(DenseMatrix& a, const DenseMatrix& b);
void scale_inplace(DenseMatrix& a, double factor);

// m(r, c) += v[c] for every row r.
void add_row_broadcast(DenseMatrix& m, std::span<const double> v);

std::vector<double> column_sums(const DenseMatrix& m);

// New matrix holding the given rows of m, in index order.
DenseMatrix gather_rows(const DenseMatrix& m, std::span<const std::size_t> indices);

}  // namespace dbrc
