#include "dbrc/matrix.hpp"

#include <cmath>
#include <string>

namespace dbrc {

bool DenseMatrix::all_finite() const noexcept {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

namespace {

// C += A * B, row-major. Processes four rows of A per pass so each loaded
// row of B feeds four accumulator rows.
void matmul_kernel(const double* a, const double* b, double* c,
                   std::size_t m, std::size_t k, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const double* a0 = a + (i + 0) * k;
        const double* a1 = a + (i + 1) * k;
        const double* a2 = a + (i + 2) * k;
        const double* a3 = a + (i + 3) * k;
        double* c0 = c + (i + 0) * n;
        double* c1 = c + (i + 1) * n;
        double* c2 = c + (i + 2) * n;
        double* c3 = c + (i + 3) * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double* brow = b + l * n;
            const double v0 = a0[l], v1 = a1[l], v2 = a2[l], v3 = a3[l];
            for (std::size_t j = 0; j < n; ++j) {
                const double bj = brow[j];
                c0[j] += v0 * bj;
                c1[j] += v1 * bj;
                c2[j] += v2 * bj;
                c3[j] += v3 * bj;
            }
        }
    }
    for (; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double* brow = b + l * n;
            const double v = arow[l];
            for (std::size_t j = 0; j < n; ++j) crow[j] += v * brow[j];
        }
    }
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InvalidArgument("matmul: inner dimensions differ (" +
                              std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()) + ")");
    }
    DenseMatrix c(a.rows(), b.cols());
    matmul_kernel(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw InvalidArgument("matmul_at_b: row counts differ");
    }
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    DenseMatrix c(k, n);
    double* cd = c.data();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const double* a0 = a.data() + (i + 0) * k;
        const double* a1 = a.data() + (i + 1) * k;
        const double* a2 = a.data() + (i + 2) * k;
        const double* a3 = a.data() + (i + 3) * k;
        const double* b0 = b.data() + (i + 0) * n;
        const double* b1 = b.data() + (i + 1) * n;
        const double* b2 = b.data() + (i + 2) * n;
        const double* b3 = b.data() + (i + 3) * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double v0 = a0[l], v1 = a1[l], v2 = a2[l], v3 = a3[l];
            double* crow = cd + l * n;
            for (std::size_t j = 0; j < n; ++j) {
                crow[j] += v0 * b0[j] + v1 * b1[j] + v2 * b2[j] + v3 * b3[j];
            }
        }
    }
    for (; i < m; ++i) {
        const double* arow = a.data() + i * k;
        const double* brow = b.data() + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double v = arow[l];
            double* crow = cd + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += v * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) {
        throw InvalidArgument("matmul_a_bt: inner dimensions differ");
    }
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    DenseMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a.data() + i * k;
        double* crow = c.data() + i * n;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const double* b0 = b.data() + (j + 0) * k;
            const double* b1 = b.data() + (j + 1) * k;
            const double* b2 = b.data() + (j + 2) * k;
            const double* b3 = b.data() + (j + 3) * k;
            double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                const double av = arow[l];
                s0 += av * b0[l];
                s1 += av * b1[l];
                s2 += av * b2[l];
                s3 += av * b3[l];
            }
            crow[j] = s0;
            crow[j + 1] = s1;
            crow[j + 2] = s2;
            crow[j + 3] = s3;
        }
        for (; j < n; ++j) {
            const double* brow = b.data() + j * k;
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += arow[l] * brow[l];
            crow[j] = s;
        }
    }
    return c;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
    }
    return t;
}

void add_inplace(DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("add_inplace: shape mismatch");
    }
    double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] += pb[i];
}

void sub_inplace(DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("sub_inplace: shape mismatch");
    }
    double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] -= pb[i];
}

void scale_inplace(DenseMatrix& a, double factor) {
    for (double& v : a.values()) v *= factor;
}

void add_row_broadcast(DenseMatrix& m, std::span<const double> v) {
    if (v.size() != m.cols()) {
        throw InvalidArgument("add_row_broadcast: vector length != cols");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double* row = m.data() + r * m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) row[c] += v[c];
    }
}

std::vector<double> column_sums(const DenseMatrix& m) {
    std::vector<double> sums(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* row = m.data() + r * m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) sums[c] += row[c];
    }
    return sums;
}

DenseMatrix gather_rows(const DenseMatrix& m, std::span<const std::size_t> indices) {
    DenseMatrix out(indices.size(), m.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= m.rows()) throw InvalidArgument("gather_rows: index out of range");
        const double* src = m.data() + indices[i] * m.cols();
        double* dst = out.data() + i * m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) dst[c] = src[c];
    }
    return out;
}

}  // namespace dbrc
