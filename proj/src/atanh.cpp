#include "dbrc/atanh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dbrc {

namespace {

// tanh saturates to exactly 1.0 in double precision around |x| ~ 19; clamp
// just inside so the open-interval contract holds.
constexpr double kSatLimit = 1.0 - std::numeric_limits<double>::epsilon();

void check_shape(const ATanhLayer& layer, const DenseMatrix& s) {
    if (s.cols() != layer.bits()) {
        throw InvalidArgument("atanh: input cols != configured bits");
    }
}

}  // namespace

ATanhLayer make_atanh_layer(std::size_t bits, double lambda, double alpha_min) {
    if (bits == 0) throw InvalidArgument("atanh: bits must be >= 1");
    if (lambda < 0.0) throw InvalidArgument("atanh: lambda must be nonnegative");
    if (alpha_min <= 0.0) throw InvalidArgument("atanh: alpha_min must be positive");
    ATanhLayer layer;
    layer.alpha.assign(bits, 1.0);
    layer.lambda = lambda;
    layer.alpha_min = alpha_min;
    return layer;
}

DenseMatrix atanh_forward(const ATanhLayer& layer, const DenseMatrix& s) {
    check_shape(layer, s);
    DenseMatrix a(s.rows(), s.cols());
    for (std::size_t r = 0; r < s.rows(); ++r) {
        const double* srow = s.data() + r * s.cols();
        double* arow = a.data() + r * a.cols();
        for (std::size_t i = 0; i < s.cols(); ++i) {
            arow[i] = std::clamp(std::tanh(layer.alpha[i] * srow[i]), -kSatLimit, kSatLimit);
        }
    }
    return a;
}

DenseMatrix atanh_grad_input(const ATanhLayer& layer, const DenseMatrix& s,
                             const DenseMatrix& upstream) {
    check_shape(layer, s);
    if (upstream.rows() != s.rows() || upstream.cols() != s.cols()) {
        throw InvalidArgument("atanh_grad_input: upstream shape mismatch");
    }
    DenseMatrix grad(s.rows(), s.cols());
    for (std::size_t r = 0; r < s.rows(); ++r) {
        const double* srow = s.data() + r * s.cols();
        const double* urow = upstream.data() + r * s.cols();
        double* grow = grad.data() + r * s.cols();
        for (std::size_t i = 0; i < s.cols(); ++i) {
            const double t = std::tanh(layer.alpha[i] * srow[i]);
            grow[i] = urow[i] * layer.alpha[i] * (1.0 - t) * (1.0 + t);
        }
    }
    return grad;
}

std::vector<double> atanh_grad_alpha(const ATanhLayer& layer, const DenseMatrix& s,
                                     const DenseMatrix& upstream) {
    check_shape(layer, s);
    if (upstream.rows() != s.rows() || upstream.cols() != s.cols()) {
        throw InvalidArgument("atanh_grad_alpha: upstream shape mismatch");
    }
    if (s.rows() == 0) throw InvalidArgument("atanh_grad_alpha: empty batch");

    const std::size_t bits = layer.bits();
    std::vector<double> grad(bits, 0.0);
    for (std::size_t r = 0; r < s.rows(); ++r) {
        const double* srow = s.data() + r * bits;
        const double* urow = upstream.data() + r * bits;
        for (std::size_t i = 0; i < bits; ++i) {
            const double t = std::tanh(layer.alpha[i] * srow[i]);
            grad[i] += urow[i] * (1.0 - t) * (1.0 + t) * srow[i];
        }
    }
    const double inv_batch = 1.0 / static_cast<double>(s.rows());
    for (std::size_t i = 0; i < bits; ++i) {
        const double a = layer.alpha[i];
        grad[i] = grad[i] * inv_batch - 2.0 * layer.lambda / (a * a * a);
    }
    return grad;
}

double atanh_reg_loss(const ATanhLayer& layer) {
    double sum = 0.0;
    for (double a : layer.alpha) sum += 1.0 / (a * a);
    return layer.lambda * sum;
}

DenseMatrix binarize(const DenseMatrix& a) {
    DenseMatrix codes(a.rows(), a.cols());
    const double* src = a.data();
    double* dst = codes.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        dst[i] = (src[i] < 0.0) ? -1.0 : 1.0;
    }
    return codes;
}

void clamp_alpha(ATanhLayer& layer) {
    for (double& a : layer.alpha) a = std::max(a, layer.alpha_min);
}

}  // namespace dbrc
