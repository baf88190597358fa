#include "dbrc/layer.hpp"

#include <cmath>

namespace dbrc {

DenseMatrix glorot_init(std::size_t in_dim, std::size_t out_dim, Rng& rng) {
    if (in_dim == 0 || out_dim == 0) {
        throw InvalidArgument("glorot_init: dimensions must be >= 1");
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    DenseMatrix w(in_dim, out_dim);
    for (double& v : w.values()) v = rng.uniform(-limit, limit);
    return w;
}

DenseLayer make_dense_layer(std::size_t in_dim, std::size_t out_dim, Activation act, Rng& rng) {
    DenseLayer layer;
    layer.weights = glorot_init(in_dim, out_dim, rng);
    layer.bias.assign(out_dim, 0.0);
    layer.activation = act;
    return layer;
}

DenseForward dense_forward(const DenseLayer& layer, const DenseMatrix& input) {
    if (input.cols() != layer.in_dim()) {
        throw InvalidArgument("dense_forward: input cols != layer in_dim");
    }
    DenseForward fwd;
    fwd.pre_activation = matmul(input, layer.weights);
    add_row_broadcast(fwd.pre_activation, layer.bias);
    fwd.output = fwd.pre_activation;
    if (layer.activation == Activation::ReLU) {
        for (double& v : fwd.output.values()) {
            if (v < 0.0) v = 0.0;
        }
    }
    return fwd;
}

DenseGrads dense_backward(const DenseLayer& layer, const DenseMatrix& input,
                          const DenseMatrix& pre_activation, const DenseMatrix& upstream) {
    if (input.rows() != upstream.rows() || input.cols() != layer.in_dim() ||
        upstream.cols() != layer.out_dim() ||
        pre_activation.rows() != upstream.rows() ||
        pre_activation.cols() != upstream.cols()) {
        throw InvalidArgument("dense_backward: shape mismatch");
    }

    // delta = upstream through the activation; ReLU gate is pre > 0.
    DenseMatrix delta = upstream;
    if (layer.activation == Activation::ReLU) {
        double* d = delta.data();
        const double* p = pre_activation.data();
        for (std::size_t i = 0; i < delta.size(); ++i) {
            if (p[i] <= 0.0) d[i] = 0.0;
        }
    }

    DenseGrads grads;
    grads.grad_weights = matmul_at_b(input, delta);
    grads.grad_bias = column_sums(delta);
    grads.grad_input = matmul_a_bt(delta, layer.weights);
    return grads;
}

}  // namespace dbrc
