#pragma once

#include <vector>

#include "dbrc/matrix.hpp"
#include "dbrc/rng.hpp"

namespace dbrc {

enum class Activation { ReLU, Identity };

// Affine layer with a fixed activation. Forward/backward are free functions
// over const layers; activations and gradients travel in explicit caches.
struct DenseLayer {
    DenseMatrix weights;        // in_dim x out_dim
    std::vector<double> bias;   // out_dim
    Activation activation = Activation::Identity;

    std::size_t in_dim() const { return weights.rows(); }
    std::size_t out_dim() const { return weights.cols(); }
};

// Glorot-uniform weight matrix: entries uniform in [-L, L], L = sqrt(6/(in+out)).
DenseMatrix glorot_init(std::size_t in_dim, std::size_t out_dim, Rng& rng);

// Glorot weights, zero bias.
DenseLayer make_dense_layer(std::size_t in_dim, std::size_t out_dim, Activation act, Rng& rng);

struct DenseForward {
    DenseMatrix pre_activation;  // input * W + bias
    DenseMatrix output;          // activation(pre_activation)
};

DenseForward dense_forward(const DenseLayer& layer, const DenseMatrix& input);

struct DenseGrads {
    DenseMatrix grad_input;
    DenseMatrix grad_weights;
    std::vector<double> grad_bias;
};

// Gradients of the layer output contracted with `upstream`. `input` and
// `pre_activation` are the tensors from the matching forward call.
// ReLU subgradient at exactly 0 is taken as 0.
DenseGrads dense_backward(const DenseLayer& layer, const DenseMatrix& input,
                          const DenseMatrix& pre_activation, const DenseMatrix& upstream);

}  // namespace dbrc
