#pragma once

#include <vector>

#include "dbrc/matrix.hpp"

namespace dbrc {

// Adaptive tanh hashing activation: a_i = tanh(alpha_i * s_i) with one
// learnable scale per code bit. As alpha_i grows the unit approaches the
// sign function; the regularizer lambda*sum(alpha_i^-2) added to the
// training loss pushes alpha upward so activations settle near +/-1.
struct ATanhLayer {
    std::vector<double> alpha;  // one scale per bit, initialized to 1
    double lambda = 0.001;
    double alpha_min = 1e-3;

    std::size_t bits() const { return alpha.size(); }
};

ATanhLayer make_atanh_layer(std::size_t bits, double lambda, double alpha_min = 1e-3);

// tanh(alpha_i * s_{bi}) columnwise; outputs stay strictly inside (-1, 1).
DenseMatrix atanh_forward(const ATanhLayer& layer, const DenseMatrix& s);

// upstream (.) alpha_i * (1 - tanh^2(alpha_i * s_{bi})), the chain-rule
// factor w.r.t. the pre-activation.
DenseMatrix atanh_grad_input(const ATanhLayer& layer, const DenseMatrix& s,
                             const DenseMatrix& upstream);

// Per-bit scale gradient: batch mean of upstream*(1 - tanh^2(alpha*s))*s,
// plus the regularizer term -2*lambda*alpha^-3 once per bit. `upstream`
// rows are per-sample objective gradients w.r.t. the activation.
std::vector<double> atanh_grad_alpha(const ATanhLayer& layer, const DenseMatrix& s,
                                     const DenseMatrix& upstream);

// lambda * sum_i alpha_i^-2, the loss term that controls the scale magnitudes.
double atanh_reg_loss(const ATanhLayer& layer);

// Elementwise sign with sign(0) := +1; output entries are exactly +/-1.
DenseMatrix binarize(const DenseMatrix& a);

// Floors every alpha_i at alpha_min; call after each optimizer step.
void clamp_alpha(ATanhLayer& layer);

}  // namespace dbrc
