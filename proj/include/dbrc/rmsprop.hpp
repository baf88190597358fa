#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dbrc/common.hpp"

namespace dbrc {

// RMSprop state for one parameter tensor. The accumulator tracks a decayed
// mean of squared gradients and stays nonnegative under any update sequence.
struct RmsPropState {
    std::vector<double> mean_square;
    double decay = 0.9;
    double epsilon = 1e-8;
    double learning_rate = 1e-3;
};

RmsPropState make_rmsprop_state(std::size_t n, double decay = 0.9, double epsilon = 1e-8,
                                double learning_rate = 1e-3);

// v <- decay*v + (1-decay)*g^2; p <- p - lr*g/(sqrt(v)+epsilon), elementwise.
// Throws NumericalError on non-finite gradients.
void rmsprop_update(std::span<double> params, std::span<const double> grads, RmsPropState& state);

}  // namespace dbrc
