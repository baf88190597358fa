#include "dbrc/rmsprop.hpp"

#include <cmath>

namespace dbrc {

RmsPropState make_rmsprop_state(std::size_t n, double decay, double epsilon,
                                double learning_rate) {
    if (decay <= 0.0 || decay >= 1.0) throw InvalidArgument("rmsprop: decay must be in (0,1)");
    if (epsilon <= 0.0) throw InvalidArgument("rmsprop: epsilon must be positive");
    if (learning_rate <= 0.0) throw InvalidArgument("rmsprop: learning rate must be positive");
    RmsPropState state;
    state.mean_square.assign(n, 0.0);
    state.decay = decay;
    state.epsilon = epsilon;
    state.learning_rate = learning_rate;
    return state;
}

void rmsprop_update(std::span<double> params, std::span<const double> grads,
                    RmsPropState& state) {
    if (params.size() != grads.size() || params.size() != state.mean_square.size()) {
        throw InvalidArgument("rmsprop_update: shape mismatch");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        if (!std::isfinite(g)) throw NumericalError("rmsprop_update: non-finite gradient");
        double& v = state.mean_square[i];
        v = state.decay * v + (1.0 - state.decay) * g * g;
        params[i] -= state.learning_rate * g / (std::sqrt(v) + state.epsilon);
    }
}

}  // namespace dbrc
