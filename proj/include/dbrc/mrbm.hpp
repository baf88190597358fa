#pragma once

#include <span>
#include <vector>

#include "dbrc/matrix.hpp"
#include "dbrc/rng.hpp"

namespace dbrc {

// Tiny multimodal RBM over binary units in {0,1}: two visible groups x, y
// coupled to one shared hidden group h. Small enough for exact enumeration
// of the partition function, which lets the maximum-likelihood objective be
// checked against its KL decomposition numerically.
struct MrbmParams {
    DenseMatrix w_x;            // dim_x x dim_h
    DenseMatrix w_y;            // dim_y x dim_h
    std::vector<double> b_x;
    std::vector<double> b_y;
    std::vector<double> b_h;

    std::size_t dim_x() const { return b_x.size(); }
    std::size_t dim_y() const { return b_y.size(); }
    std::size_t dim_h() const { return b_h.size(); }
};

// Explicit data distribution over all (x, y) binary configurations.
// Index layout: (x_bits << dim_y) | y_bits, with bit k of x_bits = x[k].
struct DataPmf {
    std::size_t dim_x = 0;
    std::size_t dim_y = 0;
    std::vector<double> p;  // size 2^(dim_x + dim_y)

    std::size_t index(std::size_t x_bits, std::size_t y_bits) const {
        return (x_bits << dim_y) | y_bits;
    }
};

// Exact joint over (x, y, h); same bit-packed layout, x-major.
struct MrbmJoint {
    std::size_t dim_x = 0, dim_y = 0, dim_h = 0;
    std::vector<double> p;  // size 2^(dim_x + dim_y + dim_h)

    std::size_t index(std::size_t x_bits, std::size_t y_bits, std::size_t h_bits) const {
        return (((x_bits << dim_y) | y_bits) << dim_h) | h_bits;
    }
};

MrbmParams random_mrbm(std::size_t dim_x, std::size_t dim_y, std::size_t dim_h, Rng& rng,
                       double scale = 1.0);
DataPmf random_data_pmf(std::size_t dim_x, std::size_t dim_y, Rng& rng);

// -x'W_x h - y'W_y h - x'b_x - y'b_y - h'b_h. Entries must be 0 or 1.
double energy(const MrbmParams& params, std::span<const double> x, std::span<const double> y,
              std::span<const double> h);

// exp(-E)/Z over every configuration; throws CapacityError when the total
// unit count exceeds the enumeration bound (18).
MrbmJoint exact_joint(const MrbmParams& params);

// Joint with h summed out.
DataPmf marginal_xy(const MrbmParams& params);

// -sum_{x,y} P_D(x,y) log P_theta(x,y).
double nll(const MrbmParams& params, const DataPmf& data);

struct DecompositionParts {
    double cross_modal = 0.0;   // E_{P_D(a)}[KL(P_D(b|a) || P_theta(b|a))]
    double single_modal = 0.0;  // KL(P_D(a) || P_theta(a))
    double constant = 0.0;      // joint entropy of the data distribution

    double total() const { return cross_modal + single_modal + constant; }
};

// Splits the likelihood objective into its cross-modal conditional KL, the
// single-modality KL, and the theta-independent constant. a = x, b = y for
// the plain form; swapped conditions on y instead.
DecompositionParts decomposition_parts(const MrbmParams& params, const DataPmf& data);
DecompositionParts decomposition_parts_swapped(const MrbmParams& params, const DataPmf& data);

// E_{P_D(x)}[KL(P_D(y|x) || P_theta(y|x))] + KL(P_D(x) || P_theta(x)) + H_D(x,y).
// Equals nll(params, data) exactly; the constant is the data joint entropy.
double decomposition_rhs(const MrbmParams& params, const DataPmf& data);

// Same identity with the roles of x and y swapped.
double decomposition_rhs_swapped(const MrbmParams& params, const DataPmf& data);

}  // namespace dbrc
