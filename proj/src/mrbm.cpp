#include "dbrc/mrbm.hpp"

#include <cmath>

namespace dbrc {

namespace {

constexpr std::size_t kMaxTotalUnits = 18;

void check_capacity(const MrbmParams& params) {
    if (params.dim_x() + params.dim_y() + params.dim_h() > kMaxTotalUnits) {
        throw CapacityError("mrbm: dim_x + dim_y + dim_h exceeds enumeration bound");
    }
    if (params.dim_x() == 0 || params.dim_y() == 0 || params.dim_h() == 0) {
        throw InvalidArgument("mrbm: all unit groups must be nonempty");
    }
    if (params.w_x.rows() != params.dim_x() || params.w_x.cols() != params.dim_h() ||
        params.w_y.rows() != params.dim_y() || params.w_y.cols() != params.dim_h()) {
        throw InvalidArgument("mrbm: weight shapes inconsistent with biases");
    }
}

void check_binary(std::span<const double> v) {
    for (double e : v) {
        if (e != 0.0 && e != 1.0) throw InvalidArgument("mrbm: units must be 0 or 1");
    }
}

std::vector<double> bits_to_vector(std::size_t bits, std::size_t dim) {
    std::vector<double> v(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        if (bits & (std::size_t{1} << k)) v[k] = 1.0;
    }
    return v;
}

double entropy(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

// The decomposition with a caller-supplied (a, b) ordering: idx(a_bits, b_bits)
// maps the conditioning variable a and conditioned variable b to a pmf index.
template <typename IndexFn>
DecompositionParts decomposition_impl(const DataPmf& data, const DataPmf& model,
                                      std::size_t dim_a, std::size_t dim_b, IndexFn idx) {
    const std::size_t na = std::size_t{1} << dim_a;
    const std::size_t nb = std::size_t{1} << dim_b;

    DecompositionParts parts;
    for (std::size_t a = 0; a < na; ++a) {
        double pd_a = 0.0, pm_a = 0.0;
        for (std::size_t b = 0; b < nb; ++b) {
            pd_a += data.p[idx(a, b)];
            pm_a += model.p[idx(a, b)];
        }
        if (pd_a == 0.0) continue;  // conditional undefined off the data support
        if (pm_a == 0.0) throw NumericalError("decomposition: model marginal vanished");

        parts.single_modal += pd_a * std::log(pd_a / pm_a);
        for (std::size_t b = 0; b < nb; ++b) {
            const double pd_ab = data.p[idx(a, b)];
            if (pd_ab == 0.0) continue;
            const double pm_ab = model.p[idx(a, b)];
            if (pm_ab == 0.0) throw NumericalError("decomposition: model joint vanished");
            const double pd_cond = pd_ab / pd_a;
            const double pm_cond = pm_ab / pm_a;
            parts.cross_modal += pd_a * pd_cond * std::log(pd_cond / pm_cond);
        }
    }
    parts.constant = entropy(data.p);
    return parts;
}

}  // namespace

MrbmParams random_mrbm(std::size_t dim_x, std::size_t dim_y, std::size_t dim_h, Rng& rng,
                       double scale) {
    MrbmParams params;
    params.w_x = DenseMatrix(dim_x, dim_h);
    params.w_y = DenseMatrix(dim_y, dim_h);
    for (double& v : params.w_x.values()) v = rng.uniform(-scale, scale);
    for (double& v : params.w_y.values()) v = rng.uniform(-scale, scale);
    params.b_x.resize(dim_x);
    params.b_y.resize(dim_y);
    params.b_h.resize(dim_h);
    for (double& v : params.b_x) v = rng.uniform(-scale, scale);
    for (double& v : params.b_y) v = rng.uniform(-scale, scale);
    for (double& v : params.b_h) v = rng.uniform(-scale, scale);
    return params;
}

DataPmf random_data_pmf(std::size_t dim_x, std::size_t dim_y, Rng& rng) {
    DataPmf pmf;
    pmf.dim_x = dim_x;
    pmf.dim_y = dim_y;
    pmf.p.resize(std::size_t{1} << (dim_x + dim_y));
    double total = 0.0;
    for (double& v : pmf.p) {
        v = rng.uniform();
        total += v;
    }
    for (double& v : pmf.p) v /= total;
    return pmf;
}

double energy(const MrbmParams& params, std::span<const double> x, std::span<const double> y,
              std::span<const double> h) {
    if (x.size() != params.dim_x() || y.size() != params.dim_y() || h.size() != params.dim_h()) {
        throw InvalidArgument("energy: unit vector dimensions mismatch");
    }
    check_binary(x);
    check_binary(y);
    check_binary(h);

    double e = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < h.size(); ++j) e -= params.w_x(i, j) * h[j];
        e -= params.b_x[i];
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) continue;
        for (std::size_t j = 0; j < h.size(); ++j) e -= params.w_y(i, j) * h[j];
        e -= params.b_y[i];
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (h[j] != 0.0) e -= params.b_h[j];
    }
    return e;
}

MrbmJoint exact_joint(const MrbmParams& params) {
    check_capacity(params);
    MrbmJoint joint;
    joint.dim_x = params.dim_x();
    joint.dim_y = params.dim_y();
    joint.dim_h = params.dim_h();

    const std::size_t nx = std::size_t{1} << joint.dim_x;
    const std::size_t ny = std::size_t{1} << joint.dim_y;
    const std::size_t nh = std::size_t{1} << joint.dim_h;
    joint.p.resize(nx * ny * nh);

    double z = 0.0;
    for (std::size_t xb = 0; xb < nx; ++xb) {
        const auto x = bits_to_vector(xb, joint.dim_x);
        for (std::size_t yb = 0; yb < ny; ++yb) {
            const auto y = bits_to_vector(yb, joint.dim_y);
            for (std::size_t hb = 0; hb < nh; ++hb) {
                const auto h = bits_to_vector(hb, joint.dim_h);
                const double w = std::exp(-energy(params, x, y, h));
                joint.p[joint.index(xb, yb, hb)] = w;
                z += w;
            }
        }
    }
    for (double& v : joint.p) v /= z;
    return joint;
}

DataPmf marginal_xy(const MrbmParams& params) {
    const MrbmJoint joint = exact_joint(params);
    DataPmf pmf;
    pmf.dim_x = joint.dim_x;
    pmf.dim_y = joint.dim_y;
    pmf.p.assign(std::size_t{1} << (joint.dim_x + joint.dim_y), 0.0);

    const std::size_t nh = std::size_t{1} << joint.dim_h;
    for (std::size_t xy = 0; xy < pmf.p.size(); ++xy) {
        double sum = 0.0;
        for (std::size_t hb = 0; hb < nh; ++hb) sum += joint.p[(xy << joint.dim_h) | hb];
        pmf.p[xy] = sum;
    }
    return pmf;
}

double nll(const MrbmParams& params, const DataPmf& data) {
    if (data.dim_x != params.dim_x() || data.dim_y != params.dim_y()) {
        throw InvalidArgument("nll: data pmf dimensions mismatch");
    }
    const DataPmf model = marginal_xy(params);
    double result = 0.0;
    for (std::size_t i = 0; i < data.p.size(); ++i) {
        if (data.p[i] == 0.0) continue;
        if (model.p[i] == 0.0) throw NumericalError("nll: model probability vanished on support");
        result -= data.p[i] * std::log(model.p[i]);
    }
    return result;
}

DecompositionParts decomposition_parts(const MrbmParams& params, const DataPmf& data) {
    if (data.dim_x != params.dim_x() || data.dim_y != params.dim_y()) {
        throw InvalidArgument("decomposition: data pmf dimensions mismatch");
    }
    const DataPmf model = marginal_xy(params);
    const std::size_t dim_y = data.dim_y;
    return decomposition_impl(data, model, data.dim_x, dim_y,
                              [dim_y](std::size_t xb, std::size_t yb) {
                                  return (xb << dim_y) | yb;
                              });
}

DecompositionParts decomposition_parts_swapped(const MrbmParams& params, const DataPmf& data) {
    if (data.dim_x != params.dim_x() || data.dim_y != params.dim_y()) {
        throw InvalidArgument("decomposition: data pmf dimensions mismatch");
    }
    const DataPmf model = marginal_xy(params);
    const std::size_t dim_y = data.dim_y;
    return decomposition_impl(data, model, dim_y, data.dim_x,
                              [dim_y](std::size_t yb, std::size_t xb) {
                                  return (xb << dim_y) | yb;
                              });
}

double decomposition_rhs(const MrbmParams& params, const DataPmf& data) {
    return decomposition_parts(params, data).total();
}

double decomposition_rhs_swapped(const MrbmParams& params, const DataPmf& data) {
    return decomposition_parts_swapped(params, data).total();
}

}  // namespace dbrc
