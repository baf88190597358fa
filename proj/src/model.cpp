#include "dbrc/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <string_view>

#include "dbrc/io_util.hpp"
#include "dbrc/rmsprop.hpp"

namespace dbrc {

namespace {

void validate_config(const DbrcConfig& config) {
    if (config.dim_x == 0 || config.dim_y == 0) {
        throw InvalidArgument("config: feature dimensions must be >= 1");
    }
    if (config.bits == 0) throw InvalidArgument("config: bits must be >= 1");
    if (config.encoder_dims.empty()) throw InvalidArgument("config: encoder_dims empty");
    for (std::size_t d : config.encoder_dims) {
        if (d == 0) throw InvalidArgument("config: encoder dims must be >= 1");
    }
    if (config.batch_size == 0) throw InvalidArgument("config: batch_size must be >= 1");
    if (config.lambda < 0.0) throw InvalidArgument("config: lambda must be nonnegative");
    if (config.learning_rate <= 0.0) throw InvalidArgument("config: learning rate must be positive");
    if (config.alpha_learning_rate < 0.0 || config.finetune_learning_rate < 0.0) {
        throw InvalidArgument("config: per-phase learning rates must be nonnegative");
    }
    if (config.rms_decay <= 0.0 || config.rms_decay >= 1.0) {
        throw InvalidArgument("config: rms_decay must be in (0,1)");
    }
    if (config.alpha_min <= 0.0) throw InvalidArgument("config: alpha_min must be positive");
}

std::vector<DenseLayer> make_encoder(std::size_t input_dim,
                                     const std::vector<std::size_t>& dims, Rng& rng) {
    std::vector<DenseLayer> stack;
    std::size_t in = input_dim;
    for (std::size_t out : dims) {
        stack.push_back(make_dense_layer(in, out, Activation::ReLU, rng));
        in = out;
    }
    return stack;
}

std::vector<DenseLayer> make_decoder(std::size_t bits, const std::vector<std::size_t>& dims,
                                     std::size_t output_dim, Rng& rng) {
    std::vector<DenseLayer> stack;
    std::size_t in = bits;
    for (std::size_t k = dims.size(); k-- > 0;) {
        stack.push_back(make_dense_layer(in, dims[k], Activation::ReLU, rng));
        in = dims[k];
    }
    stack.push_back(make_dense_layer(in, output_dim, Activation::Identity, rng));
    return stack;
}

void fit_standardizer(const DenseMatrix& m, std::vector<double>& mean,
                      std::vector<double>& scale) {
    const std::size_t n = m.rows();
    mean.assign(m.cols(), 0.0);
    scale.assign(m.cols(), 1.0);
    if (n == 0) return;
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = m.data() + r * m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) mean[c] += row[c];
    }
    for (double& v : mean) v /= static_cast<double>(n);
    std::vector<double> var(m.cols(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = m.data() + r * m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double d = row[c] - mean[c];
            var[c] += d * d;
        }
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const double sd = std::sqrt(var[c] / static_cast<double>(n));
        scale[c] = sd > 1e-12 ? 1.0 / sd : 1.0;
    }
}

DenseMatrix standardize(const DenseMatrix& m, std::span<const double> mean,
                        std::span<const double> scale) {
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* src = m.data() + r * m.cols();
        double* dst = out.data() + r * m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) dst[c] = (src[c] - mean[c]) * scale[c];
    }
    return out;
}

DenseMatrix run_stack(const std::vector<DenseLayer>& stack, const DenseMatrix& input,
                      std::vector<DenseForward>& caches) {
    caches.clear();
    caches.reserve(stack.size());
    const DenseMatrix* cur = &input;
    for (const DenseLayer& layer : stack) {
        caches.push_back(dense_forward(layer, *cur));
        cur = &caches.back().output;
    }
    return *cur;
}

// Backpropagates `upstream` through a stack; fills per-layer grads and
// returns the gradient w.r.t. the stack input.
DenseMatrix stack_backward(const std::vector<DenseLayer>& stack, const DenseMatrix& stack_input,
                           const std::vector<DenseForward>& fwds, DenseMatrix upstream,
                           std::vector<LayerGrads>& out_grads) {
    out_grads.resize(stack.size());
    for (std::size_t k = stack.size(); k-- > 0;) {
        const DenseMatrix& input = (k == 0) ? stack_input : fwds[k - 1].output;
        DenseGrads g = dense_backward(stack[k], input, fwds[k].pre_activation, upstream);
        out_grads[k].weights = std::move(g.grad_weights);
        out_grads[k].bias = std::move(g.grad_bias);
        upstream = std::move(g.grad_input);
    }
    return upstream;
}

double mse(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("mse: shape mismatch");
    }
    double sum = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = pa[i] - pb[i];
        sum += d * d;
    }
    return a.size() ? sum / static_cast<double>(a.size()) : 0.0;
}

// DBRC_C steps alpha through 1, 2, 4, ..., 1024, one stage per epochs/11.
double dbrc_c_alpha(std::size_t epoch, std::size_t total_epochs) {
    constexpr std::size_t kStages = 11;
    std::size_t stage = kStages - 1;
    if (total_epochs > 0) {
        stage = std::min<std::size_t>(kStages - 1, epoch * kStages / total_epochs);
    }
    return static_cast<double>(std::size_t{1} << stage);
}

enum class AlphaPolicy { Gradient, Schedule, Frozen };

AlphaPolicy alpha_policy(Variant variant, bool finetuning) {
    switch (variant) {
        case Variant::DBRC:
        case Variant::DBRC_N:
            return AlphaPolicy::Gradient;
        case Variant::DBRC_C:
            // The doubling schedule runs once, over joint training; a model
            // being finetuned keeps the final (sign-like) scale.
            return finetuning ? AlphaPolicy::Frozen : AlphaPolicy::Schedule;
        case Variant::TWO_STAGE:
            return AlphaPolicy::Frozen;
    }
    throw InvalidArgument("unknown variant");
}

void train_loop(DbrcModel& model, const MultimodalDataset& data, ForwardMode mode,
                std::size_t epochs, double learning_rate, AlphaPolicy policy,
                std::uint64_t shuffle_stream, TrainReport& report) {
    if (data.size() == 0) throw InvalidArgument("train: empty dataset");
    if (data.x.cols() != model.config.dim_x || data.y.cols() != model.config.dim_y) {
        throw InvalidArgument("train: dataset dims do not match config");
    }

    const DbrcConfig& cfg = model.config;
    Rng shuffle_rng(derive_seed(cfg.seed, shuffle_stream));

    auto views = parameter_views(model);
    std::vector<RmsPropState> states;
    states.reserve(views.size());
    for (const auto& v : views) {
        states.push_back(
            make_rmsprop_state(v.size(), cfg.rms_decay, cfg.rms_epsilon, learning_rate));
    }
    const double alpha_lr =
        cfg.alpha_learning_rate > 0.0 ? cfg.alpha_learning_rate : learning_rate;
    RmsPropState alpha_state =
        make_rmsprop_state(cfg.bits, cfg.rms_decay, cfg.rms_epsilon, alpha_lr);

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        if (policy == AlphaPolicy::Schedule) {
            std::fill(model.hash.alpha.begin(), model.hash.alpha.end(),
                      dbrc_c_alpha(epoch, epochs));
        }
        shuffle_rng.shuffle(order);

        double loss_sum = 0.0, rx_sum = 0.0, ry_sum = 0.0;
        std::size_t rows_seen = 0, saturated = 0, activations = 0;

        for (std::size_t pos = 0; pos < order.size(); pos += cfg.batch_size) {
            const std::size_t len = std::min(cfg.batch_size, order.size() - pos);
            const std::span<const std::size_t> idx(order.data() + pos, len);
            const DenseMatrix xb = gather_rows(data.x, idx);
            const DenseMatrix yb = gather_rows(data.y, idx);

            ForwardResult fwd = forward_pass(model, xb, yb, mode);
            const LossBreakdown loss = loss_from_forward(model, fwd);
            if (!std::isfinite(loss.total)) {
                throw NumericalError("train: non-finite loss at epoch " + std::to_string(epoch));
            }

            ModelGradients grads = backward_pass(model, fwd);
            auto grad_v = gradient_views(grads);
            for (std::size_t t = 0; t < views.size(); ++t) {
                rmsprop_update(views[t], grad_v[t], states[t]);
            }
            if (policy == AlphaPolicy::Gradient) {
                rmsprop_update(model.hash.alpha, grads.alpha, alpha_state);
                clamp_alpha(model.hash);
            }

            const double w = static_cast<double>(len);
            loss_sum += loss.total * w;
            rx_sum += loss.recon_x * w;
            ry_sum += loss.recon_y * w;
            rows_seen += len;
            for (double v : fwd.a.values()) {
                if (std::abs(v) > 0.9) ++saturated;
            }
            activations += fwd.a.size();
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.total_loss = loss_sum / static_cast<double>(rows_seen);
        stats.recon_x_loss = rx_sum / static_cast<double>(rows_seen);
        stats.recon_y_loss = ry_sum / static_cast<double>(rows_seen);
        stats.reg_loss = atanh_reg_loss(model.hash);
        stats.mean_alpha =
            std::accumulate(model.hash.alpha.begin(), model.hash.alpha.end(), 0.0) /
            static_cast<double>(model.hash.alpha.size());
        stats.saturated_fraction =
            activations ? static_cast<double>(saturated) / static_cast<double>(activations) : 0.0;
        report.epochs.push_back(stats);
    }
}

constexpr char kCheckpointMagic[4] = {'D', 'B', 'R', 'C'};
constexpr std::uint32_t kCheckpointVersion = 1;

void write_vector(std::ostream& out, std::span<const double> v) {
    write_u64_le(out, v.size());
    for (double e : v) write_f64_le(out, e);
}

std::vector<double> read_vector(std::istream& in) {
    const std::uint64_t n = read_u64_le(in);
    std::vector<double> v(n);
    for (double& e : v) e = read_f64_le(in);
    return v;
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
    write_u64_le(out, m.rows());
    write_u64_le(out, m.cols());
    for (double e : m.values()) write_f64_le(out, e);
}

DenseMatrix read_matrix_bin(std::istream& in) {
    const std::uint64_t rows = read_u64_le(in);
    const std::uint64_t cols = read_u64_le(in);
    DenseMatrix m(rows, cols);
    for (double& e : m.values()) e = read_f64_le(in);
    return m;
}

void write_stack(std::ostream& out, const std::vector<DenseLayer>& stack) {
    write_u32_le(out, static_cast<std::uint32_t>(stack.size()));
    for (const DenseLayer& layer : stack) {
        out.put(layer.activation == Activation::ReLU ? 1 : 0);
        write_matrix(out, layer.weights);
        write_vector(out, layer.bias);
    }
}

std::vector<DenseLayer> read_stack(std::istream& in) {
    const std::uint32_t count = read_u32_le(in);
    std::vector<DenseLayer> stack(count);
    for (DenseLayer& layer : stack) {
        const int act = in.get();
        if (act != 0 && act != 1) throw FormatError("checkpoint: bad activation tag");
        layer.activation = act == 1 ? Activation::ReLU : Activation::Identity;
        layer.weights = read_matrix_bin(in);
        layer.bias = read_vector(in);
    }
    return stack;
}

}  // namespace

DbrcModel build_model(const DbrcConfig& config, Rng& rng) {
    validate_config(config);
    DbrcModel model;
    model.config = config;
    if (config.variant == Variant::DBRC_N) model.config.lambda = 0.0;

    model.norm_x_mean.assign(config.dim_x, 0.0);
    model.norm_x_scale.assign(config.dim_x, 1.0);
    model.norm_y_mean.assign(config.dim_y, 0.0);
    model.norm_y_scale.assign(config.dim_y, 1.0);

    const std::size_t top = config.encoder_dims.back();
    model.enc_x = make_encoder(config.dim_x, config.encoder_dims, rng);
    model.enc_y = make_encoder(config.dim_y, config.encoder_dims, rng);
    model.joint_wx = glorot_init(top, config.bits, rng);
    model.joint_wy = glorot_init(top, config.bits, rng);
    model.joint_bias.assign(config.bits, 0.0);
    model.dec_x = make_decoder(config.bits, config.encoder_dims, config.dim_x, rng);
    model.dec_y = make_decoder(config.bits, config.encoder_dims, config.dim_y, rng);
    model.hash = make_atanh_layer(config.bits, model.config.lambda, config.alpha_min);
    return model;
}

ForwardResult forward_pass(const DbrcModel& model, const DenseMatrix& x, const DenseMatrix& y,
                           ForwardMode mode) {
    const DbrcConfig& cfg = model.config;
    const bool need_x = mode != ForwardMode::YOnly;
    const bool need_y = mode != ForwardMode::XOnly;

    if (need_x && x.empty()) throw InvalidArgument("forward_pass: x batch required");
    if (need_y && y.empty()) throw InvalidArgument("forward_pass: y batch required");
    if (!x.empty() && x.cols() != cfg.dim_x) {
        throw InvalidArgument("forward_pass: x batch has wrong width");
    }
    if (!y.empty() && y.cols() != cfg.dim_y) {
        throw InvalidArgument("forward_pass: y batch has wrong width");
    }
    if (!x.empty() && !y.empty() && x.rows() != y.rows()) {
        throw InvalidArgument("forward_pass: batch sizes differ");
    }
    const std::size_t batch = need_x ? x.rows() : y.rows();
    if (batch == 0) throw InvalidArgument("forward_pass: empty batch");

    ForwardResult fwd;
    fwd.x_target = x.empty() ? DenseMatrix(batch, cfg.dim_x)
                             : standardize(x, model.norm_x_mean, model.norm_x_scale);
    fwd.y_target = y.empty() ? DenseMatrix(batch, cfg.dim_y)
                             : standardize(y, model.norm_y_mean, model.norm_y_scale);
    fwd.x_in = mode == ForwardMode::YOnly ? DenseMatrix(batch, cfg.dim_x) : fwd.x_target;
    fwd.y_in = mode == ForwardMode::XOnly ? DenseMatrix(batch, cfg.dim_y) : fwd.y_target;

    const DenseMatrix hx = run_stack(model.enc_x, fwd.x_in, fwd.enc_x_fwd);
    const DenseMatrix hy = run_stack(model.enc_y, fwd.y_in, fwd.enc_y_fwd);

    fwd.s = matmul(hx, model.joint_wx);
    add_inplace(fwd.s, matmul(hy, model.joint_wy));
    add_row_broadcast(fwd.s, model.joint_bias);

    fwd.a = atanh_forward(model.hash, fwd.s);
    fwd.recon_x = run_stack(model.dec_x, fwd.a, fwd.dec_x_fwd);
    fwd.recon_y = run_stack(model.dec_y, fwd.a, fwd.dec_y_fwd);
    return fwd;
}

LossBreakdown total_loss(const DbrcModel& model, const DenseMatrix& x, const DenseMatrix& y,
                         const DenseMatrix& recon_x, const DenseMatrix& recon_y) {
    LossBreakdown loss;
    loss.recon_x = mse(recon_x, standardize(x, model.norm_x_mean, model.norm_x_scale));
    loss.recon_y = mse(recon_y, standardize(y, model.norm_y_mean, model.norm_y_scale));
    loss.reg = atanh_reg_loss(model.hash);
    loss.total = loss.recon_x + loss.recon_y + loss.reg;
    return loss;
}

LossBreakdown loss_from_forward(const DbrcModel& model, const ForwardResult& fwd) {
    LossBreakdown loss;
    loss.recon_x = mse(fwd.recon_x, fwd.x_target);
    loss.recon_y = mse(fwd.recon_y, fwd.y_target);
    loss.reg = atanh_reg_loss(model.hash);
    loss.total = loss.recon_x + loss.recon_y + loss.reg;
    return loss;
}

ModelGradients backward_pass(const DbrcModel& model, const ForwardResult& fwd) {
    const std::size_t batch = fwd.a.rows();
    if (batch == 0) throw InvalidArgument("backward_pass: empty forward result");

    ModelGradients grads;

    DenseMatrix g_recon_x = fwd.recon_x;
    sub_inplace(g_recon_x, fwd.x_target);
    scale_inplace(g_recon_x, 2.0 / static_cast<double>(g_recon_x.size()));
    DenseMatrix g_recon_y = fwd.recon_y;
    sub_inplace(g_recon_y, fwd.y_target);
    scale_inplace(g_recon_y, 2.0 / static_cast<double>(g_recon_y.size()));

    DenseMatrix ga = stack_backward(model.dec_x, fwd.a, fwd.dec_x_fwd, std::move(g_recon_x),
                                    grads.dec_x);
    add_inplace(ga, stack_backward(model.dec_y, fwd.a, fwd.dec_y_fwd, std::move(g_recon_y),
                                   grads.dec_y));

    DenseMatrix gs = atanh_grad_input(model.hash, fwd.s, ga);

    // atanh_grad_alpha takes a batch mean of per-sample upstream rows, while
    // ga already carries the 1/batch factor from the MSE means; scale it back
    // up so the mean reproduces the exact sum.
    scale_inplace(ga, static_cast<double>(batch));
    grads.alpha = atanh_grad_alpha(model.hash, fwd.s, ga);

    const DenseMatrix& hx = fwd.enc_x_fwd.back().output;
    const DenseMatrix& hy = fwd.enc_y_fwd.back().output;
    grads.joint_wx = matmul_at_b(hx, gs);
    grads.joint_wy = matmul_at_b(hy, gs);
    grads.joint_bias = column_sums(gs);

    stack_backward(model.enc_x, fwd.x_in, fwd.enc_x_fwd,
                   matmul_a_bt(gs, model.joint_wx), grads.enc_x);
    stack_backward(model.enc_y, fwd.y_in, fwd.enc_y_fwd,
                   matmul_a_bt(gs, model.joint_wy), grads.enc_y);
    return grads;
}

std::vector<std::span<double>> parameter_views(DbrcModel& model) {
    std::vector<std::span<double>> views;
    auto add_stack = [&views](std::vector<DenseLayer>& stack) {
        for (DenseLayer& layer : stack) {
            views.push_back(layer.weights.values());
            views.push_back(layer.bias);
        }
    };
    add_stack(model.enc_x);
    add_stack(model.enc_y);
    views.push_back(model.joint_wx.values());
    views.push_back(model.joint_wy.values());
    views.push_back(model.joint_bias);
    add_stack(model.dec_x);
    add_stack(model.dec_y);
    return views;
}

std::vector<std::span<double>> gradient_views(ModelGradients& grads) {
    std::vector<std::span<double>> views;
    auto add_stack = [&views](std::vector<LayerGrads>& stack) {
        for (LayerGrads& layer : stack) {
            views.push_back(layer.weights.values());
            views.push_back(layer.bias);
        }
    };
    add_stack(grads.enc_x);
    add_stack(grads.enc_y);
    views.push_back(grads.joint_wx.values());
    views.push_back(grads.joint_wy.values());
    views.push_back(grads.joint_bias);
    add_stack(grads.dec_x);
    add_stack(grads.dec_y);
    return views;
}

TrainResult train(const DbrcModel& init, const MultimodalDataset& data) {
    TrainResult result;
    result.model = init;
    fit_standardizer(data.x, result.model.norm_x_mean, result.model.norm_x_scale);
    fit_standardizer(data.y, result.model.norm_y_mean, result.model.norm_y_scale);

    const AlphaPolicy policy = alpha_policy(init.config.variant, /*finetuning=*/false);
    train_loop(result.model, data, ForwardMode::Joint, init.config.epochs,
               init.config.learning_rate, policy, /*shuffle_stream=*/10, result.report);
    return result;
}

DbrcModel finetune_unimodal(const DbrcModel& trained, const MultimodalDataset& data,
                            ForwardMode mode, TrainReport* report) {
    if (mode == ForwardMode::Joint) {
        throw InvalidArgument("finetune_unimodal: mode must be XOnly or YOnly");
    }
    DbrcModel model = trained;
    const AlphaPolicy policy = alpha_policy(trained.config.variant, /*finetuning=*/true);
    const double lr = model.config.finetune_learning_rate > 0.0
                          ? model.config.finetune_learning_rate
                          : model.config.learning_rate;
    TrainReport local;
    train_loop(model, data, mode, model.config.finetune_epochs, lr, policy,
               mode == ForwardMode::XOnly ? 11 : 12, report ? *report : local);
    return model;
}

CodeSet encode_codes(const DbrcModel& model, const DenseMatrix& x, const DenseMatrix& y,
                     ForwardMode mode) {
    if (mode != ForwardMode::YOnly && x.empty()) {
        throw InvalidArgument("encode_codes: x features required for this mode");
    }
    if (mode != ForwardMode::XOnly && y.empty()) {
        throw InvalidArgument("encode_codes: y features required for this mode");
    }
    const std::size_t n = mode == ForwardMode::YOnly ? y.rows() : x.rows();
    DenseMatrix signs(n, model.config.bits);

    constexpr std::size_t kChunk = 512;
    std::vector<std::size_t> idx;
    for (std::size_t pos = 0; pos < n; pos += kChunk) {
        const std::size_t len = std::min(kChunk, n - pos);
        idx.resize(len);
        std::iota(idx.begin(), idx.end(), pos);
        const DenseMatrix xb = x.empty() ? DenseMatrix() : gather_rows(x, idx);
        const DenseMatrix yb = y.empty() ? DenseMatrix() : gather_rows(y, idx);
        const ForwardResult fwd = forward_pass(model, xb, yb, mode);
        const DenseMatrix codes = binarize(fwd.a);
        for (std::size_t r = 0; r < len; ++r) {
            for (std::size_t c = 0; c < signs.cols(); ++c) {
                signs(pos + r, c) = codes(r, c);
            }
        }
    }
    return pack(signs);
}

void save_model(const std::filesystem::path& path, const DbrcModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_model: cannot open " + path.string());
    const DbrcConfig& cfg = model.config;

    out.write(kCheckpointMagic, 4);
    write_u32_le(out, kCheckpointVersion);
    write_u64_le(out, cfg.dim_x);
    write_u64_le(out, cfg.dim_y);
    write_u32_le(out, static_cast<std::uint32_t>(cfg.encoder_dims.size()));
    for (std::size_t d : cfg.encoder_dims) write_u64_le(out, d);
    write_u64_le(out, cfg.bits);
    write_f64_le(out, cfg.lambda);
    write_u64_le(out, cfg.epochs);
    write_u64_le(out, cfg.finetune_epochs);
    write_u64_le(out, cfg.batch_size);
    write_f64_le(out, cfg.learning_rate);
    write_f64_le(out, cfg.alpha_learning_rate);
    write_f64_le(out, cfg.finetune_learning_rate);
    write_f64_le(out, cfg.rms_decay);
    write_f64_le(out, cfg.rms_epsilon);
    write_f64_le(out, cfg.alpha_min);
    write_u64_le(out, cfg.seed);
    out.put(static_cast<char>(cfg.variant));

    write_vector(out, model.norm_x_mean);
    write_vector(out, model.norm_x_scale);
    write_vector(out, model.norm_y_mean);
    write_vector(out, model.norm_y_scale);

    write_stack(out, model.enc_x);
    write_stack(out, model.enc_y);
    write_matrix(out, model.joint_wx);
    write_matrix(out, model.joint_wy);
    write_vector(out, model.joint_bias);
    write_stack(out, model.dec_x);
    write_stack(out, model.dec_y);
    write_vector(out, model.hash.alpha);
    if (!out) throw FormatError("save_model: write failed for " + path.string());
}

DbrcModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_model: cannot open " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::string_view(magic, 4) != std::string_view(kCheckpointMagic, 4)) {
        throw FormatError("load_model: bad magic in " + path.string());
    }
    const std::uint32_t version = read_u32_le(in);
    if (version != kCheckpointVersion) {
        throw FormatError("load_model: unsupported version " + std::to_string(version));
    }

    DbrcModel model;
    DbrcConfig& cfg = model.config;
    cfg.dim_x = read_u64_le(in);
    cfg.dim_y = read_u64_le(in);
    cfg.encoder_dims.resize(read_u32_le(in));
    for (std::size_t& d : cfg.encoder_dims) d = read_u64_le(in);
    cfg.bits = read_u64_le(in);
    cfg.lambda = read_f64_le(in);
    cfg.epochs = read_u64_le(in);
    cfg.finetune_epochs = read_u64_le(in);
    cfg.batch_size = read_u64_le(in);
    cfg.learning_rate = read_f64_le(in);
    cfg.alpha_learning_rate = read_f64_le(in);
    cfg.finetune_learning_rate = read_f64_le(in);
    cfg.rms_decay = read_f64_le(in);
    cfg.rms_epsilon = read_f64_le(in);
    cfg.alpha_min = read_f64_le(in);
    cfg.seed = read_u64_le(in);
    const int variant = in.get();
    if (variant < 0 || variant > 3) throw FormatError("load_model: bad variant tag");
    cfg.variant = static_cast<Variant>(variant);

    model.norm_x_mean = read_vector(in);
    model.norm_x_scale = read_vector(in);
    model.norm_y_mean = read_vector(in);
    model.norm_y_scale = read_vector(in);

    model.enc_x = read_stack(in);
    model.enc_y = read_stack(in);
    model.joint_wx = read_matrix_bin(in);
    model.joint_wy = read_matrix_bin(in);
    model.joint_bias = read_vector(in);
    model.dec_x = read_stack(in);
    model.dec_y = read_stack(in);

    model.hash.lambda = cfg.lambda;
    model.hash.alpha_min = cfg.alpha_min;
    model.hash.alpha = read_vector(in);
    if (model.hash.alpha.size() != cfg.bits) {
        throw FormatError("load_model: alpha length does not match bits");
    }
    return model;
}

}  // namespace dbrc
