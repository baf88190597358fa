#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dbrc/atanh.hpp"
#include "dbrc/codes.hpp"
#include "dbrc/dataset.hpp"
#include "dbrc/layer.hpp"
#include "dbrc/matrix.hpp"
#include "dbrc/rng.hpp"

namespace dbrc {

enum class Variant { DBRC, DBRC_N, DBRC_C, TWO_STAGE };

enum class ForwardMode { Joint, XOnly, YOnly };

struct DbrcConfig {
    std::size_t dim_x = 0;
    std::size_t dim_y = 0;
    std::vector<std::size_t> encoder_dims = {128, 512};
    std::size_t bits = 32;
    double lambda = 0.001;
    std::size_t epochs = 300;
    std::size_t finetune_epochs = 150;
    std::size_t batch_size = 64;
    double learning_rate = 1e-3;
    double alpha_learning_rate = 0.0;     // 0 means: use learning_rate
    double finetune_learning_rate = 0.0;  // 0 means: use learning_rate
    double rms_decay = 0.9;
    double rms_epsilon = 1e-8;
    double alpha_min = 1e-3;
    std::uint64_t seed = 1;
    Variant variant = Variant::DBRC;
};

// Two-pathway reconstruction network with a shared binary hashing layer:
// modality encoders (ReLU stacks), bilinear joint fusion into the code
// pre-activation, adaptive-tanh hashing, and per-modality decoders that
// reconstruct both inputs from the shared activation.
struct DbrcModel {
    DbrcConfig config;

    // Per-dimension input standardization, fitted on the training split.
    // normalized = (value - mean) * scale. Identity until train() runs.
    std::vector<double> norm_x_mean, norm_x_scale;
    std::vector<double> norm_y_mean, norm_y_scale;

    std::vector<DenseLayer> enc_x, enc_y;  // n -> encoder_dims..., ReLU
    DenseMatrix joint_wx, joint_wy;        // top encoder width x bits
    std::vector<double> joint_bias;        // bits
    std::vector<DenseLayer> dec_x, dec_y;  // bits -> reversed dims -> n
    ATanhLayer hash;                       // serialized last
};

DbrcModel build_model(const DbrcConfig& config, Rng& rng);

struct ForwardResult {
    DenseMatrix s;        // joint pre-activation, batch x bits
    DenseMatrix a;        // atanh activations, strictly inside (-1, 1)
    DenseMatrix recon_x;  // batch x dim_x, in standardized units
    DenseMatrix recon_y;

    // Caches for the backward pass.
    DenseMatrix x_in, y_in;          // network inputs (standardized, zeroed per mode)
    DenseMatrix x_target, y_target;  // standardized reconstruction targets
    std::vector<DenseForward> enc_x_fwd, enc_y_fwd, dec_x_fwd, dec_y_fwd;
};

// Runs the network on a batch. XOnly/YOnly replace the absent modality's
// network input with zeros and never read its feature values; the absent
// matrix may be empty. Both reconstructions are produced in every mode.
ForwardResult forward_pass(const DbrcModel& model, const DenseMatrix& x, const DenseMatrix& y,
                           ForwardMode mode);

struct LossBreakdown {
    double recon_x = 0.0;  // MSE over entries, standardized units
    double recon_y = 0.0;
    double reg = 0.0;      // lambda * sum_i alpha_i^-2
    double total = 0.0;
};

// MSE(recon_x, x) + MSE(recon_y, y) + regularizer; x and y are raw features,
// standardized internally to match the reconstruction units.
LossBreakdown total_loss(const DbrcModel& model, const DenseMatrix& x, const DenseMatrix& y,
                         const DenseMatrix& recon_x, const DenseMatrix& recon_y);

// Same loss evaluated from cached targets.
LossBreakdown loss_from_forward(const DbrcModel& model, const ForwardResult& fwd);

struct LayerGrads {
    DenseMatrix weights;
    std::vector<double> bias;
};

struct ModelGradients {
    std::vector<LayerGrads> enc_x, enc_y, dec_x, dec_y;
    DenseMatrix joint_wx, joint_wy;
    std::vector<double> joint_bias;
    std::vector<double> alpha;
};

// Exact gradients of the total loss for the batch behind `fwd`.
ModelGradients backward_pass(const DbrcModel& model, const ForwardResult& fwd);

// Flat views over every weight/bias tensor, in a fixed order shared between
// the two functions. The alpha vector is handled separately.
std::vector<std::span<double>> parameter_views(DbrcModel& model);
std::vector<std::span<double>> gradient_views(ModelGradients& grads);

struct EpochStats {
    std::size_t epoch = 0;
    double total_loss = 0.0;
    double recon_x_loss = 0.0;
    double recon_y_loss = 0.0;
    double reg_loss = 0.0;            // after the epoch's updates
    double mean_alpha = 0.0;          // after the epoch's updates
    double saturated_fraction = 0.0;  // share of activations with |a| > 0.9
};

struct TrainReport {
    std::vector<EpochStats> epochs;
};

struct TrainResult {
    DbrcModel model;
    TrainReport report;
};

// Joint minibatch RMSprop training. Fits the input standardizer from the
// dataset, then optimizes all weights; alpha follows the variant rule
// (gradient-trained for DBRC/DBRC_N, stepped through the doubling schedule
// for DBRC_C, frozen at 1 for TWO_STAGE). Deterministic given config.seed.
TrainResult train(const DbrcModel& init, const MultimodalDataset& data);

// Copy of a jointly trained model adapted to single-modality queries:
// training continues in XOnly/YOnly mode, still reconstructing both
// modalities. The input model is not modified.
DbrcModel finetune_unimodal(const DbrcModel& trained, const MultimodalDataset& data,
                            ForwardMode mode, TrainReport* report = nullptr);

// Forward in the given mode, binarize the hashing activations, bit-pack.
CodeSet encode_codes(const DbrcModel& model, const DenseMatrix& x, const DenseMatrix& y,
                     ForwardMode mode);

// Checkpoint: magic "DBRC", format version, config echo, standardizer, then
// every parameter tensor as little-endian doubles in declaration order with
// the alpha vector last. Round-trips bitwise.
void save_model(const std::filesystem::path& path, const DbrcModel& model);
DbrcModel load_model(const std::filesystem::path& path);

}  // namespace dbrc
