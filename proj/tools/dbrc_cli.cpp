// Command-line front end: synthetic data generation, DBRC training,
// code generation, retrieval evaluation, ATanh-variant ablations, and the
// MRBM likelihood-decomposition check.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbrc/dataset.hpp"
#include "dbrc/model.hpp"
#include "dbrc/mrbm.hpp"
#include "dbrc/retrieval.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

dbrc::Variant parse_variant(const std::string& name) {
    if (name == "dbrc") return dbrc::Variant::DBRC;
    if (name == "dbrc-n") return dbrc::Variant::DBRC_N;
    if (name == "dbrc-c") return dbrc::Variant::DBRC_C;
    if (name == "two-stage") return dbrc::Variant::TWO_STAGE;
    throw dbrc::InvalidArgument("unknown variant: " + name);
}

std::string variant_name(dbrc::Variant variant) {
    switch (variant) {
        case dbrc::Variant::DBRC: return "dbrc";
        case dbrc::Variant::DBRC_N: return "dbrc-n";
        case dbrc::Variant::DBRC_C: return "dbrc-c";
        case dbrc::Variant::TWO_STAGE: return "two-stage";
    }
    return "?";
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

void write_manifest(const fs::path& path, json manifest, const Stopwatch& watch) {
    manifest["artifact_version"] = kVersion;
    manifest["elapsed_ms"] = watch.elapsed_ms();
    std::ofstream out(path);
    if (!out) throw dbrc::FormatError("cannot write manifest " + path.string());
    out << manifest.dump(2) << '\n';
}

json epoch_records(const dbrc::TrainReport& report) {
    json records = json::array();
    for (const dbrc::EpochStats& e : report.epochs) {
        records.push_back({{"epoch", e.epoch},
                           {"total_loss", e.total_loss},
                           {"recon_x_loss", e.recon_x_loss},
                           {"recon_y_loss", e.recon_y_loss},
                           {"reg_loss", e.reg_loss},
                           {"mean_alpha", e.mean_alpha},
                           {"saturated_fraction", e.saturated_fraction}});
    }
    return records;
}

struct SynthArgs {
    dbrc::SynthConfig config;
    std::string out_dir;
};

int run_synth(const SynthArgs& args) {
    Stopwatch watch;
    fs::create_directories(args.out_dir);
    const dbrc::MultimodalDataset data = dbrc::synth_generate(args.config);

    const fs::path dir(args.out_dir);
    dbrc::save_dataset(dir / "x.txt", dir / "y.txt", dir / "labels.txt", data);

    write_manifest(dir / "manifest.json",
                   json{{"command", "synth"},
                        {"config",
                         {{"n", args.config.n},
                          {"classes", args.config.classes},
                          {"latent_dim", args.config.latent_dim},
                          {"dim_x", args.config.dim_x},
                          {"dim_y", args.config.dim_y},
                          {"noise_sigma", args.config.noise_sigma},
                          {"multi_label", args.config.multi_label}}},
                        {"seed", args.config.seed},
                        {"outputs", {"x.txt", "y.txt", "labels.txt"}}},
                   watch);
    std::cout << "synth: wrote " << args.config.n << " items to " << args.out_dir << "\n";
    return 0;
}

struct TrainArgs {
    std::string x_path, y_path, labels_path, out_dir;
    dbrc::DbrcConfig config;
    double query_fraction = 0.25;
};

json config_echo(const dbrc::DbrcConfig& cfg) {
    return {{"dim_x", cfg.dim_x},
            {"dim_y", cfg.dim_y},
            {"encoder_dims", cfg.encoder_dims},
            {"bits", cfg.bits},
            {"lambda", cfg.lambda},
            {"epochs", cfg.epochs},
            {"finetune_epochs", cfg.finetune_epochs},
            {"batch_size", cfg.batch_size},
            {"learning_rate", cfg.learning_rate},
            {"variant", variant_name(cfg.variant)},
            {"seed", cfg.seed}};
}

int run_train(TrainArgs args) {
    Stopwatch watch;
    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);

    dbrc::MultimodalDataset data =
        dbrc::load_dataset(args.x_path, args.y_path, args.labels_path);
    args.config.dim_x = data.x.cols();
    args.config.dim_y = data.y.cols();

    const dbrc::SplitSpec spec{args.query_fraction, args.config.seed};
    auto [query, retrieval] = dbrc::split(data, spec);
    dbrc::save_dataset(dir / "query_x.txt", dir / "query_y.txt", dir / "query_labels.txt",
                       query);
    dbrc::save_dataset(dir / "retrieval_x.txt", dir / "retrieval_y.txt",
                       dir / "retrieval_labels.txt", retrieval);

    dbrc::Rng rng(dbrc::derive_seed(args.config.seed, 0));
    dbrc::TrainResult joint = dbrc::train(dbrc::build_model(args.config, rng), retrieval);

    dbrc::TrainReport report_x, report_y;
    const dbrc::DbrcModel model_x =
        dbrc::finetune_unimodal(joint.model, retrieval, dbrc::ForwardMode::XOnly, &report_x);
    const dbrc::DbrcModel model_y =
        dbrc::finetune_unimodal(joint.model, retrieval, dbrc::ForwardMode::YOnly, &report_y);

    dbrc::save_model(dir / "joint.dbrc", joint.model);
    dbrc::save_model(dir / "model_x.dbrc", model_x);
    dbrc::save_model(dir / "model_y.dbrc", model_y);

    {
        std::ofstream out(dir / "train_report.json");
        out << json{{"joint", epoch_records(joint.report)},
                    {"finetune_x", epoch_records(report_x)},
                    {"finetune_y", epoch_records(report_y)}}
                   .dump(2)
            << '\n';
    }

    const dbrc::EpochStats& last = joint.report.epochs.back();
    std::cout << "train: joint loss " << fmt_double(joint.report.epochs.front().total_loss)
              << " -> " << fmt_double(last.total_loss) << ", mean alpha "
              << fmt_double(last.mean_alpha) << ", saturated "
              << fmt_double(last.saturated_fraction) << "\n";

    write_manifest(dir / "manifest.json",
                   json{{"command", "train"},
                        {"config", config_echo(args.config)},
                        {"query_fraction", args.query_fraction},
                        {"seed", args.config.seed},
                        {"inputs", {args.x_path, args.y_path, args.labels_path}},
                        {"outputs",
                         {"joint.dbrc", "model_x.dbrc", "model_y.dbrc", "train_report.json",
                          "query_x.txt", "query_y.txt", "query_labels.txt", "retrieval_x.txt",
                          "retrieval_y.txt", "retrieval_labels.txt"}}},
                   watch);
    return 0;
}

struct EncodeArgs {
    std::string checkpoint, x_path, y_path, out_path;
    std::string mode = "joint";
};

int run_encode(const EncodeArgs& args) {
    Stopwatch watch;
    dbrc::ForwardMode mode;
    if (args.mode == "joint") mode = dbrc::ForwardMode::Joint;
    else if (args.mode == "x") mode = dbrc::ForwardMode::XOnly;
    else if (args.mode == "y") mode = dbrc::ForwardMode::YOnly;
    else throw dbrc::InvalidArgument("encode: mode must be joint, x, or y");

    const dbrc::DbrcModel model = dbrc::load_model(args.checkpoint);
    dbrc::DenseMatrix x, y;
    if (!args.x_path.empty()) x = dbrc::load_matrix(args.x_path);
    if (!args.y_path.empty()) y = dbrc::load_matrix(args.y_path);

    const dbrc::CodeSet codes = dbrc::encode_codes(model, x, y, mode);
    dbrc::save_codes(args.out_path, codes);

    write_manifest(fs::path(args.out_path).concat(".manifest.json"),
                   json{{"command", "encode"},
                        {"checkpoint", args.checkpoint},
                        {"mode", args.mode},
                        {"bits", codes.bits},
                        {"items", codes.count},
                        {"outputs", {args.out_path}}},
                   watch);
    std::cout << "encode: " << codes.count << " items, " << codes.bits << " bits -> "
              << args.out_path << "\n";
    return 0;
}

struct EvalArgs {
    std::string db_codes, db_labels, query_codes_x, query_codes_y, query_labels, out_dir;
    std::uint32_t radius = 2;
};

int run_eval(const EvalArgs& args) {
    Stopwatch watch;
    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);

    const dbrc::CodeSet db = dbrc::load_codes(args.db_codes);
    const dbrc::CodeSet qx = dbrc::load_codes(args.query_codes_x);
    const dbrc::CodeSet qy = dbrc::load_codes(args.query_codes_y);
    const dbrc::LabelSet db_labels = dbrc::load_labels(args.db_labels);
    const dbrc::LabelSet q_labels = dbrc::load_labels(args.query_labels);

    const dbrc::RetrievalMetrics i2t =
        dbrc::evaluate_direction(qx, db, q_labels, db_labels, args.radius);
    const dbrc::RetrievalMetrics t2i =
        dbrc::evaluate_direction(qy, db, q_labels, db_labels, args.radius);

    std::vector<std::pair<std::string, std::string>> lines = {
        {"bits", std::to_string(db.bits)},
        {"radius", std::to_string(args.radius)},
        {"num_queries", std::to_string(qx.count)},
        {"num_database", std::to_string(db.count)},
        {"map_i2t", fmt_double(i2t.map)},
        {"lookup_precision_i2t", fmt_double(i2t.lookup_precision)},
        {"lookup_recall_i2t", fmt_double(i2t.lookup_recall)},
        {"lookup_fmeasure_i2t", fmt_double(i2t.lookup_fmeasure)},
        {"map_t2i", fmt_double(t2i.map)},
        {"lookup_precision_t2i", fmt_double(t2i.lookup_precision)},
        {"lookup_recall_t2i", fmt_double(t2i.lookup_recall)},
        {"lookup_fmeasure_t2i", fmt_double(t2i.lookup_fmeasure)},
    };
    {
        std::ofstream out(dir / "metrics.txt");
        if (!out) throw dbrc::FormatError("cannot write metrics report");
        for (const auto& [key, value] : lines) out << key << ' ' << value << '\n';
    }
    {
        std::ofstream out(dir / "metrics.json");
        out << json{{"bits", db.bits},
                    {"radius", args.radius},
                    {"num_queries", qx.count},
                    {"num_database", db.count},
                    {"i2t",
                     {{"map", i2t.map},
                      {"lookup_precision", i2t.lookup_precision},
                      {"lookup_recall", i2t.lookup_recall},
                      {"lookup_fmeasure", i2t.lookup_fmeasure}}},
                    {"t2i",
                     {{"map", t2i.map},
                      {"lookup_precision", t2i.lookup_precision},
                      {"lookup_recall", t2i.lookup_recall},
                      {"lookup_fmeasure", t2i.lookup_fmeasure}}}}
                   .dump(2)
            << '\n';
    }
    for (const auto& [key, value] : lines) std::cout << key << ' ' << value << '\n';

    write_manifest(dir / "manifest.json",
                   json{{"command", "eval"},
                        {"radius", args.radius},
                        {"inputs",
                         {args.db_codes, args.db_labels, args.query_codes_x,
                          args.query_codes_y, args.query_labels}},
                        {"outputs", {"metrics.txt", "metrics.json"}}},
                   watch);
    return 0;
}

struct AblateArgs {
    std::string out_dir;
    std::vector<std::size_t> bit_list = {16, 32, 64, 128};
    std::vector<std::string> variants = {"dbrc", "dbrc-n", "dbrc-c", "two-stage"};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    dbrc::SynthConfig synth;
    std::size_t epochs = 300;
    std::size_t finetune_epochs = 150;
    std::size_t batch_size = 64;
    double learning_rate = 1e-3;
    double lambda = 0.001;
    double query_fraction = 0.25;
    std::uint32_t radius = 2;
};

struct AblationCell {
    std::string variant;
    std::size_t bits = 0;
    double map_i2t = 0.0;
    double map_t2i = 0.0;
    json per_seed = json::array();
};

AblationCell run_ablation_cell(const AblateArgs& args, const std::string& variant_str,
                               std::size_t bits) {
    AblationCell cell;
    cell.variant = variant_str;
    cell.bits = bits;

    for (std::uint64_t seed : args.seeds) {
        dbrc::SynthConfig synth = args.synth;
        synth.seed = seed;
        const dbrc::MultimodalDataset data = dbrc::synth_generate(synth);
        auto [query, retrieval] = dbrc::split(data, {args.query_fraction, seed});

        dbrc::DbrcConfig config;
        config.dim_x = data.x.cols();
        config.dim_y = data.y.cols();
        config.bits = bits;
        config.lambda = args.lambda;
        config.epochs = args.epochs;
        config.finetune_epochs = args.finetune_epochs;
        config.batch_size = args.batch_size;
        config.learning_rate = args.learning_rate;
        config.variant = parse_variant(variant_str);
        config.seed = dbrc::derive_seed(seed, 40 + bits);

        // Same init weights for every variant at a given (seed, bits).
        dbrc::Rng rng(dbrc::derive_seed(config.seed, 0));
        const dbrc::TrainResult joint = dbrc::train(dbrc::build_model(config, rng), retrieval);
        const dbrc::DbrcModel model_x =
            dbrc::finetune_unimodal(joint.model, retrieval, dbrc::ForwardMode::XOnly);
        const dbrc::DbrcModel model_y =
            dbrc::finetune_unimodal(joint.model, retrieval, dbrc::ForwardMode::YOnly);

        const dbrc::CodeSet db =
            dbrc::encode_codes(joint.model, retrieval.x, retrieval.y, dbrc::ForwardMode::Joint);
        const dbrc::CodeSet qx =
            dbrc::encode_codes(model_x, query.x, dbrc::DenseMatrix(), dbrc::ForwardMode::XOnly);
        const dbrc::CodeSet qy =
            dbrc::encode_codes(model_y, dbrc::DenseMatrix(), query.y, dbrc::ForwardMode::YOnly);

        const double map_i2t = dbrc::map_eval(qx, db, query.labels, retrieval.labels);
        const double map_t2i = dbrc::map_eval(qy, db, query.labels, retrieval.labels);
        cell.map_i2t += map_i2t;
        cell.map_t2i += map_t2i;
        cell.per_seed.push_back({{"seed", seed}, {"map_i2t", map_i2t}, {"map_t2i", map_t2i}});
    }
    cell.map_i2t /= static_cast<double>(args.seeds.size());
    cell.map_t2i /= static_cast<double>(args.seeds.size());
    return cell;
}

int run_ablate(const AblateArgs& args) {
    Stopwatch watch;
    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);

    std::vector<AblationCell> cells;
    for (const std::string& variant : args.variants) {
        for (std::size_t bits : args.bit_list) {
            std::cerr << "ablate: " << variant << " @ " << bits << " bits...\n";
            cells.push_back(run_ablation_cell(args, variant, bits));
        }
    }

    // Table-2-shaped text: one block per direction, variants x bit lengths.
    std::string table;
    for (const char* direction : {"I2T", "T2I"}) {
        table += std::string(direction) + " MAP\n";
        table += "variant   ";
        for (std::size_t bits : args.bit_list) {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "%10zu", bits);
            table += buf;
        }
        table += '\n';
        for (const std::string& variant : args.variants) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%-10s", variant.c_str());
            table += buf;
            for (std::size_t bits : args.bit_list) {
                for (const AblationCell& cell : cells) {
                    if (cell.variant == variant && cell.bits == bits) {
                        std::snprintf(buf, sizeof(buf), "%10.4f",
                                      std::string(direction) == "I2T" ? cell.map_i2t
                                                                      : cell.map_t2i);
                        table += buf;
                    }
                }
            }
            table += '\n';
        }
        table += '\n';
    }
    std::cout << table;
    {
        std::ofstream out(dir / "ablation.txt");
        out << table;
    }
    {
        json records = json::array();
        for (const AblationCell& cell : cells) {
            records.push_back({{"variant", cell.variant},
                               {"bits", cell.bits},
                               {"map_i2t", cell.map_i2t},
                               {"map_t2i", cell.map_t2i},
                               {"per_seed", cell.per_seed}});
        }
        std::ofstream out(dir / "ablation.json");
        out << records.dump(2) << '\n';
    }

    write_manifest(dir / "manifest.json",
                   json{{"command", "ablate"},
                        {"bits", args.bit_list},
                        {"variants", args.variants},
                        {"seeds", args.seeds},
                        {"epochs", args.epochs},
                        {"finetune_epochs", args.finetune_epochs},
                        {"outputs", {"ablation.txt", "ablation.json"}}},
                   watch);
    return 0;
}

struct MrbmCheckArgs {
    std::vector<std::size_t> dims = {2, 2, 2};
    std::size_t trials = 20;
    std::uint64_t seed = 7;
    double tolerance = 1e-10;
    double scale = 1.0;
};

int run_mrbm_check(const MrbmCheckArgs& args) {
    if (args.dims.size() != 3) {
        throw dbrc::InvalidArgument("mrbm-check: --dims needs exactly three values");
    }
    dbrc::Rng rng(dbrc::derive_seed(args.seed, 7));
    double max_plain = 0.0, max_swapped = 0.0;
    for (std::size_t t = 0; t < args.trials; ++t) {
        const dbrc::MrbmParams params =
            dbrc::random_mrbm(args.dims[0], args.dims[1], args.dims[2], rng, args.scale);
        const dbrc::DataPmf pmf = dbrc::random_data_pmf(args.dims[0], args.dims[1], rng);
        const double reference = dbrc::nll(params, pmf);
        max_plain = std::max(max_plain,
                             std::abs(reference - dbrc::decomposition_rhs(params, pmf)));
        max_swapped = std::max(
            max_swapped, std::abs(reference - dbrc::decomposition_rhs_swapped(params, pmf)));
    }
    std::printf("mrbm-check: dims %zu/%zu/%zu, trials %zu, seed %" PRIu64 "\n", args.dims[0],
                args.dims[1], args.dims[2], args.trials, args.seed);
    std::printf("max |nll - decomposition|           = %.3e\n", max_plain);
    std::printf("max |nll - decomposition (swapped)| = %.3e\n", max_swapped);
    const bool pass = max_plain < args.tolerance && max_swapped < args.tolerance;
    std::printf("tolerance %.1e: %s\n", args.tolerance, pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deep binary reconstruction for cross-modal hashing"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic two-modality dataset");
    synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();
    synth_cmd->add_option("--n", synth.config.n, "Number of items");
    synth_cmd->add_option("--classes", synth.config.classes, "Number of classes");
    synth_cmd->add_option("--latent", synth.config.latent_dim, "Latent dimension");
    synth_cmd->add_option("--dim-x", synth.config.dim_x, "Modality x width");
    synth_cmd->add_option("--dim-y", synth.config.dim_y, "Modality y width");
    synth_cmd->add_option("--noise", synth.config.noise_sigma, "Observation noise sigma");
    synth_cmd->add_flag("--multi-label", synth.config.multi_label,
                        "Add a second label with probability 0.3");
    synth_cmd->add_option("--seed", synth.config.seed, "Seed");

    TrainArgs train;
    std::string variant_str = "dbrc";
    CLI::App* train_cmd =
        app.add_subcommand("train", "Split a dataset, train DBRC jointly, finetune per modality");
    train_cmd->add_option("--x", train.x_path, "Modality x features")->required();
    train_cmd->add_option("--y", train.y_path, "Modality y features")->required();
    train_cmd->add_option("--labels", train.labels_path, "Labels file")->required();
    train_cmd->add_option("--out-dir", train.out_dir, "Output directory")->required();
    train_cmd->add_option("--bits", train.config.bits, "Code length");
    train_cmd->add_option("--lambda", train.config.lambda, "ATanh regularization weight");
    train_cmd->add_option("--epochs", train.config.epochs, "Joint training epochs");
    train_cmd->add_option("--finetune-epochs", train.config.finetune_epochs,
                          "Epochs per unimodal finetune");
    train_cmd->add_option("--batch", train.config.batch_size, "Minibatch size");
    train_cmd->add_option("--lr", train.config.learning_rate, "Learning rate");
    train_cmd->add_option("--encoder-dims", train.config.encoder_dims,
                          "Encoder widths (input->...->joint)")
        ->delimiter(',');
    train_cmd->add_option("--variant", variant_str, "dbrc | dbrc-n | dbrc-c | two-stage");
    train_cmd->add_option("--seed", train.config.seed, "Seed");
    train_cmd->add_option("--query-fraction", train.query_fraction, "Query split fraction");

    EncodeArgs encode;
    CLI::App* encode_cmd = app.add_subcommand("encode", "Encode features into binary codes");
    encode_cmd->add_option("--checkpoint", encode.checkpoint, "Model checkpoint")->required();
    encode_cmd->add_option("--mode", encode.mode, "joint | x | y");
    encode_cmd->add_option("--x", encode.x_path, "Modality x features");
    encode_cmd->add_option("--y", encode.y_path, "Modality y features");
    encode_cmd->add_option("--out", encode.out_path, "Output codes file")->required();

    EvalArgs eval;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "Evaluate retrieval for both directions (I2T and T2I)");
    eval_cmd->add_option("--db-codes", eval.db_codes, "Database codes")->required();
    eval_cmd->add_option("--db-labels", eval.db_labels, "Database labels")->required();
    eval_cmd->add_option("--query-codes-x", eval.query_codes_x, "X-modality query codes")
        ->required();
    eval_cmd->add_option("--query-codes-y", eval.query_codes_y, "Y-modality query codes")
        ->required();
    eval_cmd->add_option("--query-labels", eval.query_labels, "Query labels")->required();
    eval_cmd->add_option("--radius", eval.radius, "Hash lookup Hamming radius");
    eval_cmd->add_option("--out-dir", eval.out_dir, "Output directory")->required();

    AblateArgs ablate;
    CLI::App* ablate_cmd = app.add_subcommand(
        "ablate", "Compare ATanh variants across bit lengths on synthetic data");
    ablate_cmd->add_option("--out-dir", ablate.out_dir, "Output directory")->required();
    ablate_cmd->add_option("--bits", ablate.bit_list, "Bit lengths")->delimiter(',');
    ablate_cmd->add_option("--variants", ablate.variants, "Variants")->delimiter(',');
    ablate_cmd->add_option("--seeds", ablate.seeds, "Seeds to average over")->delimiter(',');
    ablate_cmd->add_option("--n", ablate.synth.n, "Items per dataset");
    ablate_cmd->add_option("--classes", ablate.synth.classes, "Classes");
    ablate_cmd->add_option("--latent", ablate.synth.latent_dim, "Latent dimension");
    ablate_cmd->add_option("--dim-x", ablate.synth.dim_x, "Modality x width");
    ablate_cmd->add_option("--dim-y", ablate.synth.dim_y, "Modality y width");
    ablate_cmd->add_option("--noise", ablate.synth.noise_sigma, "Observation noise sigma");
    ablate_cmd->add_option("--epochs", ablate.epochs, "Joint epochs per cell");
    ablate_cmd->add_option("--finetune-epochs", ablate.finetune_epochs,
                           "Finetune epochs per cell");
    ablate_cmd->add_option("--batch", ablate.batch_size, "Minibatch size");
    ablate_cmd->add_option("--lr", ablate.learning_rate, "Learning rate");
    ablate_cmd->add_option("--lambda", ablate.lambda, "ATanh regularization weight");
    ablate_cmd->add_option("--query-fraction", ablate.query_fraction, "Query split fraction");

    MrbmCheckArgs mrbm;
    CLI::App* mrbm_cmd = app.add_subcommand(
        "mrbm-check", "Verify the likelihood decomposition identity on random instances");
    mrbm_cmd->add_option("--dims", mrbm.dims, "dim_x,dim_y,dim_h")->delimiter(',');
    mrbm_cmd->add_option("--trials", mrbm.trials, "Random instances");
    mrbm_cmd->add_option("--seed", mrbm.seed, "Seed");
    mrbm_cmd->add_option("--tolerance", mrbm.tolerance, "Pass threshold");
    mrbm_cmd->add_option("--scale", mrbm.scale, "Parameter draw range");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth_cmd) return run_synth(synth);
        if (*train_cmd) {
            train.config.variant = parse_variant(variant_str);
            return run_train(train);
        }
        if (*encode_cmd) return run_encode(encode);
        if (*eval_cmd) return run_eval(eval);
        if (*ablate_cmd) return run_ablate(ablate);
        if (*mrbm_cmd) return run_mrbm_check(mrbm);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
