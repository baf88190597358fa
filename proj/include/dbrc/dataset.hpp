#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>

#include "dbrc/matrix.hpp"
#include "dbrc/retrieval.hpp"

namespace dbrc {

// Row-aligned two-modality dataset with multi-hot labels.
struct MultimodalDataset {
    DenseMatrix x;
    DenseMatrix y;
    LabelSet labels;

    std::size_t size() const { return x.rows(); }
};

struct SplitSpec {
    double query_fraction = 0.25;
    std::uint64_t seed = 1;
};

struct SynthConfig {
    std::size_t n = 2000;
    std::size_t classes = 4;
    std::size_t latent_dim = 8;
    std::size_t dim_x = 64;
    std::size_t dim_y = 32;
    double noise_sigma = 0.05;
    bool multi_label = false;  // second label with probability 0.3
    std::uint64_t seed = 1;
};

// Text matrix format: header line "rows cols", then one space-separated row
// per line. Values are written with 17 significant digits so a write/read
// round trip is bitwise exact.
void save_matrix(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix load_matrix(const std::filesystem::path& path);

// Labels use the same format with entries restricted to 0/1.
void save_labels(const std::filesystem::path& path, const LabelSet& labels);
LabelSet load_labels(const std::filesystem::path& path);

// Loads and validates a row-aligned dataset from the three files.
MultimodalDataset load_dataset(const std::filesystem::path& x_path,
                               const std::filesystem::path& y_path,
                               const std::filesystem::path& label_path);

void save_dataset(const std::filesystem::path& x_path, const std::filesystem::path& y_path,
                  const std::filesystem::path& label_path, const MultimodalDataset& dataset);

// Deterministic disjoint partition into (query, retrieval) sets.
std::pair<MultimodalDataset, MultimodalDataset> split(const MultimodalDataset& dataset,
                                                      const SplitSpec& spec);

// Clustered two-modality generator: class c picks a latent center, items draw
// latent z ~ N(mu_c, I), and each modality observes tanh(A z) plus Gaussian
// noise through its own fixed random map A.
MultimodalDataset synth_generate(const SynthConfig& config);

MultimodalDataset gather_items(const MultimodalDataset& dataset,
                               std::span<const std::size_t> indices);

}  // namespace dbrc
