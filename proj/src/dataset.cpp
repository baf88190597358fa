#include "dbrc/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>

#include "dbrc/rng.hpp"

namespace dbrc {

namespace {

void write_rows(std::ofstream& out, const DenseMatrix& m) {
    char buf[32];
    std::string line;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) line.push_back(' ');
            const int len = std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
            line.append(buf, static_cast<std::size_t>(len));
        }
        line.push_back('\n');
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

DenseMatrix read_matrix(const std::filesystem::path& path, bool require_finite) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());

    std::size_t rows = 0, cols = 0;
    std::string header;
    if (!std::getline(in, header)) throw FormatError("empty file: " + path.string());
    if (std::sscanf(header.c_str(), "%zu %zu", &rows, &cols) != 2 || cols == 0) {
        throw FormatError("bad header in " + path.string());
    }

    DenseMatrix m(rows, cols);
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) {
            throw FormatError(path.string() + ": expected " + std::to_string(rows) +
                              " rows, file ends at row " + std::to_string(r));
        }
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (std::size_t c = 0; c < cols; ++c) {
            while (p < end && *p == ' ') ++p;
            double v = 0.0;
            const auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{}) {
                throw FormatError(path.string() + ": parse error at row " + std::to_string(r));
            }
            if (require_finite && !std::isfinite(v)) {
                throw FormatError(path.string() + ": non-finite value at row " +
                                  std::to_string(r));
            }
            m(r, c) = v;
            p = next;
        }
    }
    return m;
}

}  // namespace

void save_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << m.rows() << ' ' << m.cols() << '\n';
    write_rows(out, m);
    if (!out) throw FormatError("write failed for " + path.string());
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
    return read_matrix(path, /*require_finite=*/true);
}

void save_labels(const std::filesystem::path& path, const LabelSet& labels) {
    DenseMatrix m(labels.count(), labels.num_labels());
    for (std::size_t i = 0; i < labels.count(); ++i) {
        for (std::size_t l = 0; l < labels.num_labels(); ++l) {
            m(i, l) = labels.get(i, l) ? 1.0 : 0.0;
        }
    }
    save_matrix(path, m);
}

LabelSet load_labels(const std::filesystem::path& path) {
    const DenseMatrix m = read_matrix(path, /*require_finite=*/true);
    LabelSet labels(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t l = 0; l < m.cols(); ++l) {
            const double v = m(i, l);
            if (v == 1.0) {
                labels.set(i, l);
            } else if (v != 0.0) {
                throw FormatError(path.string() + ": label entries must be 0 or 1 (row " +
                                  std::to_string(i) + ")");
            }
        }
    }
    return labels;
}

MultimodalDataset load_dataset(const std::filesystem::path& x_path,
                               const std::filesystem::path& y_path,
                               const std::filesystem::path& label_path) {
    MultimodalDataset ds;
    ds.x = load_matrix(x_path);
    ds.y = load_matrix(y_path);
    ds.labels = load_labels(label_path);
    if (ds.x.rows() != ds.y.rows() || ds.x.rows() != ds.labels.count()) {
        throw FormatError("dataset files disagree on row count: x=" +
                          std::to_string(ds.x.rows()) + " y=" + std::to_string(ds.y.rows()) +
                          " labels=" + std::to_string(ds.labels.count()));
    }
    for (std::size_t i = 0; i < ds.labels.count(); ++i) {
        if (!ds.labels.any_label(i)) {
            throw FormatError("item " + std::to_string(i) + " has no label");
        }
    }
    return ds;
}

void save_dataset(const std::filesystem::path& x_path, const std::filesystem::path& y_path,
                  const std::filesystem::path& label_path, const MultimodalDataset& dataset) {
    save_matrix(x_path, dataset.x);
    save_matrix(y_path, dataset.y);
    save_labels(label_path, dataset.labels);
}

MultimodalDataset gather_items(const MultimodalDataset& dataset,
                               std::span<const std::size_t> indices) {
    MultimodalDataset out;
    out.x = gather_rows(dataset.x, indices);
    out.y = gather_rows(dataset.y, indices);
    out.labels = LabelSet(indices.size(), dataset.labels.num_labels());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        for (std::size_t l = 0; l < dataset.labels.num_labels(); ++l) {
            if (dataset.labels.get(indices[i], l)) out.labels.set(i, l);
        }
    }
    return out;
}

std::pair<MultimodalDataset, MultimodalDataset> split(const MultimodalDataset& dataset,
                                                      const SplitSpec& spec) {
    const std::size_t n = dataset.size();
    if (spec.query_fraction <= 0.0 || spec.query_fraction >= 1.0) {
        throw InvalidArgument("split: query_fraction must be in (0,1)");
    }
    std::size_t n_query = static_cast<std::size_t>(
        std::llround(spec.query_fraction * static_cast<double>(n)));
    if (n_query == 0 || n_query >= n) {
        throw InvalidArgument("split: degenerate partition for n=" + std::to_string(n));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(spec.seed, 2));
    rng.shuffle(order);

    const std::span<const std::size_t> query_idx(order.data(), n_query);
    const std::span<const std::size_t> retrieval_idx(order.data() + n_query, n - n_query);
    return {gather_items(dataset, query_idx), gather_items(dataset, retrieval_idx)};
}

MultimodalDataset synth_generate(const SynthConfig& config) {
    if (config.classes < 2) throw InvalidArgument("synth: classes must be >= 2");
    if (config.latent_dim == 0 || config.dim_x == 0 || config.dim_y == 0 || config.n == 0) {
        throw InvalidArgument("synth: dimensions and n must be >= 1");
    }
    if (config.noise_sigma < 0.0) throw InvalidArgument("synth: noise_sigma must be >= 0");

    Rng rng(derive_seed(config.seed, 1));

    // Fixed random observation maps, entries scaled so tanh stays informative.
    const double map_scale = 1.0 / std::sqrt(static_cast<double>(config.latent_dim));
    DenseMatrix a_x(config.latent_dim, config.dim_x);
    DenseMatrix a_y(config.latent_dim, config.dim_y);
    for (double& v : a_x.values()) v = map_scale * rng.gaussian();
    for (double& v : a_y.values()) v = map_scale * rng.gaussian();

    // Class centers in latent space, separation 4/sqrt(latent_dim) per coordinate.
    const double sep = 4.0 / std::sqrt(static_cast<double>(config.latent_dim));
    DenseMatrix centers(config.classes, config.latent_dim);
    for (double& v : centers.values()) v = sep * rng.gaussian();

    MultimodalDataset ds;
    ds.x = DenseMatrix(config.n, config.dim_x);
    ds.y = DenseMatrix(config.n, config.dim_y);
    ds.labels = LabelSet(config.n, config.classes);

    std::vector<double> z(config.latent_dim);
    DenseMatrix zrow(1, config.latent_dim);
    for (std::size_t i = 0; i < config.n; ++i) {
        const std::size_t c = rng.next_below(config.classes);
        ds.labels.set(i, c);
        if (config.multi_label && config.classes > 1 && rng.uniform() < 0.3) {
            std::size_t second = rng.next_below(config.classes - 1);
            if (second >= c) ++second;
            ds.labels.set(i, second);
        }

        for (std::size_t k = 0; k < config.latent_dim; ++k) {
            zrow(0, k) = centers(c, k) + rng.gaussian();
        }
        const DenseMatrix px = matmul(zrow, a_x);
        const DenseMatrix py = matmul(zrow, a_y);
        for (std::size_t j = 0; j < config.dim_x; ++j) {
            ds.x(i, j) = std::tanh(px(0, j)) + config.noise_sigma * rng.gaussian();
        }
        for (std::size_t j = 0; j < config.dim_y; ++j) {
            ds.y(i, j) = std::tanh(py(0, j)) + config.noise_sigma * rng.gaussian();
        }
    }
    return ds;
}

}  // namespace dbrc
