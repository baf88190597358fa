#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbrc/codes.hpp"

namespace dbrc {

// Multi-hot item labels, bit-packed per item. Two items are relevant to each
// other when they share at least one label.
class LabelSet {
public:
    LabelSet() = default;
    LabelSet(std::size_t count, std::size_t num_labels)
        : count_(count),
          num_labels_(num_labels),
          words_per_item_((num_labels + 63) / 64),
          words_(count * words_per_item_, 0u) {}

    std::size_t count() const { return count_; }
    std::size_t num_labels() const { return num_labels_; }

    void set(std::size_t item, std::size_t label) {
        words_[item * words_per_item_ + label / 64] |= std::uint64_t{1} << (label % 64);
    }

    bool get(std::size_t item, std::size_t label) const {
        return (words_[item * words_per_item_ + label / 64] >> (label % 64)) & 1u;
    }

    bool any_label(std::size_t item) const {
        for (std::size_t w = 0; w < words_per_item_; ++w) {
            if (words_[item * words_per_item_ + w]) return true;
        }
        return false;
    }

    bool shares_label(std::size_t i, const LabelSet& other, std::size_t j) const {
        for (std::size_t w = 0; w < words_per_item_; ++w) {
            if (words_[i * words_per_item_ + w] & other.words_[j * other.words_per_item_ + w]) {
                return true;
            }
        }
        return false;
    }

private:
    std::size_t count_ = 0;
    std::size_t num_labels_ = 0;
    std::size_t words_per_item_ = 0;
    std::vector<std::uint64_t> words_;
};

// Mean over relevant positions k of (#relevant in top k)/k; 0 when nothing
// in the list is relevant. The list must already be in rank order.
double average_precision(std::span<const unsigned char> relevance);

// MAP over all queries against the full database, ranked by Hamming distance
// with ties broken by ascending database index.
double map_eval(const CodeSet& queries, const CodeSet& db, const LabelSet& query_labels,
                const LabelSet& db_labels);

struct LookupMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double fmeasure = 0.0;
    std::uint32_t radius = 2;
};

// Hash lookup inside a fixed Hamming ball: per-query precision/recall
// averaged over queries, F-measure from the averages. An empty ball
// contributes 0 precision and 0 recall for that query.
LookupMetrics hash_lookup(const CodeSet& queries, const CodeSet& db,
                          const LabelSet& query_labels, const LabelSet& db_labels,
                          std::uint32_t radius = 2);

struct RetrievalMetrics {
    double map = 0.0;
    double lookup_precision = 0.0;
    double lookup_recall = 0.0;
    double lookup_fmeasure = 0.0;
    std::uint32_t radius = 2;
};

RetrievalMetrics evaluate_direction(const CodeSet& queries, const CodeSet& db,
                                    const LabelSet& query_labels, const LabelSet& db_labels,
                                    std::uint32_t radius = 2);

}  // namespace dbrc
