#include "dbrc/retrieval.hpp"

namespace dbrc {

namespace {

void check_eval_args(const CodeSet& queries, const CodeSet& db, const LabelSet& query_labels,
                     const LabelSet& db_labels) {
    if (db.count == 0) throw InvalidArgument("retrieval: empty database");
    if (queries.bits != db.bits) throw InvalidArgument("retrieval: bit lengths differ");
    if (query_labels.count() != queries.count || db_labels.count() != db.count) {
        throw InvalidArgument("retrieval: labels not aligned with codes");
    }
    if (query_labels.num_labels() != db_labels.num_labels()) {
        throw InvalidArgument("retrieval: label vocabularies differ");
    }
}

}  // namespace

double average_precision(std::span<const unsigned char> relevance) {
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < relevance.size(); ++k) {
        if (relevance[k]) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(k + 1);
        }
    }
    return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

double map_eval(const CodeSet& queries, const CodeSet& db, const LabelSet& query_labels,
                const LabelSet& db_labels) {
    check_eval_args(queries, db, query_labels, db_labels);

    // Counting sort by distance; walking buckets in index order breaks ties
    // by ascending database index.
    std::vector<std::vector<std::uint32_t>> buckets(queries.bits + 1);
    std::vector<unsigned char> relevance(db.count);

    double ap_sum = 0.0;
    for (std::size_t q = 0; q < queries.count; ++q) {
        for (auto& b : buckets) b.clear();
        for (std::size_t i = 0; i < db.count; ++i) {
            buckets[hamming(queries, q, db, i)].push_back(static_cast<std::uint32_t>(i));
        }
        std::size_t rank = 0;
        for (const auto& bucket : buckets) {
            for (std::uint32_t i : bucket) {
                relevance[rank++] = query_labels.shares_label(q, db_labels, i) ? 1 : 0;
            }
        }
        ap_sum += average_precision(relevance);
    }
    return ap_sum / static_cast<double>(queries.count);
}

LookupMetrics hash_lookup(const CodeSet& queries, const CodeSet& db,
                          const LabelSet& query_labels, const LabelSet& db_labels,
                          std::uint32_t radius) {
    check_eval_args(queries, db, query_labels, db_labels);

    double precision_sum = 0.0;
    double recall_sum = 0.0;
    for (std::size_t q = 0; q < queries.count; ++q) {
        std::size_t retrieved = 0, retrieved_relevant = 0, relevant = 0;
        for (std::size_t i = 0; i < db.count; ++i) {
            const bool rel = query_labels.shares_label(q, db_labels, i);
            relevant += rel;
            if (hamming(queries, q, db, i) <= radius) {
                ++retrieved;
                retrieved_relevant += rel;
            }
        }
        if (retrieved > 0) {
            precision_sum += static_cast<double>(retrieved_relevant) /
                             static_cast<double>(retrieved);
        }
        if (relevant > 0) {
            recall_sum += static_cast<double>(retrieved_relevant) /
                          static_cast<double>(relevant);
        }
    }

    LookupMetrics metrics;
    metrics.radius = radius;
    metrics.precision = precision_sum / static_cast<double>(queries.count);
    metrics.recall = recall_sum / static_cast<double>(queries.count);
    const double pr = metrics.precision + metrics.recall;
    metrics.fmeasure = pr > 0.0 ? 2.0 * metrics.precision * metrics.recall / pr : 0.0;
    return metrics;
}

RetrievalMetrics evaluate_direction(const CodeSet& queries, const CodeSet& db,
                                    const LabelSet& query_labels, const LabelSet& db_labels,
                                    std::uint32_t radius) {
    RetrievalMetrics metrics;
    metrics.map = map_eval(queries, db, query_labels, db_labels);
    const LookupMetrics lookup = hash_lookup(queries, db, query_labels, db_labels, radius);
    metrics.lookup_precision = lookup.precision;
    metrics.lookup_recall = lookup.recall;
    metrics.lookup_fmeasure = lookup.fmeasure;
    metrics.radius = radius;
    return metrics;
}

}  // namespace dbrc
