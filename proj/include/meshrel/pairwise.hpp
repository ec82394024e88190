#pragma once

#include "meshrel/relatedness.hpp"

#include <span>
#include <utility>
#include <vector>

namespace meshrel {

/// Dense symmetric matrix of one measure over a document set.
struct ScoreMatrix {
    std::size_t n = 0;
    Orientation orientation = Orientation::Similarity;
    std::vector<double> values; ///< row-major n*n; the diagonal is left at 0
    std::size_t degenerate_pairs = 0;

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    bool operator==(const ScoreMatrix&) const = default;
};

using RecordPair = std::pair<const PublicationRecord*, const PublicationRecord*>;

// OpenMP kernels. Results are bit-identical to the serial references for any
// thread count; the tests and the benchmark target compare the two.

/// All off-diagonal scores among `docs`. Distance measures first collect the
/// term-to-term distances among the documents' terms, then aggregate per pair.
ScoreMatrix score_matrix(const MeasureSpec& spec, std::span<const PublicationRecord* const> docs,
                         const IndexBundle& bundle);

/// Reference: calls compute() for every pair i < j.
ScoreMatrix score_matrix_serial(const MeasureSpec& spec, std::span<const PublicationRecord* const> docs,
                                const IndexBundle& bundle);

std::vector<RelatednessScore> score_pairs(const MeasureSpec& spec, std::span<const RecordPair> pairs,
                                          const IndexBundle& bundle);

std::vector<RelatednessScore> score_pairs_serial(const MeasureSpec& spec, std::span<const RecordPair> pairs,
                                                 const IndexBundle& bundle);

} // namespace meshrel
