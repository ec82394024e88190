#pragma once

#include "meshrel/corpus.hpp"
#include "meshrel/judgements.hpp"
#include "meshrel/pairwise.hpp"
#include "meshrel/relatedness.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace meshrel {

/// Cliff's delta of x against y: (#{x_i > y_j} - #{x_i < y_j}) / (m n).
/// Sort-and-count, O((m + n) log(m + n)). Throws InputError on empty input or NaN.
double cliffs_delta(std::span<const double> x, std::span<const double> y);

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    ConfusionMatrix& operator+=(const ConfusionMatrix& o);
    bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassificationMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double mcc = 0.0;
};

/// Metrics with a zero denominator are reported as 0.
ClassificationMetrics precision_recall_mcc(const ConfusionMatrix& cm);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t overflow = 0; ///< values outside [lo, hi]
    std::uint64_t total = 0;

    double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double bin_lo(std::size_t k) const;
    double bin_hi(std::size_t k) const;
    /// count / (total * bin_width); integrates to the in-range share.
    double density(std::size_t k) const;
};

/// Uniform bins over [lo, hi]; the last bin includes hi.
Histogram density_histogram(std::span<const double> values, std::size_t bins, double lo, double hi);
Histogram density_histogram(std::span<const RelatednessScore> scores, std::size_t bins, double lo, double hi);

/// Default plotting window per orientation: [0, 0.5] for similarities,
/// [0, 17.5] for distances.
std::pair<double, double> default_histogram_range(Orientation o);

struct Test1Result {
    double mean_nrr = 0.0; ///< raw measure values
    double mean_rr = 0.0;
    double delta = 0.0;    ///< positive: rr pairs more related
    std::size_t n_nrr = 0;
    std::size_t n_rr = 0;
};

/// Scores every pair and compares the groups. Distances are negated before
/// Cliff's delta. Throws InputError for docs missing from the corpus.
Test1Result run_test1(const MeasureSpec& measure, const PairGroups& pairs, const Corpus& corpus,
                      const IndexBundle& bundle);

struct SamplingOptions {
    std::uint64_t seed = 42;
    int iterations = 30;
    std::size_t sample_size = 10;
};

struct Test2Result {
    ConfusionMatrix confusion;
    std::vector<std::string> skipped_topics; ///< too few grade-0 or grade-2 docs
};

/// Per topic and iteration, samples `sample_size` relevant and not-relevant
/// docs and classifies every other grade-0/2 doc as relevant iff its best
/// relatedness to the relevant sample strictly exceeds that to the
/// not-relevant sample. The sample depends only on (seed, topic, iteration).
Test2Result run_test2(const MeasureSpec& measure, const TopicSet& topics, const Corpus& corpus,
                      const IndexBundle& bundle, const SamplingOptions& options = {});

/// Indices into `pool` of a uniform sample without replacement of size k,
/// drawn from the generator for (seed, topic, iteration, stream).
std::vector<std::size_t> draw_sample(std::size_t pool, std::size_t k, std::uint64_t seed,
                                     std::string_view topic, int iteration, int stream);

/// Grade-0/2 docs of one topic and the measure's scores among them.
struct TopicMatrix {
    std::string topic;
    std::vector<const PublicationRecord*> docs; ///< doc-id order
    std::vector<Grade> grades;
    ScoreMatrix scores;
};

/// Docs judged in a topic but absent from the corpus raise InputError unless
/// `drop_unindexed` is set, in which case they are left out and counted.
std::vector<TopicMatrix> build_topic_matrices(const MeasureSpec& measure, const TopicSet& topics,
                                              const Corpus& corpus, const IndexBundle& bundle,
                                              bool drop_unindexed = false,
                                              std::size_t* dropped = nullptr);

Test1Result test1_from_matrices(const std::vector<TopicMatrix>& matrices,
                                std::vector<double>* pooled_values = nullptr);
Test2Result test2_from_matrices(const std::vector<TopicMatrix>& matrices, const SamplingOptions& options);

struct BenchmarkOptions {
    SamplingOptions sampling;
    std::size_t histogram_bins = 50;
    /// Overrides default_histogram_range when lo < hi.
    double histogram_lo = 0.0;
    double histogram_hi = 0.0;
    bool drop_unindexed = false;
};

struct MeasureResult {
    MeasureSpec measure;
    Test1Result test1;
    Test2Result test2;
    ClassificationMetrics metrics;
    Histogram histogram; ///< over all rr and nr-r pair scores
    std::size_t degenerate_pairs = 0;
};

struct BenchmarkReport {
    BenchmarkOptions options;
    std::vector<TopicCounts> included_topics;
    std::vector<TopicCounts> excluded_topics;
    std::size_t dropped_judgements = 0;
    std::vector<MeasureResult> results;
};

BenchmarkReport run_benchmark(const std::vector<MeasureSpec>& measures, const TopicSet& topics,
                              const Corpus& corpus, const IndexBundle& bundle,
                              const BenchmarkOptions& options = {});

} // namespace meshrel
