#pragma once

#include "meshrel/corpus.hpp"
#include "meshrel/information_content.hpp"
#include "meshrel/term_graph.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meshrel {

enum class Orientation : std::uint8_t {
    Similarity, ///< higher = more related, values in [0,1]
    Distance,   ///< lower = more related, values >= 0
};

std::string_view to_string(Orientation o);

struct RelatednessScore {
    double value = 0.0;
    Orientation orientation = Orientation::Similarity;
    /// Set when a degenerate input forced a fallback: a zero-magnitude
    /// IC vector, or a major-only distance on a record without major terms.
    bool degenerate = false;

    /// Value oriented so that higher always means more related.
    double relatedness() const { return orientation == Orientation::Similarity ? value : -value; }
};

enum class Family : std::uint8_t { Cooccurrence, Distance };
enum class CooccurrenceStyle : std::uint8_t { Boudreau, Ahlgren };

/// One of the ten measures: two co-occurrence cosines and eight
/// (weighting x graph) publication distances.
struct MeasureSpec {
    Family family = Family::Cooccurrence;
    CooccurrenceStyle style = CooccurrenceStyle::Boudreau;
    int weighting = 1; ///< 0 = major terms only; 1..3 = weight of major terms
    GraphVariant graph = GraphVariant::Unit;

    static MeasureSpec boudreau();
    static MeasureSpec ahlgren();
    static MeasureSpec distance(int weighting, GraphVariant graph);

    /// Accepts boudreau, ahlgren, dist{0..3}:{unit|dic}.
    static MeasureSpec parse(std::string_view token);
    std::string name() const;
    Orientation orientation() const
    {
        return family == Family::Cooccurrence ? Orientation::Similarity : Orientation::Distance;
    }

    bool operator==(const MeasureSpec& other) const { return name() == other.name(); }
};

/// All ten measures in report order.
std::vector<MeasureSpec> all_measures();
/// Comma-separated tokens or "all".
std::vector<MeasureSpec> parse_measure_list(std::string_view list);

/// Sorted list of the distinct qualifier strings in a corpus; fixes the
/// (term, qualifier) coordinate layout of IC vectors.
class QualifierUniverse {
public:
    QualifierUniverse() = default;
    explicit QualifierUniverse(const Corpus& corpus);

    std::size_t size() const noexcept { return names_.size(); }
    /// Throws InputError for qualifiers outside the universe.
    std::uint64_t index_of(std::string_view q) const;
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
};

/// Sorted (coordinate, value) pairs with no zero entries.
struct SparseVector {
    std::vector<std::pair<std::uint64_t, double>> entries;

    double squared_norm() const;
    bool operator==(const SparseVector&) const = default;
};

/// Coordinate of a term entry and of a (term, qualifier) entry.
std::uint64_t term_coordinate(TermIdx t, const QualifierUniverse& q);
std::uint64_t qualifier_coordinate(TermIdx t, std::uint64_t qualifier, const QualifierUniverse& q);

double dot(const SparseVector& a, const SparseVector& b);

RelatednessScore sim_boudreau(const PublicationRecord& a, const PublicationRecord& b);

/// Term entries carry ic (minor) or 2*ic (major); each (term, qualifier)
/// entry is 1.
SparseVector ahlgren_vector(const PublicationRecord& p, const IcTable& ic, const QualifierUniverse& q);

RelatednessScore sim_ahlgren(const PublicationRecord& a, const PublicationRecord& b, const IcTable& ic,
                             const QualifierUniverse& q);
/// Cosine of two precomputed IC vectors.
RelatednessScore cosine_score(const SparseVector& a, double a_norm2, const SparseVector& b, double b_norm2);

/// Terms of one record and their weights under a weighting scheme.
struct WeightedTerms {
    std::vector<TermIdx> terms;
    std::vector<double> weights;
    double weight_sum = 0.0;
    bool fallback = false; ///< major-only selection was empty; all terms used
};

WeightedTerms weighted_terms(const PublicationRecord& p, int weighting);

/// Weighted average of nearest-term distances in both directions.
/// `rows_a[i]` holds the distances from a.terms[i] to every vertex.
double aggregate_distance(const WeightedTerms& a, const WeightedTerms& b,
                          std::span<const double* const> rows_a);

RelatednessScore dist_weighted(const PublicationRecord& a, const PublicationRecord& b,
                               const TermGraph& graph, DistanceCache& cache, int weighting);

/// The indices a measure may need. Caches reference their graphs.
struct IndexBundle {
    const IcTable* ic = nullptr;
    const QualifierUniverse* qualifiers = nullptr;
    DistanceCache* unit = nullptr;
    DistanceCache* delta_ic = nullptr;

    DistanceCache* cache_for(GraphVariant g) const { return g == GraphVariant::Unit ? unit : delta_ic; }
};

/// Dispatches to the measure. Throws InputError when the bundle lacks a
/// component the measure needs.
RelatednessScore compute(const MeasureSpec& spec, const PublicationRecord& a, const PublicationRecord& b,
                         const IndexBundle& bundle);

} // namespace meshrel
