#pragma once

#include "meshrel/information_content.hpp"
#include "meshrel/vocabulary.hpp"

#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace meshrel {

enum class GraphVariant : std::uint8_t {
    Unit,    ///< every edge has length 1
    DeltaIc, ///< edge length |ic(parent) - ic(child)|
};

std::string_view to_string(GraphVariant g);

struct GraphOptions {
    /// Adds a sentinel vertex (ic 0) joined to every root so that terms in
    /// different top-level categories are connected.
    bool virtual_root = true;
};

/// Undirected term network over the vocabulary's parent/child relation.
///
/// Path lengths are accumulated in integer ticks (1 tick = 1 for Unit,
/// 2^-40 for DeltaIc), so a distance is exactly the same number whichever
/// endpoint the search starts from and in whatever order edges are relaxed.
class TermGraph {
public:
    using Vertex = std::uint32_t;
    using Ticks = std::int64_t;

    struct Edge {
        Vertex u;
        Vertex v;
        double weight;
    };

    static constexpr double kDeltaIcTick = 0x1p-40;
    static constexpr Ticks kUnreachable = INT64_MAX;

    GraphVariant variant() const noexcept { return variant_; }
    bool has_virtual_root() const noexcept { return virtual_root_; }
    std::size_t term_count() const noexcept { return term_count_; }
    std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
    /// Equals term_count() when present.
    std::optional<Vertex> virtual_root() const;

    double tick() const noexcept { return variant_ == GraphVariant::Unit ? 1.0 : kDeltaIcTick; }

    /// Each undirected edge once, u < v, sorted.
    std::vector<Edge> edges() const;
    std::optional<double> weight(Vertex u, Vertex v) const;

    std::span<const Vertex> neighbours(Vertex v) const;
    std::span<const Ticks> neighbour_ticks(Vertex v) const;

    std::string_view term_id(TermIdx t) const { return ids_.at(t); }

private:
    friend TermGraph build_graph(const VocabularyIndex&, GraphVariant, const IcTable*, const GraphOptions&);

    GraphVariant variant_ = GraphVariant::Unit;
    bool virtual_root_ = true;
    std::size_t term_count_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::vector<double> weights_;
    std::vector<Ticks> ticks_;
    std::vector<std::string> ids_;
};

/// `ic` must be given exactly when variant is DeltaIc.
TermGraph build_graph(const VocabularyIndex& vocab, GraphVariant variant, const IcTable* ic,
                      const GraphOptions& options = {});

/// Complete single-source result in ticks; kUnreachable for unreachable vertices.
std::vector<TermGraph::Ticks> shortest_path_ticks(const TermGraph& graph, TermIdx source);

/// Distances from `source` to each target; the search stops once all targets
/// are settled. Throws InputError for unknown or unreachable terms.
std::map<TermIdx, double> single_source_distances(const TermGraph& graph, TermIdx source,
                                                  std::span<const TermIdx> targets);

/// Memo of complete single-source results, one row per source term.
///
/// Safe for concurrent use. Rows are computed outside the lock and inserted
/// idempotently, so racing computations of one source converge to the same
/// row. When more than `capacity` rows are held the oldest are dropped;
/// dropping never changes any returned value.
class DistanceCache {
public:
    using Row = std::vector<double>;

    explicit DistanceCache(const TermGraph& graph, std::size_t capacity = 1u << 14);

    DistanceCache(const DistanceCache&) = delete;
    DistanceCache& operator=(const DistanceCache&) = delete;

    const TermGraph& graph() const noexcept { return graph_; }

    /// Distances from `source` to every vertex (+inf when unreachable).
    std::shared_ptr<const Row> row(TermIdx source);

    std::size_t size() const;
    std::uint64_t hits() const noexcept { return hits_.load(); }
    std::uint64_t misses() const noexcept { return misses_.load(); }
    void clear();

private:
    const TermGraph& graph_;
    std::size_t capacity_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<TermIdx, std::shared_ptr<const Row>> rows_;
    std::deque<TermIdx> insertion_order_;
    std::atomic<std::uint64_t> hits_{0};
    std::atomic<std::uint64_t> misses_{0};
};

/// Shortest-path length between two terms, memoized in `cache`.
/// Throws InputError for unknown terms and for pairs with no connecting path.
double term_distance(const TermGraph& graph, DistanceCache& cache, TermIdx a, TermIdx b);

} // namespace meshrel
