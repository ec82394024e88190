#include "meshrel/term_graph.hpp"

#include "meshrel/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>
#include <string>
#include <tuple>

namespace meshrel {

std::string_view to_string(GraphVariant g)
{
    return g == GraphVariant::Unit ? "unit" : "dic";
}

std::optional<TermGraph::Vertex> TermGraph::virtual_root() const
{
    if (!virtual_root_)
        return std::nullopt;
    return static_cast<Vertex>(term_count_);
}

std::span<const TermGraph::Vertex> TermGraph::neighbours(Vertex v) const
{
    return {targets_.data() + offsets_.at(v), targets_.data() + offsets_.at(v + 1)};
}

std::span<const TermGraph::Ticks> TermGraph::neighbour_ticks(Vertex v) const
{
    return {ticks_.data() + offsets_.at(v), ticks_.data() + offsets_.at(v + 1)};
}

std::vector<TermGraph::Edge> TermGraph::edges() const
{
    std::vector<Edge> out;
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
            if (u < targets_[k])
                out.push_back({u, targets_[k], weights_[k]});
        }
    }
    return out;
}

std::optional<double> TermGraph::weight(Vertex u, Vertex v) const
{
    if (u >= vertex_count() || v >= vertex_count())
        return std::nullopt;
    const auto nb = neighbours(u);
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v)
        return std::nullopt;
    return weights_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

TermGraph build_graph(const VocabularyIndex& vocab, GraphVariant variant, const IcTable* ic,
                      const GraphOptions& options)
{
    if (variant == GraphVariant::DeltaIc && ic == nullptr)
        throw InputError("the IC-weighted graph requires an IC table");
    if (variant == GraphVariant::Unit && ic != nullptr)
        throw InputError("the unit graph takes no IC table");
    if (ic != nullptr && ic->size() != vocab.size())
        throw InputError("IC table does not cover the vocabulary");

    TermGraph g;
    g.variant_ = variant;
    g.virtual_root_ = options.virtual_root;
    g.term_count_ = vocab.size();
    g.ids_.reserve(vocab.size());
    for (const auto& term : vocab.terms())
        g.ids_.push_back(term.id);

    const auto n_vertices = vocab.size() + (options.virtual_root ? 1 : 0);
    // (neighbour, weight) per vertex
    std::vector<std::vector<std::pair<TermGraph::Vertex, double>>> adj(n_vertices);
    auto ic_of = [&](std::size_t v) { return v < vocab.size() ? (*ic)[static_cast<TermIdx>(v)] : 0.0; };
    auto add_edge = [&](std::size_t u, std::size_t v) {
        const double w = variant == GraphVariant::Unit ? 1.0 : std::fabs(ic_of(u) - ic_of(v));
        adj[u].emplace_back(static_cast<TermGraph::Vertex>(v), w);
        adj[v].emplace_back(static_cast<TermGraph::Vertex>(u), w);
    };
    for (TermIdx c = 0; c < vocab.size(); ++c) {
        for (TermIdx p : vocab.parents(c))
            add_edge(p, c);
    }
    if (options.virtual_root) {
        for (TermIdx r : vocab.roots())
            add_edge(vocab.size(), r);
    }

    g.offsets_.assign(1, 0);
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        for (const auto& [v, w] : list) {
            g.targets_.push_back(v);
            g.weights_.push_back(w);
            g.ticks_.push_back(variant == GraphVariant::Unit
                                   ? TermGraph::Ticks{1}
                                   : static_cast<TermGraph::Ticks>(std::llround(w / TermGraph::kDeltaIcTick)));
        }
        g.offsets_.push_back(g.targets_.size());
    }
    return g;
}

namespace {

using Ticks = TermGraph::Ticks;
using Vertex = TermGraph::Vertex;

void check_term(const TermGraph& graph, TermIdx t)
{
    if (t >= graph.term_count())
        throw InputError("term index " + std::to_string(t) + " is not in the graph");
}

// Settles vertices in order of distance. `visit` returns false to stop early.
template <typename Visit>
std::vector<Ticks> search(const TermGraph& graph, Vertex source, Visit&& visit)
{
    std::vector<Ticks> dist(graph.vertex_count(), TermGraph::kUnreachable);
    dist[source] = 0;

    if (graph.variant() == GraphVariant::Unit) {
        std::vector<Vertex> frontier{source};
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const Vertex u = frontier[head];
            if (!visit(u))
                break;
            for (Vertex v : graph.neighbours(u)) {
                if (dist[v] == TermGraph::kUnreachable) {
                    dist[v] = dist[u] + 1;
                    frontier.push_back(v);
                }
            }
        }
        return dist;
    }

    using Item = std::pair<Ticks, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::vector<bool> settled(graph.vertex_count(), false);
    queue.emplace(0, source);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[u])
            continue;
        settled[u] = true;
        if (!visit(u))
            break;
        const auto nb = graph.neighbours(u);
        const auto w = graph.neighbour_ticks(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const Ticks cand = d + w[k];
            if (cand < dist[nb[k]]) {
                dist[nb[k]] = cand;
                queue.emplace(cand, nb[k]);
            }
        }
    }
    return dist;
}

[[noreturn]] void throw_unreachable(const TermGraph& graph, TermIdx a, TermIdx b)
{
    throw InputError("no path between terms '" + std::string(graph.term_id(a)) + "' and '" +
                     std::string(graph.term_id(b)) + "' (disconnected categories)");
}

} // namespace

std::vector<TermGraph::Ticks> shortest_path_ticks(const TermGraph& graph, TermIdx source)
{
    check_term(graph, source);
    return search(graph, source, [](Vertex) { return true; });
}

std::map<TermIdx, double> single_source_distances(const TermGraph& graph, TermIdx source,
                                                  std::span<const TermIdx> targets)
{
    check_term(graph, source);
    std::vector<bool> wanted(graph.vertex_count(), false);
    std::size_t remaining = 0;
    for (TermIdx t : targets) {
        check_term(graph, t);
        if (!wanted[t]) {
            wanted[t] = true;
            ++remaining;
        }
    }
    std::map<TermIdx, double> out;
    if (remaining == 0)
        return out;

    const auto dist = search(graph, source, [&](Vertex u) {
        if (wanted[u])
            --remaining;
        return remaining > 0;
    });
    for (TermIdx t : targets) {
        if (dist[t] == TermGraph::kUnreachable)
            throw_unreachable(graph, source, t);
        out[t] = static_cast<double>(dist[t]) * graph.tick();
    }
    return out;
}

DistanceCache::DistanceCache(const TermGraph& graph, std::size_t capacity)
    : graph_(graph), capacity_(std::max<std::size_t>(capacity, 1))
{
}

std::shared_ptr<const DistanceCache::Row> DistanceCache::row(TermIdx source)
{
    {
        std::shared_lock lock(mutex_);
        if (const auto it = rows_.find(source); it != rows_.end()) {
            ++hits_;
            return it->second;
        }
    }
    ++misses_;
    const auto ticks = shortest_path_ticks(graph_, source);
    auto fresh = std::make_shared<Row>(ticks.size());
    const double tick = graph_.tick();
    for (std::size_t v = 0; v < ticks.size(); ++v) {
        (*fresh)[v] = ticks[v] == TermGraph::kUnreachable ? std::numeric_limits<double>::infinity()
                                                          : static_cast<double>(ticks[v]) * tick;
    }

    std::unique_lock lock(mutex_);
    auto [it, inserted] = rows_.emplace(source, std::move(fresh));
    if (inserted) {
        insertion_order_.push_back(source);
        while (rows_.size() > capacity_) {
            rows_.erase(insertion_order_.front());
            insertion_order_.pop_front();
        }
        // the row just inserted is never the oldest while capacity >= 1
        return rows_.at(source);
    }
    return it->second;
}

std::size_t DistanceCache::size() const
{
    std::shared_lock lock(mutex_);
    return rows_.size();
}

void DistanceCache::clear()
{
    std::unique_lock lock(mutex_);
    rows_.clear();
    insertion_order_.clear();
}

double term_distance(const TermGraph& graph, DistanceCache& cache, TermIdx a, TermIdx b)
{
    check_term(graph, a);
    check_term(graph, b);
    if (&cache.graph() != &graph)
        throw InputError("distance cache belongs to a different graph");
    if (a == b)
        return 0.0;
    const double d = (*cache.row(a))[b];
    if (std::isinf(d))
        throw_unreachable(graph, a, b);
    return d;
}

} // namespace meshrel
