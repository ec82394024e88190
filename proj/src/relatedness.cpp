#include "meshrel/relatedness.hpp"

#include "meshrel/error.hpp"
#include "meshrel/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace meshrel {

std::string_view to_string(Orientation o)
{
    return o == Orientation::Similarity ? "similarity" : "distance";
}

MeasureSpec MeasureSpec::boudreau()
{
    return MeasureSpec{};
}

MeasureSpec MeasureSpec::ahlgren()
{
    MeasureSpec m;
    m.style = CooccurrenceStyle::Ahlgren;
    return m;
}

MeasureSpec MeasureSpec::distance(int weighting, GraphVariant graph)
{
    if (weighting < 0 || weighting > 3)
        throw InputError("distance weighting must be 0, 1, 2 or 3");
    MeasureSpec m;
    m.family = Family::Distance;
    m.weighting = weighting;
    m.graph = graph;
    return m;
}

MeasureSpec MeasureSpec::parse(std::string_view token)
{
    if (token == "boudreau")
        return boudreau();
    if (token == "ahlgren")
        return ahlgren();
    if (token.size() == 9 || token.size() == 10) {
        // distW:unit / distW:dic
        if (token.substr(0, 4) == "dist" && token[4] >= '0' && token[4] <= '3' && token[5] == ':') {
            const auto graph = token.substr(6);
            if (graph == "unit")
                return distance(token[4] - '0', GraphVariant::Unit);
            if (graph == "dic")
                return distance(token[4] - '0', GraphVariant::DeltaIc);
        }
    }
    throw InputError("unknown measure '" + std::string(token) +
                     "' (expected boudreau, ahlgren or dist{0..3}:{unit|dic})");
}

std::string MeasureSpec::name() const
{
    if (family == Family::Cooccurrence)
        return style == CooccurrenceStyle::Boudreau ? "boudreau" : "ahlgren";
    return "dist" + std::to_string(weighting) + ":" + std::string(to_string(graph));
}

std::vector<MeasureSpec> all_measures()
{
    std::vector<MeasureSpec> out;
    for (auto g : {GraphVariant::DeltaIc, GraphVariant::Unit}) {
        for (int w : {1, 2, 3, 0})
            out.push_back(MeasureSpec::distance(w, g));
    }
    out.push_back(MeasureSpec::ahlgren());
    out.push_back(MeasureSpec::boudreau());
    return out;
}

std::vector<MeasureSpec> parse_measure_list(std::string_view list)
{
    if (list == "all")
        return all_measures();
    std::vector<MeasureSpec> out;
    for (auto tok : text::split(list, ',')) {
        auto m = MeasureSpec::parse(tok);
        if (std::find(out.begin(), out.end(), m) != out.end())
            throw InputError("measure '" + std::string(tok) + "' listed twice");
        out.push_back(m);
    }
    return out;
}

QualifierUniverse::QualifierUniverse(const Corpus& corpus)
{
    std::set<std::string> seen;
    for (const auto& rec : corpus.records()) {
        for (const auto& a : rec.annotations)
            seen.insert(a.qualifiers.begin(), a.qualifiers.end());
    }
    names_.assign(seen.begin(), seen.end());
}

std::uint64_t QualifierUniverse::index_of(std::string_view q) const
{
    const auto it = std::lower_bound(names_.begin(), names_.end(), q);
    if (it == names_.end() || *it != q)
        throw InputError("qualifier '" + std::string(q) + "' is not in the qualifier universe");
    return static_cast<std::uint64_t>(it - names_.begin());
}

double SparseVector::squared_norm() const
{
    double s = 0.0;
    for (const auto& [k, v] : entries)
        s += v * v;
    return s;
}

std::uint64_t term_coordinate(TermIdx t, const QualifierUniverse& q)
{
    return static_cast<std::uint64_t>(t) * (q.size() + 1);
}

std::uint64_t qualifier_coordinate(TermIdx t, std::uint64_t qualifier, const QualifierUniverse& q)
{
    return term_coordinate(t, q) + 1 + qualifier;
}

double dot(const SparseVector& a, const SparseVector& b)
{
    double s = 0.0;
    auto i = a.entries.begin();
    auto j = b.entries.begin();
    while (i != a.entries.end() && j != b.entries.end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            s += i->second * j->second;
            ++i;
            ++j;
        }
    }
    return s;
}

RelatednessScore sim_boudreau(const PublicationRecord& a, const PublicationRecord& b)
{
    std::size_t shared = 0;
    auto i = a.annotations.begin();
    auto j = b.annotations.begin();
    while (i != a.annotations.end() && j != b.annotations.end()) {
        if (i->term < j->term) {
            ++i;
        } else if (j->term < i->term) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    RelatednessScore s;
    s.orientation = Orientation::Similarity;
    const double denom = std::sqrt(static_cast<double>(a.size() * b.size()));
    if (denom == 0.0) {
        s.degenerate = true;
        return s;
    }
    s.value = static_cast<double>(shared) / denom;
    return s;
}

SparseVector ahlgren_vector(const PublicationRecord& p, const IcTable& ic, const QualifierUniverse& q)
{
    SparseVector v;
    for (const auto& a : p.annotations) {
        if (a.term >= ic.size())
            throw InputError("IC table has no entry for a term of record '" + p.doc_id + "'");
        const double w = a.major ? 2.0 * ic[a.term] : ic[a.term];
        if (w != 0.0)
            v.entries.emplace_back(term_coordinate(a.term, q), w);
        // qualifiers are sorted, so coordinates stay sorted
        for (const auto& name : a.qualifiers)
            v.entries.emplace_back(qualifier_coordinate(a.term, q.index_of(name), q), 1.0);
    }
    return v;
}

RelatednessScore cosine_score(const SparseVector& a, double a_norm2, const SparseVector& b, double b_norm2)
{
    RelatednessScore s;
    s.orientation = Orientation::Similarity;
    if (a_norm2 == 0.0 || b_norm2 == 0.0) {
        s.degenerate = true;
        return s;
    }
    s.value = std::clamp(dot(a, b) / std::sqrt(a_norm2 * b_norm2), 0.0, 1.0);
    return s;
}

RelatednessScore sim_ahlgren(const PublicationRecord& a, const PublicationRecord& b, const IcTable& ic,
                             const QualifierUniverse& q)
{
    const auto va = ahlgren_vector(a, ic, q);
    const auto vb = ahlgren_vector(b, ic, q);
    return cosine_score(va, va.squared_norm(), vb, vb.squared_norm());
}

WeightedTerms weighted_terms(const PublicationRecord& p, int weighting)
{
    if (weighting < 0 || weighting > 3)
        throw InputError("distance weighting must be 0, 1, 2 or 3");
    WeightedTerms out;
    if (weighting == 0) {
        for (const auto& a : p.annotations) {
            if (a.major) {
                out.terms.push_back(a.term);
                out.weights.push_back(1.0);
            }
        }
        if (out.terms.empty())
            out.fallback = true;
    }
    if (weighting != 0 || out.fallback) {
        for (const auto& a : p.annotations) {
            out.terms.push_back(a.term);
            out.weights.push_back(a.major && weighting > 0 ? static_cast<double>(weighting) : 1.0);
        }
    }
    for (double w : out.weights)
        out.weight_sum += w;
    return out;
}

double aggregate_distance(const WeightedTerms& a, const WeightedTerms& b,
                          std::span<const double* const> rows_a)
{
    if (rows_a.size() != a.terms.size())
        throw InputError("one distance row is required per term");
    std::vector<double> min_b(b.terms.size(), std::numeric_limits<double>::infinity());
    double sum_a = 0.0;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const double* row = rows_a[i];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.terms.size(); ++j) {
            const double d = row[b.terms[j]];
            best = std::min(best, d);
            min_b[j] = std::min(min_b[j], d);
        }
        if (std::isinf(best))
            throw InputError("publication terms lie in disconnected categories");
        sum_a += best * a.weights[i];
    }
    double sum_b = 0.0;
    for (std::size_t j = 0; j < b.terms.size(); ++j)
        sum_b += min_b[j] * b.weights[j];
    return (sum_a + sum_b) / (a.weight_sum + b.weight_sum);
}

RelatednessScore dist_weighted(const PublicationRecord& a, const PublicationRecord& b,
                               const TermGraph& graph, DistanceCache& cache, int weighting)
{
    if (&cache.graph() != &graph)
        throw InputError("distance cache belongs to a different graph");
    const auto wa = weighted_terms(a, weighting);
    const auto wb = weighted_terms(b, weighting);
    std::vector<std::shared_ptr<const DistanceCache::Row>> held;
    std::vector<const double*> rows;
    held.reserve(wa.terms.size());
    for (TermIdx t : wa.terms) {
        if (t >= graph.term_count())
            throw InputError("record '" + a.doc_id + "' has a term outside the graph");
        held.push_back(cache.row(t));
        rows.push_back(held.back()->data());
    }
    for (TermIdx t : wb.terms) {
        if (t >= graph.term_count())
            throw InputError("record '" + b.doc_id + "' has a term outside the graph");
    }
    RelatednessScore s;
    s.orientation = Orientation::Distance;
    s.degenerate = wa.fallback || wb.fallback;
    s.value = aggregate_distance(wa, wb, rows);
    return s;
}

RelatednessScore compute(const MeasureSpec& spec, const PublicationRecord& a, const PublicationRecord& b,
                         const IndexBundle& bundle)
{
    if (spec.family == Family::Cooccurrence) {
        if (spec.style == CooccurrenceStyle::Boudreau)
            return sim_boudreau(a, b);
        if (bundle.ic == nullptr || bundle.qualifiers == nullptr)
            throw InputError("measure ahlgren needs an IC table and a qualifier universe");
        return sim_ahlgren(a, b, *bundle.ic, *bundle.qualifiers);
    }
    DistanceCache* cache = bundle.cache_for(spec.graph);
    if (cache == nullptr)
        throw InputError("measure " + spec.name() + " needs the " + std::string(to_string(spec.graph)) +
                         " term graph");
    return dist_weighted(a, b, cache->graph(), *cache, spec.weighting);
}

} // namespace meshrel
