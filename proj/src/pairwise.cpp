#include "meshrel/pairwise.hpp"

#include "meshrel/error.hpp"
#include "meshrel/parallel.hpp"

#include <algorithm>
#include <unordered_map>

namespace meshrel {

namespace {

void check_docs(std::span<const PublicationRecord* const> docs)
{
    for (const auto* d : docs) {
        if (d == nullptr)
            throw InputError("null document in score matrix input");
    }
}

void mirror(ScoreMatrix& m, std::size_t i, std::size_t j, const RelatednessScore& s)
{
    m.values[i * m.n + j] = s.value;
    m.values[j * m.n + i] = s.value;
}

ScoreMatrix cooccurrence_matrix(const MeasureSpec& spec, std::span<const PublicationRecord* const> docs,
                                const IndexBundle& bundle)
{
    const auto n = docs.size();
    ScoreMatrix m{n, Orientation::Similarity, std::vector<double>(n * n, 0.0), 0};

    std::vector<SparseVector> vectors;
    std::vector<double> norms;
    const bool ahlgren = spec.style == CooccurrenceStyle::Ahlgren;
    if (ahlgren) {
        if (bundle.ic == nullptr || bundle.qualifiers == nullptr)
            throw InputError("measure ahlgren needs an IC table and a qualifier universe");
        vectors.resize(n);
        norms.resize(n);
        parallel_for(n, [&](std::size_t i) {
            vectors[i] = ahlgren_vector(*docs[i], *bundle.ic, *bundle.qualifiers);
            norms[i] = vectors[i].squared_norm();
        });
    }

    std::vector<std::size_t> degenerate(n, 0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto s = ahlgren ? cosine_score(vectors[i], norms[i], vectors[j], norms[j])
                                   : sim_boudreau(*docs[i], *docs[j]);
            mirror(m, i, j, s);
            degenerate[i] += s.degenerate ? 1 : 0;
        }
    });
    for (auto d : degenerate)
        m.degenerate_pairs += d;
    return m;
}

ScoreMatrix distance_matrix(const MeasureSpec& spec, std::span<const PublicationRecord* const> docs,
                            const IndexBundle& bundle)
{
    DistanceCache* cache = bundle.cache_for(spec.graph);
    if (cache == nullptr)
        throw InputError("measure " + spec.name() + " needs the " + std::string(to_string(spec.graph)) +
                         " term graph");
    const auto& graph = cache->graph();
    const auto n = docs.size();
    ScoreMatrix m{n, Orientation::Distance, std::vector<double>(n * n, 0.0), 0};

    // Local numbering of every term the documents use.
    std::vector<TermIdx> local_terms;
    for (const auto* d : docs) {
        for (const auto& a : d->annotations) {
            if (a.term >= graph.term_count())
                throw InputError("record '" + d->doc_id + "' has a term outside the graph");
            local_terms.push_back(a.term);
        }
    }
    std::sort(local_terms.begin(), local_terms.end());
    local_terms.erase(std::unique(local_terms.begin(), local_terms.end()), local_terms.end());
    std::unordered_map<TermIdx, TermIdx> to_local;
    for (TermIdx k = 0; k < local_terms.size(); ++k)
        to_local.emplace(local_terms[k], k);

    const auto t = local_terms.size();
    std::vector<double> local(t * t);
    parallel_for(t, [&](std::size_t k) {
        const auto row = cache->row(local_terms[k]);
        for (std::size_t c = 0; c < t; ++c)
            local[k * t + c] = (*row)[local_terms[c]];
    });

    std::vector<WeightedTerms> weighted(n);
    for (std::size_t i = 0; i < n; ++i) {
        weighted[i] = weighted_terms(*docs[i], spec.weighting);
        for (auto& term : weighted[i].terms)
            term = to_local.at(term);
    }

    std::vector<std::size_t> degenerate(n, 0);
    parallel_for(n, [&](std::size_t i) {
        std::vector<const double*> rows;
        rows.reserve(weighted[i].terms.size());
        for (TermIdx k : weighted[i].terms)
            rows.push_back(local.data() + static_cast<std::size_t>(k) * t);
        for (std::size_t j = i + 1; j < n; ++j) {
            RelatednessScore s;
            s.orientation = Orientation::Distance;
            s.degenerate = weighted[i].fallback || weighted[j].fallback;
            s.value = aggregate_distance(weighted[i], weighted[j], rows);
            mirror(m, i, j, s);
            degenerate[i] += s.degenerate ? 1 : 0;
        }
    });
    for (auto d : degenerate)
        m.degenerate_pairs += d;
    return m;
}

} // namespace

ScoreMatrix score_matrix(const MeasureSpec& spec, std::span<const PublicationRecord* const> docs,
                         const IndexBundle& bundle)
{
    check_docs(docs);
    return spec.family == Family::Cooccurrence ? cooccurrence_matrix(spec, docs, bundle)
                                               : distance_matrix(spec, docs, bundle);
}

ScoreMatrix score_matrix_serial(const MeasureSpec& spec, std::span<const PublicationRecord* const> docs,
                                const IndexBundle& bundle)
{
    check_docs(docs);
    const auto n = docs.size();
    ScoreMatrix m{n, spec.orientation(), std::vector<double>(n * n, 0.0), 0};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto s = compute(spec, *docs[i], *docs[j], bundle);
            mirror(m, i, j, s);
            m.degenerate_pairs += s.degenerate ? 1 : 0;
        }
    }
    return m;
}

std::vector<RelatednessScore> score_pairs(const MeasureSpec& spec, std::span<const RecordPair> pairs,
                                          const IndexBundle& bundle)
{
    std::vector<RelatednessScore> out(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        out[i] = compute(spec, *pairs[i].first, *pairs[i].second, bundle);
    });
    return out;
}

std::vector<RelatednessScore> score_pairs_serial(const MeasureSpec& spec, std::span<const RecordPair> pairs,
                                                 const IndexBundle& bundle)
{
    std::vector<RelatednessScore> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        out.push_back(compute(spec, *a, *b, bundle));
    return out;
}

} // namespace meshrel
