#include "meshrel/benchmark.hpp"

#include "meshrel/error.hpp"
#include "meshrel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace meshrel {

double cliffs_delta(std::span<const double> x, std::span<const double> y)
{
    if (x.empty() || y.empty())
        throw InputError("Cliff's delta needs two non-empty samples");
    auto has_nan = [](std::span<const double> v) {
        return std::any_of(v.begin(), v.end(), [](double d) { return std::isnan(d); });
    };
    if (has_nan(x) || has_nan(y))
        throw InputError("Cliff's delta input contains NaN");

    std::vector<double> sorted_y(y.begin(), y.end());
    std::sort(sorted_y.begin(), sorted_y.end());
    const auto n = static_cast<std::int64_t>(sorted_y.size());
    std::int64_t dominance = 0;
    for (double xi : x) {
        const auto below = std::lower_bound(sorted_y.begin(), sorted_y.end(), xi) - sorted_y.begin();
        const auto above = n - (std::upper_bound(sorted_y.begin(), sorted_y.end(), xi) - sorted_y.begin());
        dominance += below - above;
    }
    return static_cast<double>(dominance) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o)
{
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
}

ClassificationMetrics precision_recall_mcc(const ConfusionMatrix& cm)
{
    const auto tp = static_cast<double>(cm.tp);
    const auto fp = static_cast<double>(cm.fp);
    const auto tn = static_cast<double>(cm.tn);
    const auto fn = static_cast<double>(cm.fn);
    ClassificationMetrics m;
    if (cm.tp + cm.fp > 0)
        m.precision = tp / (tp + fp);
    if (cm.tp + cm.fn > 0)
        m.recall = tp / (tp + fn);
    const double denom = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    if (denom > 0.0)
        m.mcc = std::clamp((tp * tn - fp * fn) / denom, -1.0, 1.0);
    return m;
}

double Histogram::bin_lo(std::size_t k) const
{
    return lo + bin_width() * static_cast<double>(k);
}

double Histogram::bin_hi(std::size_t k) const
{
    return k + 1 == counts.size() ? hi : lo + bin_width() * static_cast<double>(k + 1);
}

double Histogram::density(std::size_t k) const
{
    if (total == 0)
        return 0.0;
    return static_cast<double>(counts[k]) / (static_cast<double>(total) * bin_width());
}

Histogram density_histogram(std::span<const double> values, std::size_t bins, double lo, double hi)
{
    if (bins == 0)
        throw InputError("histogram needs at least one bin");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InputError("histogram range must satisfy lo < hi");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    const double width = h.bin_width();
    for (double v : values) {
        ++h.total;
        if (!(v >= lo && v <= hi)) {
            ++h.overflow;
            continue;
        }
        auto k = static_cast<std::size_t>((v - lo) / width);
        ++h.counts[std::min(k, bins - 1)];
    }
    return h;
}

Histogram density_histogram(std::span<const RelatednessScore> scores, std::size_t bins, double lo, double hi)
{
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& s : scores)
        values.push_back(s.value);
    return density_histogram(values, bins, lo, hi);
}

std::pair<double, double> default_histogram_range(Orientation o)
{
    return o == Orientation::Similarity ? std::pair{0.0, 0.5} : std::pair{0.0, 17.5};
}

namespace {

double oriented(Orientation o, double v)
{
    return o == Orientation::Similarity ? v : -v;
}

Test1Result summarize_test1(Orientation o, const std::vector<double>& nrr, const std::vector<double>& rr)
{
    if (nrr.empty() || rr.empty())
        throw InputError("test 1 needs at least one rr pair and one nr-r pair");
    Test1Result r;
    r.n_nrr = nrr.size();
    r.n_rr = rr.size();
    r.mean_nrr = std::accumulate(nrr.begin(), nrr.end(), 0.0) / static_cast<double>(nrr.size());
    r.mean_rr = std::accumulate(rr.begin(), rr.end(), 0.0) / static_cast<double>(rr.size());
    std::vector<double> x(rr.size());
    std::vector<double> y(nrr.size());
    std::transform(rr.begin(), rr.end(), x.begin(), [o](double v) { return oriented(o, v); });
    std::transform(nrr.begin(), nrr.end(), y.begin(), [o](double v) { return oriented(o, v); });
    r.delta = cliffs_delta(x, y);
    return r;
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Unbiased integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound)
{
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        const std::uint64_t v = gen();
        if (v < limit)
            return v % bound;
    }
}

} // namespace

std::vector<std::size_t> draw_sample(std::size_t pool, std::size_t k, std::uint64_t seed,
                                     std::string_view topic, int iteration, int stream)
{
    if (k > pool)
        throw InputError("sample larger than its pool");
    const std::uint64_t th = fnv1a(topic);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(th), static_cast<std::uint32_t>(th >> 32),
                      static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(stream)};
    std::mt19937_64 gen(seq);
    std::vector<std::size_t> idx(pool);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(bounded(gen, pool - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

Test1Result run_test1(const MeasureSpec& measure, const PairGroups& pairs, const Corpus& corpus,
                      const IndexBundle& bundle)
{
    auto resolve = [&](const std::vector<DocPair>& group) {
        std::vector<RecordPair> out;
        out.reserve(group.size());
        for (const auto& p : group)
            out.emplace_back(&corpus.at(p.a), &corpus.at(p.b));
        return out;
    };
    auto values = [&](const std::vector<DocPair>& group) {
        const auto resolved = resolve(group);
        const auto scores = score_pairs(measure, resolved, bundle);
        std::vector<double> v;
        v.reserve(scores.size());
        for (const auto& s : scores)
            v.push_back(s.value);
        return v;
    };
    return summarize_test1(measure.orientation(), values(pairs.nrr), values(pairs.rr));
}

std::vector<TopicMatrix> build_topic_matrices(const MeasureSpec& measure, const TopicSet& topics,
                                              const Corpus& corpus, const IndexBundle& bundle,
                                              bool drop_unindexed, std::size_t* dropped)
{
    std::size_t missing = 0;
    std::vector<TopicMatrix> out;
    out.reserve(topics.topics.size());
    for (const auto& topic : topics.topics) {
        TopicMatrix tm;
        tm.topic = topic.id;
        for (const auto& d : topic.docs) {
            if (d.grade == Grade::PossiblyRelevant)
                continue;
            const auto* rec = corpus.find(d.doc_id);
            if (rec == nullptr) {
                if (!drop_unindexed)
                    throw InputError("doc '" + d.doc_id + "' judged for topic '" + topic.id +
                                     "' is not in the corpus");
                ++missing;
                continue;
            }
            tm.docs.push_back(rec);
            tm.grades.push_back(d.grade);
        }
        tm.scores = score_matrix(measure, tm.docs, bundle);
        out.push_back(std::move(tm));
    }
    if (dropped != nullptr)
        *dropped = missing;
    return out;
}

Test1Result test1_from_matrices(const std::vector<TopicMatrix>& matrices, std::vector<double>* pooled_values)
{
    std::vector<double> nrr;
    std::vector<double> rr;
    Orientation o = Orientation::Similarity;
    for (const auto& tm : matrices) {
        o = tm.scores.orientation;
        const auto n = tm.docs.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto gi = tm.grades[i];
                const auto gj = tm.grades[j];
                if (gi == Grade::Relevant && gj == Grade::Relevant)
                    rr.push_back(tm.scores(i, j));
                else if (gi != gj)
                    nrr.push_back(tm.scores(i, j));
            }
        }
    }
    if (pooled_values != nullptr) {
        pooled_values->assign(nrr.begin(), nrr.end());
        pooled_values->insert(pooled_values->end(), rr.begin(), rr.end());
    }
    return summarize_test1(o, nrr, rr);
}

Test2Result test2_from_matrices(const std::vector<TopicMatrix>& matrices, const SamplingOptions& options)
{
    if (options.iterations < 1)
        throw InputError("test 2 needs at least one iteration");
    if (options.sample_size < 1)
        throw InputError("test 2 needs a sample size of at least 1");

    Test2Result result;
    struct Eligible {
        const TopicMatrix* tm;
        std::vector<std::size_t> relevant;
        std::vector<std::size_t> not_relevant;
    };
    std::vector<Eligible> eligible;
    for (const auto& tm : matrices) {
        Eligible e{&tm, {}, {}};
        for (std::size_t i = 0; i < tm.docs.size(); ++i)
            (tm.grades[i] == Grade::Relevant ? e.relevant : e.not_relevant).push_back(i);
        if (e.relevant.size() < options.sample_size || e.not_relevant.size() < options.sample_size)
            result.skipped_topics.push_back(tm.topic);
        else
            eligible.push_back(std::move(e));
    }
    if (eligible.empty())
        throw InputError("no topic has enough relevant and not-relevant docs for test 2");

    const auto iterations = static_cast<std::size_t>(options.iterations);
    std::vector<ConfusionMatrix> cells(eligible.size() * iterations);
    parallel_for(cells.size(), [&](std::size_t cell) {
        const auto& e = eligible[cell / iterations];
        const int iteration = static_cast<int>(cell % iterations);
        const auto& tm = *e.tm;
        const auto o = tm.scores.orientation;

        std::vector<std::size_t> r_sample;
        std::vector<std::size_t> nr_sample;
        for (auto k : draw_sample(e.relevant.size(), options.sample_size, options.seed, tm.topic, iteration, 0))
            r_sample.push_back(e.relevant[k]);
        for (auto k : draw_sample(e.not_relevant.size(), options.sample_size, options.seed, tm.topic, iteration, 1))
            nr_sample.push_back(e.not_relevant[k]);
        std::vector<bool> sampled(tm.docs.size(), false);
        for (auto i : r_sample)
            sampled[i] = true;
        for (auto i : nr_sample)
            sampled[i] = true;

        auto best = [&](std::size_t i, const std::vector<std::size_t>& sample) {
            double b = -std::numeric_limits<double>::infinity();
            for (auto s : sample)
                b = std::max(b, oriented(o, tm.scores(i, s)));
            return b;
        };

        ConfusionMatrix cm;
        for (std::size_t i = 0; i < tm.docs.size(); ++i) {
            if (sampled[i])
                continue;
            const bool predicted = best(i, r_sample) > best(i, nr_sample);
            const bool actual = tm.grades[i] == Grade::Relevant;
            if (predicted)
                ++(actual ? cm.tp : cm.fp);
            else
                ++(actual ? cm.fn : cm.tn);
        }
        cells[cell] = cm;
    });
    for (const auto& c : cells)
        result.confusion += c;
    return result;
}

Test2Result run_test2(const MeasureSpec& measure, const TopicSet& topics, const Corpus& corpus,
                      const IndexBundle& bundle, const SamplingOptions& options)
{
    return test2_from_matrices(build_topic_matrices(measure, topics, corpus, bundle), options);
}

BenchmarkReport run_benchmark(const std::vector<MeasureSpec>& measures, const TopicSet& topics,
                              const Corpus& corpus, const IndexBundle& bundle, const BenchmarkOptions& options)
{
    if (measures.empty())
        throw InputError("no measures selected");
    BenchmarkReport report;
    report.options = options;
    for (const auto& t : topics.topics)
        report.included_topics.push_back(t.counts);
    report.excluded_topics = topics.excluded;

    for (const auto& m : measures) {
        std::size_t dropped = 0;
        const auto matrices = build_topic_matrices(m, topics, corpus, bundle, options.drop_unindexed, &dropped);
        report.dropped_judgements = dropped;

        MeasureResult r;
        r.measure = m;
        std::vector<double> pooled;
        r.test1 = test1_from_matrices(matrices, &pooled);
        r.test2 = test2_from_matrices(matrices, options.sampling);
        r.metrics = precision_recall_mcc(r.test2.confusion);
        auto [lo, hi] = default_histogram_range(m.orientation());
        if (options.histogram_lo < options.histogram_hi) {
            lo = options.histogram_lo;
            hi = options.histogram_hi;
        }
        r.histogram = density_histogram(std::span<const double>(pooled), options.histogram_bins, lo, hi);
        for (const auto& tm : matrices)
            r.degenerate_pairs += tm.scores.degenerate_pairs;
        report.results.push_back(std::move(r));
    }
    return report;
}

} // namespace meshrel
