#include "meshrel/benchmark.hpp"
#include "meshrel/error.hpp"
#include "meshrel/workspace.hpp"

#include "oracles.hpp"
#include "synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace meshrel;

TEST(CliffsDelta, HandExamples)
{
    const std::vector<double> x{2, 2, 3};
    const std::vector<double> y{1, 2, 4};
    EXPECT_DOUBLE_EQ(cliffs_delta(x, y), 1.0 / 9.0);
    const std::vector<double> hi{5, 6};
    const std::vector<double> lo{1, 2, 3};
    EXPECT_EQ(cliffs_delta(hi, lo), 1.0);
    EXPECT_EQ(cliffs_delta(lo, hi), -1.0);
    EXPECT_EQ(cliffs_delta(x, x), 0.0);
    EXPECT_THROW(cliffs_delta({}, y), InputError);
    const std::vector<double> nan{std::numeric_limits<double>::quiet_NaN()};
    EXPECT_THROW(cliffs_delta(nan, y), InputError);
}

TEST(CliffsDelta, MatchesQuadraticOnIntegers)
{
    std::mt19937_64 rng(1);
    for (int round = 0; round < 500; ++round) {
        const std::size_t m = 1 + rng() % 500;
        const std::size_t n = 1 + rng() % 500;
        const int span = 1 + static_cast<int>(rng() % 12); // small spans give heavy ties
        std::uniform_int_distribution<int> value(0, span);
        std::vector<double> x(m), y(n);
        for (auto& v : x)
            v = value(rng);
        for (auto& v : y)
            v = value(rng) + (round % 3 == 0 ? 1 : 0);
        ASSERT_EQ(cliffs_delta(x, y), oracle::cliffs_delta(x, y)) << "round " << round;
    }
}

TEST(CliffsDelta, MatchesQuadraticOnFloats)
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int round = 0; round < 100; ++round) {
        const std::size_t m = 1 + rng() % 500;
        const std::size_t n = 1 + rng() % 500;
        std::vector<double> x(m), y(n);
        for (auto& v : x)
            v = normal(rng);
        for (auto& v : y)
            v = normal(rng) + 0.3;
        for (std::size_t i = 0; i < n / 4; ++i)
            y[i] = x[i % m]; // cross-list ties
        ASSERT_NEAR(cliffs_delta(x, y), oracle::cliffs_delta(x, y), 1e-12);
    }
}

TEST(CliffsDelta, AntisymmetryAndInvariances)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int round = 0; round < 50; ++round) {
        std::vector<double> x(1 + rng() % 80), y(1 + rng() % 80);
        for (auto& v : x)
            v = std::round(u(rng) * 4) / 4;
        for (auto& v : y)
            v = std::round(u(rng) * 4) / 4;
        const double d = cliffs_delta(x, y);
        EXPECT_EQ(cliffs_delta(y, x), -d);
        auto shift = [](std::vector<double> v, double c) {
            for (auto& e : v)
                e += c;
            return v;
        };
        auto transform = [](std::vector<double> v) {
            for (auto& e : v)
                e = std::exp(e) + e * e * e;
            return v;
        };
        EXPECT_EQ(cliffs_delta(shift(x, 7.25), shift(y, 7.25)), d);
        EXPECT_EQ(cliffs_delta(transform(x), transform(y)), d);
    }
}

TEST(Metrics, HandExample)
{
    const auto m = precision_recall_mcc({.tp = 3, .fp = 1, .tn = 4, .fn = 2});
    EXPECT_DOUBLE_EQ(m.precision, 0.75);
    EXPECT_DOUBLE_EQ(m.recall, 0.6);
    EXPECT_NEAR(m.mcc, 10.0 / std::sqrt(600.0), 1e-12);
    EXPECT_NEAR(m.mcc, 0.4082, 1e-4);
}

TEST(Metrics, PropertiesAndZeroDenominators)
{
    EXPECT_EQ(precision_recall_mcc({.tp = 5, .fp = 0, .tn = 7, .fn = 0}).mcc, 1.0);
    const auto zero = precision_recall_mcc({});
    EXPECT_EQ(zero.precision, 0.0);
    EXPECT_EQ(zero.recall, 0.0);
    EXPECT_EQ(zero.mcc, 0.0);
    EXPECT_EQ(precision_recall_mcc({.tp = 0, .fp = 0, .tn = 5, .fn = 5}).precision, 0.0);

    std::mt19937_64 rng(4);
    for (int round = 0; round < 1000; ++round) {
        ConfusionMatrix cm{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
        const auto m = precision_recall_mcc(cm);
        EXPECT_GE(m.mcc, -1.0);
        EXPECT_LE(m.mcc, 1.0);
        const ConfusionMatrix swapped{cm.fn, cm.tn, cm.fp, cm.tp};
        EXPECT_NEAR(precision_recall_mcc(swapped).mcc, -m.mcc, 1e-12);
    }
    ConfusionMatrix sum{1, 2, 3, 4};
    sum += ConfusionMatrix{10, 20, 30, 40};
    EXPECT_EQ(sum, (ConfusionMatrix{11, 22, 33, 44}));
}

TEST(Histogram, Binning)
{
    const std::vector<double> v{0.1, 0.1, 0.9};
    const auto h = density_histogram(v, 2, 0.0, 1.0);
    EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{2, 1}));
    EXPECT_EQ(h.overflow, 0u);
    EXPECT_EQ(h.total, 3u);
    EXPECT_NEAR(h.density(0), 2.0 / 3.0 / 0.5, 1e-12);

    const auto empty = density_histogram(std::span<const double>{}, 4, 0.0, 1.0);
    EXPECT_EQ(empty.counts, (std::vector<std::uint64_t>(4, 0)));
    EXPECT_EQ(empty.density(0), 0.0);

    const std::vector<double> edges{0.0, 1.0, 1.5, -0.1};
    const auto e = density_histogram(edges, 2, 0.0, 1.0);
    EXPECT_EQ(e.counts, (std::vector<std::uint64_t>{1, 1}));
    EXPECT_EQ(e.overflow, 2u);
    EXPECT_THROW(density_histogram(v, 0, 0.0, 1.0), InputError);
    EXPECT_THROW(density_histogram(v, 2, 1.0, 1.0), InputError);

    const std::vector<RelatednessScore> scores{{0.2, Orientation::Distance, false}, {18.0, Orientation::Distance, false}};
    const auto [lo, hi] = default_histogram_range(Orientation::Distance);
    EXPECT_EQ(hi, 17.5);
    const auto s = density_histogram(scores, 50, lo, hi);
    EXPECT_EQ(s.overflow, 1u);
    EXPECT_EQ(default_histogram_range(Orientation::Similarity), (std::pair<double, double>{0.0, 0.5}));
}

TEST(Sampling, DrawSampleIsDeterministicAndDistinct)
{
    const auto a = draw_sample(50, 10, 42, "160", 3, 0);
    EXPECT_EQ(a, draw_sample(50, 10, 42, "160", 3, 0));
    EXPECT_NE(a, draw_sample(50, 10, 42, "160", 4, 0));
    EXPECT_NE(a, draw_sample(50, 10, 42, "161", 3, 0));
    EXPECT_NE(a, draw_sample(50, 10, 43, "160", 3, 0));
    std::set<std::size_t> uniq(a.begin(), a.end());
    EXPECT_EQ(uniq.size(), 10u);
    for (auto i : a)
        EXPECT_LT(i, 50u);
    EXPECT_EQ(draw_sample(10, 10, 1, "t", 0, 1).size(), 10u);
}

namespace {

// A topic with n0 grade-0 and n2 grade-2 docs and a score per pair.
struct HandTopic {
    std::vector<PublicationRecord> records;
    TopicMatrix matrix;
};

HandTopic hand_topic(const std::string& id, std::size_t n0, std::size_t n2, Orientation o,
                     const std::function<double(Grade, Grade, std::size_t, std::size_t)>& score)
{
    HandTopic t;
    const std::size_t n = n0 + n2;
    t.records.resize(n);
    t.matrix.topic = id;
    for (std::size_t i = 0; i < n; ++i) {
        t.records[i].doc_id = id + "-" + std::to_string(i);
        t.matrix.grades.push_back(i < n0 ? Grade::NotRelevant : Grade::Relevant);
    }
    t.matrix.scores.n = n;
    t.matrix.scores.orientation = o;
    t.matrix.scores.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                const auto lo = std::min(i, j), hi = std::max(i, j);
                t.matrix.scores.values[i * n + j] = score(t.matrix.grades[lo], t.matrix.grades[hi], lo, hi);
            }
        }
    }
    return t;
}

void attach(std::vector<HandTopic>& topics, std::vector<TopicMatrix>& out)
{
    for (auto& t : topics) {
        for (auto& r : t.records)
            t.matrix.docs.push_back(&r);
        out.push_back(t.matrix);
    }
}

} // namespace

TEST(Test2, DegenerateMeasurePredictsNothingRelevant)
{
    std::vector<HandTopic> topics;
    topics.push_back(hand_topic("t", 25, 30, Orientation::Similarity, [](auto, auto, auto, auto) { return 0.5; }));
    std::vector<TopicMatrix> m;
    attach(topics, m);
    const auto r = test2_from_matrices(m, {});
    EXPECT_EQ(r.confusion.tp, 0u);
    EXPECT_EQ(r.confusion.fp, 0u);
    EXPECT_EQ(r.confusion.tn, 30u * 15);
    EXPECT_EQ(r.confusion.fn, 30u * 20);
}

TEST(Test2, OracleMeasureIsPerfect)
{
    for (auto o : {Orientation::Similarity, Orientation::Distance}) {
        std::vector<HandTopic> topics;
        topics.push_back(hand_topic("a", 14, 22, o, [o](Grade x, Grade y, auto, auto) {
            const bool same = x == y;
            return o == Orientation::Similarity ? (same ? 1.0 : 0.0) : (same ? 0.0 : 1.0);
        }));
        std::vector<TopicMatrix> m;
        attach(topics, m);
        const auto r = test2_from_matrices(m, {.seed = 9, .iterations = 5, .sample_size = 10});
        EXPECT_EQ(r.confusion.fp, 0u);
        EXPECT_EQ(r.confusion.fn, 0u);
        EXPECT_EQ(r.confusion.tp, 5u * 12);
        EXPECT_EQ(r.confusion.tn, 5u * 4);
    }
}

TEST(Test2, SmallTopicsAreSkipped)
{
    std::vector<HandTopic> topics;
    topics.push_back(hand_topic("big", 12, 12, Orientation::Similarity, [](auto, auto, auto, auto) { return 0.1; }));
    topics.push_back(hand_topic("small", 9, 40, Orientation::Similarity, [](auto, auto, auto, auto) { return 0.1; }));
    std::vector<TopicMatrix> m;
    attach(topics, m);
    const auto r = test2_from_matrices(m, {});
    EXPECT_EQ(r.skipped_topics, std::vector<std::string>{"small"});
}

TEST(Test1, DominanceAndOrientationTwin)
{
    std::vector<HandTopic> topics;
    topics.push_back(hand_topic("t", 6, 8, Orientation::Similarity, [](Grade x, Grade y, auto, auto) {
        return x == Grade::Relevant && y == Grade::Relevant ? 1.0 : 0.0;
    }));
    std::vector<TopicMatrix> m;
    attach(topics, m);
    std::vector<double> pooled;
    const auto r = test1_from_matrices(m, &pooled);
    EXPECT_EQ(r.delta, 1.0);
    EXPECT_EQ(r.n_rr, 8u * 7 / 2);
    EXPECT_EQ(r.n_nrr, 6u * 8);
    EXPECT_EQ(r.mean_rr, 1.0);
    EXPECT_EQ(r.mean_nrr, 0.0);
    EXPECT_EQ(pooled.size(), r.n_rr + r.n_nrr);

    // an arbitrary distance measure and its negation as a similarity
    std::mt19937_64 rng(5);
    std::vector<double> noise(400);
    for (auto& v : noise)
        v = static_cast<double>(rng() % 17) / 4.0;
    auto dist_fn = [&](Grade, Grade, std::size_t i, std::size_t j) { return noise[(i * 19 + j) % noise.size()]; };
    std::vector<HandTopic> dist_topics;
    dist_topics.push_back(hand_topic("d", 10, 9, Orientation::Distance, dist_fn));
    std::vector<HandTopic> twin_topics;
    twin_topics.push_back(hand_topic("d", 10, 9, Orientation::Similarity,
                                     [&](Grade a, Grade b, std::size_t i, std::size_t j) { return -dist_fn(a, b, i, j); }));
    std::vector<TopicMatrix> dm, tm;
    attach(dist_topics, dm);
    attach(twin_topics, tm);
    const auto d = test1_from_matrices(dm);
    const auto t = test1_from_matrices(tm);
    EXPECT_EQ(d.delta, t.delta);
    EXPECT_EQ(d.mean_rr, -t.mean_rr);
    EXPECT_EQ(d.mean_nrr, -t.mean_nrr);
}

class SyntheticBenchmark : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        const auto files = synthetic::benchmark_dataset(7);
        std::istringstream vin(files.vocab);
        auto vocab = parse_vocabulary(vin);
        std::istringstream cin(files.corpus);
        auto corpus = parse_corpus(cin, vocab);
        ws = new Workspace(std::move(vocab), std::move(corpus), Workspace::Options{});
        std::istringstream qin(files.qrels);
        topics = new TopicSet(filter_topics(aggregate_judgements(parse_qrels(qin))));
    }
    static void TearDownTestSuite()
    {
        delete ws;
        delete topics;
    }
    static Workspace* ws;
    static TopicSet* topics;
};

Workspace* SyntheticBenchmark::ws = nullptr;
TopicSet* SyntheticBenchmark::topics = nullptr;

TEST_F(SyntheticBenchmark, TopicFilterAndPooledCounts)
{
    ASSERT_EQ(topics->topics.size(), 9u);
    ASSERT_EQ(topics->excluded.size(), 1u);
    EXPECT_EQ(topics->excluded[0].topic, "199");
    std::size_t rr = 0, nrr = 0;
    for (const auto& t : topics->topics) {
        rr += t.counts.relevant * (t.counts.relevant - 1) / 2;
        nrr += t.counts.not_relevant * t.counts.relevant;
    }
    const auto pairs = enumerate_pairs(*topics);
    EXPECT_EQ(pairs.rr.size(), rr);
    EXPECT_EQ(pairs.nrr.size(), nrr);

    const auto m = build_topic_matrices(MeasureSpec::boudreau(), *topics, ws->corpus(), ws->bundle());
    const auto r = test1_from_matrices(m);
    EXPECT_EQ(r.n_rr, rr);
    EXPECT_EQ(r.n_nrr, nrr);
}

TEST_F(SyntheticBenchmark, Test1FromPairsMatchesMatrices)
{
    const auto pairs = enumerate_pairs(*topics);
    for (const auto& measure : {MeasureSpec::ahlgren(), MeasureSpec::distance(3, GraphVariant::DeltaIc)}) {
        const auto direct = run_test1(measure, pairs, ws->corpus(), ws->bundle());
        const auto viaM = test1_from_matrices(build_topic_matrices(measure, *topics, ws->corpus(), ws->bundle()));
        EXPECT_EQ(direct.delta, viaM.delta) << measure.name();
        EXPECT_NEAR(direct.mean_rr, viaM.mean_rr, 1e-12);
        EXPECT_NEAR(direct.mean_nrr, viaM.mean_nrr, 1e-12);
        EXPECT_GT(direct.delta, 0.0) << measure.name();
    }
}

TEST_F(SyntheticBenchmark, Test2SeedDeterminismAndStability)
{
    const auto m = MeasureSpec::ahlgren();
    const auto a = run_test2(m, *topics, ws->corpus(), ws->bundle(), {.seed = 42});
    const auto b = run_test2(m, *topics, ws->corpus(), ws->bundle(), {.seed = 42});
    const auto c = run_test2(m, *topics, ws->corpus(), ws->bundle(), {.seed = 1234});
    EXPECT_EQ(a.confusion, b.confusion);
    EXPECT_NE(a.confusion, c.confusion);
    const double tp_a = static_cast<double>(a.confusion.tp);
    const double tp_c = static_cast<double>(c.confusion.tp);
    EXPECT_LT(std::abs(tp_a - tp_c) / tp_a, 0.02);
    const auto& cm = a.confusion;
    std::uint64_t evaluated = 0;
    for (const auto& t : topics->topics)
        evaluated += t.counts.not_relevant + t.counts.relevant - 20;
    EXPECT_EQ(cm.tp + cm.fp + cm.tn + cm.fn, evaluated * 30);
}

TEST_F(SyntheticBenchmark, MissingDocsRaiseOrDrop)
{
    auto judgements = aggregate_judgements({{"x", "not-in-corpus", Grade::Relevant}});
    for (const auto& t : topics->topics)
        for (const auto& d : t.docs)
            judgements.push_back(d);
    const auto extended = filter_topics(judgements);
    EXPECT_THROW(build_topic_matrices(MeasureSpec::boudreau(), extended, ws->corpus(), ws->bundle()), InputError);
    std::size_t dropped = 0;
    build_topic_matrices(MeasureSpec::boudreau(), extended, ws->corpus(), ws->bundle(), true, &dropped);
    EXPECT_EQ(dropped, 1u);
}

TEST_F(SyntheticBenchmark, RunBenchmarkShapeAndDeterminism)
{
    const std::vector<MeasureSpec> measures{MeasureSpec::boudreau(), MeasureSpec::distance(1, GraphVariant::Unit)};
    BenchmarkOptions opt;
    opt.sampling.iterations = 3;
    const auto r1 = run_benchmark(measures, *topics, ws->corpus(), ws->bundle(), opt);
    const auto r2 = run_benchmark(measures, *topics, ws->corpus(), ws->bundle(), opt);
    ASSERT_EQ(r1.results.size(), 2u);
    EXPECT_EQ(r1.included_topics.size(), 9u);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& a = r1.results[i];
        const auto& b = r2.results[i];
        EXPECT_EQ(a.measure, measures[i]);
        EXPECT_EQ(a.test1.delta, b.test1.delta);
        EXPECT_EQ(a.test2.confusion, b.test2.confusion);
        EXPECT_EQ(a.histogram.counts, b.histogram.counts);
        EXPECT_EQ(a.histogram.total, a.test1.n_rr + a.test1.n_nrr);
        EXPECT_EQ(a.histogram.counts.size(), 50u);
    }
}
