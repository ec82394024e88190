#include "meshrel/error.hpp"
#include "meshrel/judgements.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace meshrel;

namespace {

std::vector<DocJudgement> docs_for(const std::string& topic, std::size_t g0, std::size_t g1, std::size_t g2)
{
    std::vector<DocJudgement> out;
    std::size_t k = 0;
    auto add = [&](std::size_t n, Grade g) {
        for (std::size_t i = 0; i < n; ++i)
            out.push_back({topic, topic + "-" + std::to_string(1000 + k++), g});
    };
    add(g0, Grade::NotRelevant);
    add(g1, Grade::PossiblyRelevant);
    add(g2, Grade::Relevant);
    return out;
}

} // namespace

TEST(Grades, FromInt)
{
    EXPECT_EQ(grade_from_int(0), Grade::NotRelevant);
    EXPECT_EQ(grade_from_int(2), Grade::Relevant);
    EXPECT_THROW(grade_from_int(3), InputError);
    EXPECT_THROW(grade_from_int(-1), InputError);
}

TEST(ParseQrels, ReadsAndRejects)
{
    std::istringstream in("# passages\n160\td1\t2\n160\td1\t0\n161\td2\t1\r\n");
    const auto p = parse_qrels(in);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p[2].topic, "161");
    EXPECT_EQ(p[2].grade, Grade::PossiblyRelevant);

    std::istringstream bad_grade("160\td1\t5\n");
    EXPECT_THROW(parse_qrels(bad_grade), ParseError);
    std::istringstream bad_cols("160\td1\n");
    EXPECT_THROW(parse_qrels(bad_cols), ParseError);
    std::istringstream not_number("160\td1\tx\n");
    try {
        parse_qrels(not_number);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
}

TEST(Aggregate, MaxGradePerDoc)
{
    const std::vector<PassageJudgement> p{
        {"160", "d1", Grade::NotRelevant},
        {"160", "d1", Grade::Relevant},
        {"160", "d1", Grade::PossiblyRelevant},
        {"160", "d2", Grade::NotRelevant},
        {"159", "d1", Grade::PossiblyRelevant},
    };
    const auto d = aggregate_judgements(p);
    const std::vector<DocJudgement> expected{
        {"159", "d1", Grade::PossiblyRelevant},
        {"160", "d1", Grade::Relevant},
        {"160", "d2", Grade::NotRelevant},
    };
    EXPECT_EQ(d, expected);
}

TEST(FilterTopics, Topic181IsRetained)
{
    const auto t = filter_topics(docs_for("181", 122, 38, 182));
    ASSERT_EQ(t.topics.size(), 1u);
    const auto& c = t.topics[0].counts;
    EXPECT_EQ(c.total(), 342u);
    EXPECT_DOUBLE_EQ(c.positive_ratio(), 220.0 / 342.0);
    EXPECT_DOUBLE_EQ(c.not_relevant_ratio(), 122.0 / 342.0);
}

TEST(FilterTopics, ThresholdBoundary)
{
    auto j = docs_for("a", 9, 0, 1);   // exactly 10%
    auto below = docs_for("b", 95, 0, 5);
    j.insert(j.end(), below.begin(), below.end());
    const auto t = filter_topics(j, 0.10);
    ASSERT_EQ(t.topics.size(), 1u);
    EXPECT_EQ(t.topics[0].id, "a");
    ASSERT_EQ(t.excluded.size(), 1u);
    EXPECT_EQ(t.excluded[0].topic, "b");
    EXPECT_THROW(filter_topics(j, 0.0), InputError);
    EXPECT_THROW(filter_topics(j, 1.5), InputError);
}

TEST(FilterTopics, DuplicateDocRejected)
{
    std::vector<DocJudgement> j{{"a", "d", Grade::Relevant}, {"a", "d", Grade::NotRelevant}};
    EXPECT_THROW(filter_topics(j), InputError);
}

TEST(EnumeratePairs, CountsAndOrder)
{
    auto j = docs_for("t1", 4, 3, 5);
    auto j2 = docs_for("t2", 2, 0, 3);
    j.insert(j.end(), j2.begin(), j2.end());
    const auto t = filter_topics(j);
    const auto pairs = enumerate_pairs(t);
    EXPECT_EQ(pairs.rr.size(), 5u * 4 / 2 + 3u * 2 / 2);
    EXPECT_EQ(pairs.nrr.size(), 4u * 5 + 2u * 3);
    for (const auto& p : pairs.rr) {
        EXPECT_LT(p.a, p.b);
        EXPECT_EQ(p.a.substr(0, p.topic.size()), p.topic);
    }
    for (const auto& p : pairs.nrr)
        EXPECT_LT(p.a, p.b);
    EXPECT_EQ(pairs.rr.front().topic, "t1");
    EXPECT_EQ(pairs.rr.back().topic, "t2");
}

TEST(EnumeratePairs, GradeOneDocsNeverPaired)
{
    const auto t = filter_topics(docs_for("x", 0, 6, 0));
    const auto pairs = enumerate_pairs(t);
    EXPECT_TRUE(pairs.rr.empty());
    EXPECT_TRUE(pairs.nrr.empty());
}
