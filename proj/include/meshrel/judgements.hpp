#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace meshrel {

enum class Grade : std::uint8_t {
    NotRelevant = 0,
    PossiblyRelevant = 1,
    Relevant = 2,
};

/// Throws InputError unless value is 0, 1 or 2.
Grade grade_from_int(int value);

struct PassageJudgement {
    std::string topic;
    std::string doc_id;
    Grade grade = Grade::NotRelevant;
};

/// Publication-level judgement: the maximum grade over the doc's passages.
struct DocJudgement {
    std::string topic;
    std::string doc_id;
    Grade grade = Grade::NotRelevant;

    bool operator==(const DocJudgement&) const = default;
};

/// Reads `topic_id<TAB>doc_id<TAB>grade` lines; repeated (topic, doc) lines
/// are allowed.
std::vector<PassageJudgement> parse_qrels(std::istream& in);

/// One DocJudgement per (topic, doc), sorted by topic then doc id.
std::vector<DocJudgement> aggregate_judgements(const std::vector<PassageJudgement>& passages);

struct TopicCounts {
    std::string topic;
    std::size_t not_relevant = 0;
    std::size_t possibly_relevant = 0;
    std::size_t relevant = 0;

    std::size_t total() const { return not_relevant + possibly_relevant + relevant; }
    /// Share of grade-1/2 docs among all judged docs.
    double positive_ratio() const;
    double not_relevant_ratio() const;
};

struct Topic {
    std::string id;
    std::vector<DocJudgement> docs; ///< sorted by doc id
    TopicCounts counts;
};

struct TopicSet {
    std::vector<Topic> topics;          ///< retained, sorted by id
    std::vector<TopicCounts> excluded;  ///< topics below the threshold
};

/// Keeps a topic iff (#grade1 + #grade2) / #docs >= threshold.
/// Throws InputError unless 0 < threshold <= 1.
TopicSet filter_topics(const std::vector<DocJudgement>& judgements, double threshold = 0.10);

struct DocPair {
    std::string topic;
    std::string a;
    std::string b;

    bool operator==(const DocPair&) const = default;
};

/// Same-topic pairs pooled over topics. Within a topic, docs with grade 0 or
/// 2 are taken in doc-id order and pairs (i < j) are emitted in that order.
struct PairGroups {
    std::vector<DocPair> rr;  ///< both grade 2
    std::vector<DocPair> nrr; ///< one grade 0, one grade 2
};

PairGroups enumerate_pairs(const TopicSet& topics);

} // namespace meshrel
