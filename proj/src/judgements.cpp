#include "meshrel/judgements.hpp"

#include "meshrel/error.hpp"
#include "meshrel/text.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <utility>

namespace meshrel {

Grade grade_from_int(int value)
{
    if (value < 0 || value > 2)
        throw InputError("relevance grade " + std::to_string(value) + " is outside {0,1,2}");
    return static_cast<Grade>(value);
}

std::vector<PassageJudgement> parse_qrels(std::istream& in)
{
    std::vector<PassageJudgement> out;
    text::for_each_record(in, [&](std::size_t line, std::string_view rec) {
        const auto fields = text::split(rec, '\t');
        if (fields.size() != 3)
            throw ParseError(line, "expected topic_id<TAB>doc_id<TAB>grade");
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(line, "empty topic or doc id");
        int grade = -1;
        const auto g = fields[2];
        const auto [ptr, ec] = std::from_chars(g.data(), g.data() + g.size(), grade);
        if (ec != std::errc{} || ptr != g.data() + g.size())
            throw ParseError(line, "malformed grade '" + std::string(g) + "'");
        try {
            out.push_back({std::string(fields[0]), std::string(fields[1]), grade_from_int(grade)});
        } catch (const InputError& e) {
            throw ParseError(line, e.what());
        }
    });
    return out;
}

std::vector<DocJudgement> aggregate_judgements(const std::vector<PassageJudgement>& passages)
{
    std::map<std::pair<std::string, std::string>, Grade> best;
    for (const auto& p : passages) {
        if (static_cast<int>(p.grade) > 2)
            throw InputError("relevance grade outside {0,1,2}");
        auto [it, inserted] = best.emplace(std::make_pair(p.topic, p.doc_id), p.grade);
        if (!inserted)
            it->second = std::max(it->second, p.grade);
    }
    std::vector<DocJudgement> out;
    out.reserve(best.size());
    for (const auto& [key, grade] : best)
        out.push_back({key.first, key.second, grade});
    return out;
}

double TopicCounts::positive_ratio() const
{
    return total() == 0 ? 0.0 : static_cast<double>(possibly_relevant + relevant) / static_cast<double>(total());
}

double TopicCounts::not_relevant_ratio() const
{
    return total() == 0 ? 0.0 : static_cast<double>(not_relevant) / static_cast<double>(total());
}

TopicSet filter_topics(const std::vector<DocJudgement>& judgements, double threshold)
{
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw InputError("topic threshold must lie in (0, 1]");

    std::map<std::string, std::vector<DocJudgement>> by_topic;
    for (const auto& j : judgements)
        by_topic[j.topic].push_back(j);

    TopicSet set;
    for (auto& [id, docs] : by_topic) {
        std::sort(docs.begin(), docs.end(),
                  [](const DocJudgement& a, const DocJudgement& b) { return a.doc_id < b.doc_id; });
        const auto dup = std::adjacent_find(docs.begin(), docs.end(), [](const auto& a, const auto& b) {
            return a.doc_id == b.doc_id;
        });
        if (dup != docs.end())
            throw InputError("doc '" + dup->doc_id + "' judged twice for topic '" + id + "'");
        TopicCounts counts{id};
        for (const auto& d : docs) {
            switch (d.grade) {
            case Grade::NotRelevant: ++counts.not_relevant; break;
            case Grade::PossiblyRelevant: ++counts.possibly_relevant; break;
            case Grade::Relevant: ++counts.relevant; break;
            }
        }
        // both sides are correctly rounded, so a ratio that equals the decimal
        // threshold compares equal
        if (counts.total() > 0 && counts.positive_ratio() >= threshold)
            set.topics.push_back({id, std::move(docs), counts});
        else
            set.excluded.push_back(counts);
    }
    return set;
}

PairGroups enumerate_pairs(const TopicSet& topics)
{
    PairGroups groups;
    for (const auto& topic : topics.topics) {
        std::vector<const DocJudgement*> docs;
        for (const auto& d : topic.docs) {
            if (d.grade != Grade::PossiblyRelevant)
                docs.push_back(&d);
        }
        for (std::size_t i = 0; i < docs.size(); ++i) {
            for (std::size_t j = i + 1; j < docs.size(); ++j) {
                const auto gi = docs[i]->grade;
                const auto gj = docs[j]->grade;
                if (gi == Grade::Relevant && gj == Grade::Relevant)
                    groups.rr.push_back({topic.id, docs[i]->doc_id, docs[j]->doc_id});
                else if (gi != gj)
                    groups.nrr.push_back({topic.id, docs[i]->doc_id, docs[j]->doc_id});
            }
        }
    }
    return groups;
}

} // namespace meshrel
