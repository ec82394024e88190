#include "meshrel/corpus.hpp"

#include "meshrel/error.hpp"
#include "meshrel/text.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace meshrel {

bool PublicationRecord::has_major() const
{
    return std::any_of(annotations.begin(), annotations.end(),
                       [](const TermAnnotation& a) { return a.major; });
}

void Corpus::add(PublicationRecord record)
{
    if (record.annotations.empty())
        throw InputError("record '" + record.doc_id + "' has no terms");
    if (!by_id_.emplace(record.doc_id, records_.size()).second)
        throw InputError("duplicate doc id '" + record.doc_id + "'");
    records_.push_back(std::move(record));
}

const PublicationRecord* Corpus::find(std::string_view doc_id) const
{
    const auto it = by_id_.find(std::string(doc_id));
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

const PublicationRecord& Corpus::at(std::string_view doc_id) const
{
    if (const auto* r = find(doc_id))
        return *r;
    throw InputError("unknown doc id '" + std::string(doc_id) + "'");
}

PublicationRecord make_record(std::string doc_id, std::vector<TermAnnotation> raw)
{
    std::stable_sort(raw.begin(), raw.end(), [](const TermAnnotation& a, const TermAnnotation& b) {
        return a.term < b.term;
    });
    PublicationRecord rec;
    rec.doc_id = std::move(doc_id);
    for (auto& a : raw) {
        if (!rec.annotations.empty() && rec.annotations.back().term == a.term) {
            auto& merged = rec.annotations.back();
            merged.major = merged.major || a.major;
            merged.qualifiers.insert(merged.qualifiers.end(), a.qualifiers.begin(), a.qualifiers.end());
        } else {
            rec.annotations.push_back(std::move(a));
        }
    }
    for (auto& a : rec.annotations) {
        std::sort(a.qualifiers.begin(), a.qualifiers.end());
        a.qualifiers.erase(std::unique(a.qualifiers.begin(), a.qualifiers.end()), a.qualifiers.end());
    }
    return rec;
}

Corpus parse_corpus(std::istream& in, const VocabularyIndex& vocab)
{
    Corpus corpus;
    text::for_each_record(in, [&](std::size_t line, std::string_view rec) {
        const auto tab = rec.find('\t');
        if (tab == std::string_view::npos)
            throw ParseError(line, "expected doc_id<TAB>terms");
        const std::string doc_id(rec.substr(0, tab));
        if (doc_id.empty())
            throw ParseError(line, "empty doc id");
        const auto entries = rec.substr(tab + 1);
        if (entries.empty())
            throw ParseError(line, "record '" + doc_id + "' has no terms");

        std::vector<TermAnnotation> raw;
        for (auto entry : text::split(entries, ';')) {
            TermAnnotation ann;
            std::string_view term_part = entry;
            if (const auto slash = entry.find('/'); slash != std::string_view::npos) {
                term_part = entry.substr(0, slash);
                for (auto q : text::split(entry.substr(slash + 1), ',')) {
                    if (q.empty())
                        throw ParseError(line, "empty qualifier in record '" + doc_id + "'");
                    ann.qualifiers.emplace_back(q);
                }
            }
            if (!term_part.empty() && term_part.back() == '*') {
                ann.major = true;
                term_part.remove_suffix(1);
            }
            if (term_part.empty())
                throw ParseError(line, "empty term id in record '" + doc_id + "'");
            const auto t = vocab.find(term_part);
            if (!t)
                throw ParseError(line, "record '" + doc_id + "' references unknown term '" +
                                           std::string(term_part) + "'");
            ann.term = *t;
            raw.push_back(std::move(ann));
        }
        try {
            corpus.add(make_record(doc_id, std::move(raw)));
        } catch (const InputError& e) {
            throw ParseError(line, e.what());
        }
    });
    return corpus;
}

void write_corpus(std::ostream& out, const Corpus& corpus, const VocabularyIndex& vocab)
{
    for (const auto& rec : corpus.records()) {
        out << rec.doc_id << '\t';
        for (std::size_t i = 0; i < rec.annotations.size(); ++i) {
            const auto& a = rec.annotations[i];
            if (i != 0)
                out << ';';
            out << vocab.term(a.term).id;
            if (a.major)
                out << '*';
            for (std::size_t q = 0; q < a.qualifiers.size(); ++q)
                out << (q == 0 ? '/' : ',') << a.qualifiers[q];
        }
        out << '\n';
    }
}

} // namespace meshrel
