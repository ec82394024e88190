#pragma once

#include "meshrel/vocabulary.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace meshrel {

struct TermAnnotation {
    TermIdx term = 0;
    bool major = false;
    /// Sorted, no duplicates. Qualifiers are opaque tokens.
    std::vector<std::string> qualifiers;

    bool operator==(const TermAnnotation&) const = default;
};

/// One indexed publication. Annotations are sorted by term index, one per
/// term, and never empty.
struct PublicationRecord {
    std::string doc_id;
    std::vector<TermAnnotation> annotations;

    std::size_t size() const noexcept { return annotations.size(); }
    bool has_major() const;

    bool operator==(const PublicationRecord&) const = default;
};

class Corpus {
public:
    /// Throws InputError on duplicate doc ids or empty records.
    void add(PublicationRecord record);

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    const std::vector<PublicationRecord>& records() const noexcept { return records_; }

    const PublicationRecord* find(std::string_view doc_id) const;
    /// Throws InputError for unknown doc ids.
    const PublicationRecord& at(std::string_view doc_id) const;

    bool operator==(const Corpus& other) const { return records_ == other.records_; }

private:
    std::vector<PublicationRecord> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

/// Builds a record from raw (possibly repeated) annotations: repeated terms are
/// merged with qualifier sets unioned and major = OR of the flags.
PublicationRecord make_record(std::string doc_id, std::vector<TermAnnotation> raw);

/// Reads `doc_id<TAB>term_entry(;term_entry)*` lines where
/// term_entry = `term_id[*][/qualifier(,qualifier)*]`.
Corpus parse_corpus(std::istream& in, const VocabularyIndex& vocab);

void write_corpus(std::ostream& out, const Corpus& corpus, const VocabularyIndex& vocab);

} // namespace meshrel
