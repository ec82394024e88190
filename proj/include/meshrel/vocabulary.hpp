#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace meshrel {

/// Dense position of a term inside a VocabularyIndex (input order).
using TermIdx = std::uint32_t;

/// Dotted hierarchy code such as "C14.280.383".
class TreeNumber {
public:
    /// Throws InputError unless every dot-separated segment is a non-empty
    /// alphanumeric token.
    static TreeNumber parse(std::string_view text);

    const std::vector<std::string>& segments() const noexcept { return segments_; }
    std::size_t depth() const noexcept { return segments_.size(); }
    bool is_top_level() const noexcept { return segments_.size() == 1; }

    /// Tree number with the last segment dropped; empty for top-level numbers.
    std::optional<TreeNumber> parent() const;

    std::string str() const;

    auto operator<=>(const TreeNumber&) const = default;
    bool operator==(const TreeNumber&) const = default;

private:
    std::vector<std::string> segments_;
};

struct MeshTerm {
    std::string id;
    std::string name;
    std::vector<TreeNumber> tree_numbers;

    bool operator==(const MeshTerm&) const = default;
};

/// Immutable term table with the parent/child relation derived from
/// tree-number prefixes and the precomputed descendant closure.
class VocabularyIndex {
public:
    VocabularyIndex() = default;

    /// Validates the term list and derives the hierarchy. Throws InputError on
    /// duplicate ids, shared tree numbers, empty tree-number sets, tree numbers
    /// whose parent position is not owned by any term, and cycles.
    static VocabularyIndex build(std::vector<MeshTerm> terms);

    std::size_t size() const noexcept { return terms_.size(); }
    const MeshTerm& term(TermIdx t) const { return terms_.at(t); }
    const std::vector<MeshTerm>& terms() const noexcept { return terms_; }

    std::optional<TermIdx> find(std::string_view id) const;
    /// Throws InputError for unknown ids.
    TermIdx index_of(std::string_view id) const;

    std::span<const TermIdx> parents(TermIdx t) const { return parents_.at(t); }
    std::span<const TermIdx> children(TermIdx t) const { return children_.at(t); }
    /// Transitive closure of children(t), excluding t, sorted, no duplicates.
    std::span<const TermIdx> descendants(TermIdx t) const { return descendants_.at(t); }
    /// Terms with at least one single-segment tree number, sorted.
    const std::vector<TermIdx>& roots() const noexcept { return roots_; }

    bool operator==(const VocabularyIndex& other) const { return terms_ == other.terms_; }

private:
    std::vector<MeshTerm> terms_;
    std::unordered_map<std::string, TermIdx> by_id_;
    std::vector<std::vector<TermIdx>> parents_;
    std::vector<std::vector<TermIdx>> children_;
    std::vector<std::vector<TermIdx>> descendants_;
    std::vector<TermIdx> roots_;
};

/// Reads `id<TAB>name<TAB>tree_number(;tree_number)*` lines; '#' starts a
/// comment line. Errors carry the offending line number.
VocabularyIndex parse_vocabulary(std::istream& in);

/// Writes the index back in the same line format, in index order.
void write_vocabulary(std::ostream& out, const VocabularyIndex& vocab);

/// Descendants of the term with the given id. Throws InputError for unknown ids.
std::vector<TermIdx> descendants_of(const VocabularyIndex& vocab, std::string_view term_id);

} // namespace meshrel
