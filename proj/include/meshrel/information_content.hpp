#pragma once

#include "meshrel/corpus.hpp"
#include "meshrel/vocabulary.hpp"

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace meshrel {

/// Document frequency per term, indexed by TermIdx. Unused terms count 0.
struct FrequencyTable {
    std::vector<std::uint64_t> counts;
    std::uint64_t corpus_size = 0;

    bool operator==(const FrequencyTable&) const = default;
};

/// Which terms contribute to the normalizing denominator.
enum class IcUniverse : std::uint8_t {
    All,      ///< every vocabulary term
    Observed, ///< only terms that index at least one publication
};

struct IcOptions {
    double log_base = M_E;
    IcUniverse universe = IcUniverse::All;

    bool operator==(const IcOptions&) const = default;
};

IcUniverse parse_ic_universe(std::string_view s);
std::string_view to_string(IcUniverse u);

/// Information content per term.
///   raw_mass(t)     = #(t) + sum of #(d) over descendants d
///   subtree_mass(t) = max(raw_mass(t), 1)
///   Z               = sum of raw_mass over the universe (1 if zero)
///   ic(t)           = max(0, -log(subtree_mass(t) / Z))
struct IcTable {
    IcOptions options;
    std::vector<std::uint64_t> frequency;
    std::vector<double> subtree_mass;
    std::vector<double> ic;
    double denominator = 1.0;

    std::size_t size() const noexcept { return ic.size(); }
    double operator[](TermIdx t) const { return ic[t]; }

    bool operator==(const IcTable&) const = default;
};

FrequencyTable term_frequencies(const Corpus& corpus, const VocabularyIndex& vocab);

/// OpenMP over terms; output does not depend on the thread count.
IcTable compute_ic(const VocabularyIndex& vocab, const FrequencyTable& freqs,
                   const IcOptions& options = {});

/// Single-threaded reference for compute_ic.
IcTable compute_ic_serial(const VocabularyIndex& vocab, const FrequencyTable& freqs,
                          const IcOptions& options = {});

/// `term_id<TAB>frequency<TAB>subtree_mass<TAB>ic`, sorted by term id.
void write_ic_dump(std::ostream& out, const VocabularyIndex& vocab, const IcTable& table);

} // namespace meshrel
