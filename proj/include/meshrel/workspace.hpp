#pragma once

#include "meshrel/corpus.hpp"
#include "meshrel/information_content.hpp"
#include "meshrel/relatedness.hpp"
#include "meshrel/term_graph.hpp"
#include "meshrel/vocabulary.hpp"

#include <iosfwd>
#include <memory>
#include <string>

namespace meshrel {

/// Everything the ten measures need, built once from a vocabulary and a
/// corpus: IC table, qualifier universe, both term graphs and their caches.
class Workspace {
public:
    struct Options {
        IcOptions ic;
        GraphOptions graph;
        std::size_t cache_rows = 4096;
    };

    Workspace(VocabularyIndex vocab, Corpus corpus, const Options& options);
    /// Uses a precomputed IC table instead of recomputing it.
    Workspace(VocabularyIndex vocab, Corpus corpus, IcTable ic, const Options& options);

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    const VocabularyIndex& vocab() const noexcept { return vocab_; }
    const Corpus& corpus() const noexcept { return corpus_; }
    const IcTable& ic() const noexcept { return ic_; }
    const QualifierUniverse& qualifiers() const noexcept { return qualifiers_; }
    const TermGraph& graph(GraphVariant g) const { return g == GraphVariant::Unit ? *unit_ : *delta_ic_; }
    const Options& options() const noexcept { return options_; }

    IndexBundle bundle() const;

private:
    void build_graphs();

    Options options_;
    VocabularyIndex vocab_;
    Corpus corpus_;
    IcTable ic_;
    QualifierUniverse qualifiers_;
    std::unique_ptr<TermGraph> unit_;
    std::unique_ptr<TermGraph> delta_ic_;
    std::unique_ptr<DistanceCache> unit_cache_;
    std::unique_ptr<DistanceCache> delta_ic_cache_;
};

inline constexpr char kIndexMagic[8] = {'M', 'E', 'S', 'H', 'R', 'E', 'L', 'X'};
inline constexpr std::uint32_t kIndexVersion = 1;

/// Binary index: magic, format version, payload length, payload, CRC-32 of
/// the payload. The payload holds the vocabulary, corpus, IC table and the
/// IC/graph options; graphs are rebuilt on load.
void save_index(std::ostream& out, const Workspace& ws);
void save_index(const std::string& path, const Workspace& ws);

/// Throws InputError on a bad magic string, version mismatch, truncation or
/// checksum failure.
std::unique_ptr<Workspace> load_index(std::istream& in, std::size_t cache_rows = 4096);
std::unique_ptr<Workspace> load_index(const std::string& path, std::size_t cache_rows = 4096);

} // namespace meshrel
