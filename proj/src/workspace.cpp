#include "meshrel/workspace.hpp"

namespace meshrel {

Workspace::Workspace(VocabularyIndex vocab, Corpus corpus, const Options& options)
    : options_(options), vocab_(std::move(vocab)), corpus_(std::move(corpus)),
      ic_(compute_ic(vocab_, term_frequencies(corpus_, vocab_), options.ic)), qualifiers_(corpus_)
{
    build_graphs();
}

Workspace::Workspace(VocabularyIndex vocab, Corpus corpus, IcTable ic, const Options& options)
    : options_(options), vocab_(std::move(vocab)), corpus_(std::move(corpus)), ic_(std::move(ic)),
      qualifiers_(corpus_)
{
    options_.ic = ic_.options;
    build_graphs();
}

void Workspace::build_graphs()
{
    unit_ = std::make_unique<TermGraph>(build_graph(vocab_, GraphVariant::Unit, nullptr, options_.graph));
    delta_ic_ = std::make_unique<TermGraph>(build_graph(vocab_, GraphVariant::DeltaIc, &ic_, options_.graph));
    unit_cache_ = std::make_unique<DistanceCache>(*unit_, options_.cache_rows);
    delta_ic_cache_ = std::make_unique<DistanceCache>(*delta_ic_, options_.cache_rows);
}

IndexBundle Workspace::bundle() const
{
    return IndexBundle{&ic_, &qualifiers_, unit_cache_.get(), delta_ic_cache_.get()};
}

} // namespace meshrel
