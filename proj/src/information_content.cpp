#include "meshrel/information_content.hpp"

#include "meshrel/error.hpp"
#include "meshrel/text.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

namespace meshrel {

IcUniverse parse_ic_universe(std::string_view s)
{
    if (s == "all")
        return IcUniverse::All;
    if (s == "observed")
        return IcUniverse::Observed;
    throw InputError("unknown IC universe '" + std::string(s) + "' (expected all|observed)");
}

std::string_view to_string(IcUniverse u)
{
    return u == IcUniverse::All ? "all" : "observed";
}

FrequencyTable term_frequencies(const Corpus& corpus, const VocabularyIndex& vocab)
{
    FrequencyTable f;
    f.counts.assign(vocab.size(), 0);
    f.corpus_size = corpus.size();
    for (const auto& rec : corpus.records()) {
        for (const auto& a : rec.annotations) {
            if (a.term >= vocab.size())
                throw InputError("record '" + rec.doc_id + "' references a term outside the vocabulary");
            ++f.counts[a.term];
        }
    }
    return f;
}

namespace {

void check_inputs(const VocabularyIndex& vocab, const FrequencyTable& freqs, const IcOptions& options)
{
    if (freqs.counts.size() != vocab.size())
        throw InputError("frequency table does not cover the vocabulary");
    if (!(options.log_base > 1.0) || !std::isfinite(options.log_base))
        throw InputError("IC log base must be a finite value > 1");
}

std::uint64_t raw_mass_of(const VocabularyIndex& vocab, const FrequencyTable& freqs, TermIdx t)
{
    std::uint64_t mass = freqs.counts[t];
    for (TermIdx d : vocab.descendants(t))
        mass += freqs.counts[d];
    return mass;
}

// Shared tail: the mass-to-IC step is sequential and cheap.
IcTable finish(const VocabularyIndex& vocab, const FrequencyTable& freqs,
               const IcOptions& options, const std::vector<std::uint64_t>& raw)
{
    IcTable table;
    table.options = options;
    table.frequency = freqs.counts;

    std::uint64_t z = 0;
    for (TermIdx t = 0; t < vocab.size(); ++t) {
        if (options.universe == IcUniverse::All || freqs.counts[t] > 0)
            z += raw[t];
    }
    table.denominator = z == 0 ? 1.0 : static_cast<double>(z);

    const double log_scale = std::log(options.log_base);
    table.subtree_mass.resize(vocab.size());
    table.ic.resize(vocab.size());
    for (TermIdx t = 0; t < vocab.size(); ++t) {
        const double mass = static_cast<double>(std::max<std::uint64_t>(raw[t], 1));
        table.subtree_mass[t] = mass;
        double ic = -std::log(mass / table.denominator);
        if (options.log_base != M_E)
            ic /= log_scale;
        table.ic[t] = std::max(0.0, ic);
    }
    return table;
}

} // namespace

IcTable compute_ic(const VocabularyIndex& vocab, const FrequencyTable& freqs, const IcOptions& options)
{
    check_inputs(vocab, freqs, options);
    const auto n = static_cast<std::int64_t>(vocab.size());
    std::vector<std::uint64_t> raw(vocab.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t t = 0; t < n; ++t)
        raw[t] = raw_mass_of(vocab, freqs, static_cast<TermIdx>(t));
    return finish(vocab, freqs, options, raw);
}

IcTable compute_ic_serial(const VocabularyIndex& vocab, const FrequencyTable& freqs,
                          const IcOptions& options)
{
    check_inputs(vocab, freqs, options);
    std::vector<std::uint64_t> raw(vocab.size());
    for (TermIdx t = 0; t < vocab.size(); ++t)
        raw[t] = raw_mass_of(vocab, freqs, t);
    return finish(vocab, freqs, options, raw);
}

void write_ic_dump(std::ostream& out, const VocabularyIndex& vocab, const IcTable& table)
{
    std::vector<TermIdx> order(vocab.size());
    std::iota(order.begin(), order.end(), TermIdx{0});
    std::sort(order.begin(), order.end(), [&](TermIdx a, TermIdx b) {
        return vocab.term(a).id < vocab.term(b).id;
    });
    for (TermIdx t : order) {
        out << vocab.term(t).id << '\t' << table.frequency[t] << '\t'
            << text::format_double(table.subtree_mass[t]) << '\t'
            << text::format_double(table.ic[t]) << '\n';
    }
}

} // namespace meshrel
