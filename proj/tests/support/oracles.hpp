#pragma once

// Brute-force reference computations. They share no code path with the
// library beyond the input data types.

#include "meshrel/corpus.hpp"
#include "meshrel/information_content.hpp"
#include "meshrel/term_graph.hpp"
#include "meshrel/vocabulary.hpp"

#include <functional>
#include <set>
#include <vector>

namespace oracle {

using meshrel::TermIdx;

/// Fixed point of repeatedly unioning children.
std::set<TermIdx> descendants(const meshrel::VocabularyIndex& vocab, TermIdx t);

/// IC recomputed per term from a scratch descendant closure.
std::vector<double> information_content(const meshrel::VocabularyIndex& vocab, const meshrel::Corpus& corpus,
                                        const meshrel::IcOptions& options = {});

/// All-pairs distances by repeated edge relaxation over double weights.
/// Vertex count = vocab.size() (+1 for the virtual root). Unreachable = +inf.
std::vector<std::vector<double>> all_pairs(const meshrel::VocabularyIndex& vocab, const std::vector<double>* ic,
                                           bool virtual_root);

/// Cliff's delta straight from the double sum.
double cliffs_delta(const std::vector<double>& x, const std::vector<double>& y);

/// Unweighted average of nearest-term distances over term sets.
double eq5(const std::vector<TermIdx>& a, const std::vector<TermIdx>& b,
           const std::function<double(TermIdx, TermIdx)>& dist);

/// Cosine of dense binary term vectors.
double binary_cosine(const meshrel::PublicationRecord& a, const meshrel::PublicationRecord& b,
                     std::size_t vocab_size);

std::vector<TermIdx> term_set(const meshrel::PublicationRecord& p, bool major_only = false);

} // namespace oracle
