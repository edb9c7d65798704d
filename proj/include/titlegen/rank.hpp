#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "titlegen/text.hpp"

namespace titlegen {

struct RankingConfig {
  std::size_t k = 5;
  /// Drop exact duplicates (after marker stripping) before selection.
  bool dedup = true;
};

/// Picks in selection order, as indices into the pool's candidate list.
struct RankedSelection {
  std::vector<std::size_t> indices;
  /// Consistency score of every pool candidate.
  std::vector<double> consistency;
  /// Marginal objective sum(-relevance) of each pick after the first.
  std::vector<double> marginal_objectives;

  double initial_score() const {
    return indices.empty() ? 0.0 : consistency[indices.front()];
  }
};

/// Self-consistency score of each candidate: the mean, over the candidate's
/// own bigram occurrences, of that bigram's frequency across the whole pool.
/// Candidates with fewer than two tokens are scored on unigrams instead.
std::vector<double> bigram_consistency_scores(std::span<const TokenSequence> candidates);

/// Cosine similarity of bag-of-bigram count vectors, falling back to unigram
/// bags when either side has no bigram. 0 if either side is empty.
double relevance(std::span<const TokenId> a, std::span<const TokenId> b);

/// Maximal marginal selection: start from the most self-consistent candidate,
/// then repeatedly add the candidate minimizing summed relevance to the picks
/// so far. Ties go to the higher consistency score, then the lower index.
/// Throws Error("empty candidate pool") on an empty pool.
RankedSelection maximal_marginal_select(std::span<const TokenSequence> candidates,
                                        const RankingConfig& config);

/// Random nucleus sampling baseline: the first k rows of the pool.
RankedSelection first_k_select(std::span<const TokenSequence> candidates, std::size_t k);

/// Mean relevance over unordered pairs of the chosen candidates; 0 for fewer
/// than two.
double mean_pairwise_relevance(std::span<const TokenSequence> chosen);

}  // namespace titlegen
