#include "titlegen/rank.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace titlegen {

namespace {

// Objective and consistency values closer than this are treated as tied.
constexpr double kTieTolerance = 1e-9;

struct Bags {
  NGramBag unigrams;
  NGramBag bigrams;
  double unigram_norm = 0;
  double bigram_norm = 0;
};

double norm(const NGramBag& bag) {
  double s = 0;
  for (const auto& [gram, c] : bag.counts) s += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(s);
}

Bags make_bags(std::span<const TokenId> seq) {
  Bags b;
  b.unigrams = extract_ngrams(seq, 1);
  b.bigrams = extract_ngrams(seq, 2);
  b.unigram_norm = norm(b.unigrams);
  b.bigram_norm = norm(b.bigrams);
  return b;
}

double cosine(const NGramBag& a, double na, const NGramBag& b, double nb) {
  if (a.empty() || b.empty()) return 0.0;
  const NGramBag& small = a.counts.size() <= b.counts.size() ? a : b;
  const NGramBag& large = &small == &a ? b : a;
  double dot = 0;
  for (const auto& [gram, c] : small.counts) {
    dot += static_cast<double>(c) * static_cast<double>(large.count(gram));
  }
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

double relevance(const Bags& a, const Bags& b) {
  if (!a.bigrams.empty() && !b.bigrams.empty()) {
    return cosine(a.bigrams, a.bigram_norm, b.bigrams, b.bigram_norm);
  }
  return cosine(a.unigrams, a.unigram_norm, b.unigrams, b.unigram_norm);
}

/// Index of the best entry among `eligible` by (value, consistency, -index).
std::size_t pick_best(const std::vector<std::size_t>& eligible,
                      const std::vector<double>& value,
                      const std::vector<double>& consistency) {
  double top = -INFINITY;
  for (std::size_t i : eligible) top = std::max(top, value[i]);
  std::vector<std::size_t> tied;
  double top_consistency = -INFINITY;
  for (std::size_t i : eligible) {
    if (value[i] >= top - kTieTolerance) {
      tied.push_back(i);
      top_consistency = std::max(top_consistency, consistency[i]);
    }
  }
  // `eligible` is ascending, so the first survivor has the lowest index.
  for (std::size_t i : tied) {
    if (consistency[i] >= top_consistency - kTieTolerance) return i;
  }
  return tied.front();
}

}  // namespace

std::vector<double> bigram_consistency_scores(std::span<const TokenSequence> candidates) {
  std::vector<NGramBag> bigrams;
  std::vector<NGramBag> unigrams;
  bigrams.reserve(candidates.size());
  unigrams.reserve(candidates.size());
  NGramBag global_bigrams;
  NGramBag global_unigrams;
  for (const auto& c : candidates) {
    bigrams.push_back(extract_ngrams(c, 2));
    unigrams.push_back(extract_ngrams(c, 1));
    for (const auto& [g, n] : bigrams.back().counts) global_bigrams.counts[g] += n;
    for (const auto& [g, n] : unigrams.back().counts) global_unigrams.counts[g] += n;
  }

  std::vector<double> scores(candidates.size(), 0.0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const bool use_bigrams = !bigrams[i].empty();
    const NGramBag& own = use_bigrams ? bigrams[i] : unigrams[i];
    const NGramBag& global = use_bigrams ? global_bigrams : global_unigrams;
    double weighted = 0;
    std::size_t occurrences = 0;
    for (const auto& [g, n] : own.counts) {
      weighted += static_cast<double>(n) * static_cast<double>(global.count(g));
      occurrences += n;
    }
    scores[i] = occurrences == 0 ? 0.0 : weighted / static_cast<double>(occurrences);
  }
  return scores;
}

double relevance(std::span<const TokenId> a, std::span<const TokenId> b) {
  return relevance(make_bags(a), make_bags(b));
}

RankedSelection maximal_marginal_select(std::span<const TokenSequence> candidates,
                                        const RankingConfig& config) {
  if (candidates.empty()) throw Error("empty candidate pool");
  if (config.k < 1) throw Error("ranking k must be at least 1");

  RankedSelection selection;
  selection.consistency = bigram_consistency_scores(candidates);

  std::vector<std::size_t> eligible;
  if (config.dedup) {
    std::set<TokenSequence> seen;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (seen.insert(strip_markers(candidates[i])).second) eligible.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i) eligible.push_back(i);
  }

  std::vector<Bags> bags;
  bags.reserve(candidates.size());
  for (const auto& c : candidates) bags.push_back(make_bags(c));

  const std::size_t first = pick_best(eligible, selection.consistency, selection.consistency);
  selection.indices.push_back(first);
  std::erase(eligible, first);

  std::vector<double> objective(candidates.size(), 0.0);
  while (selection.indices.size() < config.k && !eligible.empty()) {
    const std::size_t last = selection.indices.back();
    for (std::size_t i : eligible) objective[i] -= relevance(bags[i], bags[last]);
    const std::size_t next = pick_best(eligible, objective, selection.consistency);
    selection.indices.push_back(next);
    selection.marginal_objectives.push_back(objective[next]);
    std::erase(eligible, next);
  }
  return selection;
}

RankedSelection first_k_select(std::span<const TokenSequence> candidates, std::size_t k) {
  if (candidates.empty()) throw Error("empty candidate pool");
  if (k < 1) throw Error("ranking k must be at least 1");
  RankedSelection selection;
  selection.consistency = bigram_consistency_scores(candidates);
  for (std::size_t i = 0; i < std::min(k, candidates.size()); ++i) {
    selection.indices.push_back(i);
  }
  return selection;
}

double mean_pairwise_relevance(std::span<const TokenSequence> chosen) {
  if (chosen.size() < 2) return 0.0;
  double sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      sum += relevance(chosen[i], chosen[j]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

}  // namespace titlegen
