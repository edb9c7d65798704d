#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "titlegen/text.hpp"

namespace titlegen {

// All scores are on a 0-100 scale and computed on marker-stripped tokens.
// Every metric throws Error when the reference is empty.

/// Sentence BLEU over 1-4-grams with uniform weights. Precisions for n >= 2
/// use add-one smoothing on both the clipped matches and the total count;
/// the unigram precision is unsmoothed. Brevity penalty min(1, exp(1 - r/c)).
double bleus4(std::span<const TokenId> candidate, std::span<const TokenId> reference);

/// F1 of clipped n-gram overlap. Identical texts score 100 at any n.
double rouge_n(std::span<const TokenId> candidate, std::span<const TokenId> reference,
               std::size_t n);

/// F1 from the longest common subsequence.
double rouge_l(std::span<const TokenId> candidate, std::span<const TokenId> reference);

std::size_t lcs_length(std::span<const TokenId> a, std::span<const TokenId> b);

enum class Metric { kBleus4, kRouge1, kRouge2, kRougeL };

inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::kBleus4, Metric::kRouge1,
                                                      Metric::kRouge2, Metric::kRougeL};

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

double score(Metric m, std::span<const TokenId> candidate, std::span<const TokenId> reference);

/// Best score over the candidates (Metric@K with K = candidates.size()).
double metric_at_k(std::span<const TokenSequence> candidates,
                   std::span<const TokenId> reference, Metric m);

struct ExampleScores {
  std::string id;
  std::string group;
  std::array<double, 4> best{};  // indexed like kAllMetrics
};

/// Metric@K for every example and their per-metric means.
struct MetricReport {
  std::size_t k = 0;
  std::vector<ExampleScores> examples;
  std::array<double, 4> mean{};

  /// Per-group means, keyed by ExampleScores::group.
  std::map<std::string, std::array<double, 4>> group_means() const;
};

struct EvaluationItem {
  std::string id;
  std::string group;
  TokenSequence reference;
  std::vector<TokenSequence> candidates;  // in output order; @K uses the first K
};

/// Scores the first min(k, size) candidates of each item. Items without
/// candidates score 0.
MetricReport evaluate_at_k(std::span<const EvaluationItem> items, std::size_t k);

}  // namespace titlegen
