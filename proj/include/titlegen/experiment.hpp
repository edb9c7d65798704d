#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "titlegen/decode.hpp"
#include "titlegen/lm.hpp"
#include "titlegen/metrics.hpp"
#include "titlegen/records.hpp"

namespace titlegen {

/// Seed of the pool for input number `index` in a run seeded with `seed`.
std::uint64_t input_seed(std::uint64_t seed, std::size_t index);

/// Positive, strictly increasing. Throws Error otherwise.
void validate_k_sweep(std::span<const std::size_t> sweep);

struct ComparisonConfig {
  SamplingConfig sampling;
  std::vector<std::size_t> k_sweep{1, 2, 3, 4, 5};
  std::size_t beam_size = 20;
  bool dedup = true;
  bool include_beam = true;
};

struct StrategyResult {
  std::string name;  // "BS", "RNS" or "MMNS"
  std::vector<MetricReport> reports;            // one per K in the sweep
  std::vector<double> mean_pairwise_relevance;  // one per K, averaged over inputs
};

struct StrategyComparison {
  std::vector<std::size_t> k_sweep;
  std::vector<StrategyResult> strategies;
};

/// Beam search vs. random nucleus sampling vs. maximal marginal nucleus
/// sampling over the same inputs. RNS and MMNS share one sampled pool per
/// input. Metrics are computed on surface tokens against each example's
/// title.
StrategyComparison compare_strategies(const GeneratorModel& model,
                                      std::span<const Example> examples,
                                      const ComparisonConfig& config);

}  // namespace titlegen
