#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "titlegen/lm.hpp"
#include "titlegen/text.hpp"

namespace titlegen {

struct SamplingConfig {
  double top_p = 0.8;
  double temperature = 1.0;
  std::size_t num_samples = 200;
  std::size_t max_length = 48;
  std::uint64_t seed = 0;
  /// Worker threads for row generation; 0 picks the hardware count. Output
  /// does not depend on this value.
  unsigned threads = 1;

  /// Throws Error if any field is outside its domain.
  void validate() const;
};

/// M sampled titles for one input. Candidates omit START, end with END unless
/// they hit `max_length`, and never contain PAD.
struct CandidatePool {
  TokenSequence input;
  std::vector<TokenSequence> candidates;
  SamplingConfig config;
};

/// Deterministic random stream. Draws are defined in terms of raw
/// mt19937_64 output, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for row `row` of a batch seeded with `seed`.
  static Rng for_row(std::uint64_t seed, std::uint64_t row);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Restricts `dist` to the minimal set of highest-probability ids whose mass
/// reaches `beta` (ties by ascending id) and renormalizes inside it.
Distribution nucleus_filter(const Distribution& dist, double beta);

/// p_i^(1/t), renormalized. t == 1 returns the input unchanged.
Distribution apply_temperature(const Distribution& dist, double temperature);

TokenId sample_token(const Distribution& dist, Rng& rng);

/// Draws `num_samples` independent rows. Row r uses Rng::for_row(seed, r), so
/// row r is the same for every batch size and thread count.
CandidatePool decode_candidates(const GeneratorModel& model,
                                std::span<const TokenId> code,
                                const SamplingConfig& config);

/// The rectangular M x N matrix of a pool, shorter rows right-padded with PAD.
std::vector<TokenSequence> padded_matrix(const CandidatePool& pool);

struct Hypothesis {
  TokenSequence tokens;  // without START; ends with END unless length-capped
  double log_prob = 0;
};

/// Unnormalized beam search. Returns the `k` best completed hypotheses by
/// total log-probability, ties broken by lexicographic token order.
/// Hypotheses that reach `max_length` without END count as completed.
std::vector<Hypothesis> beam_search(const GeneratorModel& model,
                                    std::span<const TokenId> code,
                                    std::size_t beam_size, std::size_t k,
                                    std::size_t max_length = 48);

}  // namespace titlegen
