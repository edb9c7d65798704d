#include "titlegen/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parallel.hpp"

namespace titlegen {

namespace {

// Slack on the cumulative-mass comparison so that a nucleus whose exact mass
// equals beta is not extended by one token because of rounding.
constexpr double kMassSlack = 1e-12;

bool hypothesis_before(const Hypothesis& a, const Hypothesis& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.tokens < b.tokens;
}

}  // namespace

void SamplingConfig::validate() const {
  if (!(top_p > 0 && top_p <= 1)) throw Error("top_p must be in (0, 1]");
  if (!(temperature > 0) || !std::isfinite(temperature)) {
    throw Error("temperature must be positive");
  }
  if (num_samples < 1) throw Error("num_samples must be at least 1");
  if (max_length < 1) throw Error("max_length must be at least 1");
}

Rng Rng::for_row(std::uint64_t seed, std::uint64_t row) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32)};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below requires n > 0");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

Distribution nucleus_filter(const Distribution& dist, double beta) {
  if (!(beta > 0 && beta <= 1)) throw Error("nucleus threshold must be in (0, 1]");
  if (beta == 1.0) return dist;

  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });

  std::size_t kept = 0;
  double mass = 0;
  while (kept < order.size() && dist[order[kept]] > 0) {
    mass += dist[order[kept]];
    ++kept;
    if (mass + kMassSlack >= beta) break;
  }

  std::vector<double> out(dist.size(), 0.0);
  for (std::size_t i = 0; i < kept; ++i) out[order[i]] = dist[order[i]] / mass;
  return Distribution(std::move(out));
}

Distribution apply_temperature(const Distribution& dist, double temperature) {
  if (!(temperature > 0)) throw Error("temperature must be positive");
  if (temperature == 1.0) return dist;
  const auto values = dist.values();
  const double top = *std::max_element(values.begin(), values.end());
  if (!(top > 0)) throw Error("distribution has no mass");
  const double log_top = std::log(top);
  std::vector<double> out(values.size(), 0.0);
  double sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 0) {
      out[i] = std::exp((std::log(values[i]) - log_top) / temperature);
      sum += out[i];
    }
  }
  for (double& v : out) v /= sum;
  return Distribution(std::move(out));
}

TokenId sample_token(const Distribution& dist, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0;
  std::size_t last = dist.size();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0) continue;
    cumulative += dist[i];
    last = i;
    if (u < cumulative) return static_cast<TokenId>(i);
  }
  if (last == dist.size()) throw Error("cannot sample from a distribution with no mass");
  return static_cast<TokenId>(last);
}

CandidatePool decode_candidates(const GeneratorModel& model,
                                std::span<const TokenId> code,
                                const SamplingConfig& config) {
  config.validate();
  CandidatePool pool;
  pool.input.assign(code.begin(), code.end());
  pool.config = config;
  pool.candidates.resize(config.num_samples);

  detail::parallel_for(config.num_samples, config.threads, [&](std::size_t row) {
    Rng rng = Rng::for_row(config.seed, row);
    TokenSequence prefix{marker::kStart};
    for (std::size_t step = 0; step < config.max_length; ++step) {
      Distribution dist = model.next_distribution(code, prefix);
      dist = apply_temperature(dist, config.temperature);
      dist = nucleus_filter(dist, config.top_p);
      const TokenId token = sample_token(dist, rng);
      prefix.push_back(token);
      if (token == marker::kEnd) break;
    }
    pool.candidates[row].assign(prefix.begin() + 1, prefix.end());
  });
  return pool;
}

std::vector<TokenSequence> padded_matrix(const CandidatePool& pool) {
  std::size_t width = 0;
  for (const auto& c : pool.candidates) width = std::max(width, c.size());
  std::vector<TokenSequence> rows;
  rows.reserve(pool.candidates.size());
  for (const auto& c : pool.candidates) {
    TokenSequence row = c;
    row.resize(width, marker::kPad);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Hypothesis> beam_search(const GeneratorModel& model,
                                    std::span<const TokenId> code,
                                    std::size_t beam_size, std::size_t k,
                                    std::size_t max_length) {
  if (k < 1) throw Error("beam search needs k >= 1");
  if (k > beam_size) {
    throw Error("k (" + std::to_string(k) + ") exceeds beam size (" +
                std::to_string(beam_size) + ")");
  }
  if (max_length < 1) throw Error("max_length must be at least 1");

  std::vector<Hypothesis> live{Hypothesis{}};
  std::vector<Hypothesis> finished;
  std::vector<Hypothesis> expansions;
  TokenSequence prefix;

  for (std::size_t step = 0; step < max_length && !live.empty(); ++step) {
    expansions.clear();
    for (const auto& hyp : live) {
      prefix.assign(1, marker::kStart);
      prefix.insert(prefix.end(), hyp.tokens.begin(), hyp.tokens.end());
      const Distribution dist = model.next_distribution(code, prefix);
      for (std::size_t id = 0; id < dist.size(); ++id) {
        if (dist[id] <= 0) continue;
        Hypothesis next;
        next.tokens.reserve(hyp.tokens.size() + 1);
        next.tokens = hyp.tokens;
        next.tokens.push_back(static_cast<TokenId>(id));
        next.log_prob = hyp.log_prob + std::log(dist[id]);
        expansions.push_back(std::move(next));
      }
    }
    const std::size_t keep = std::min(beam_size, expansions.size());
    std::partial_sort(expansions.begin(),
                      expansions.begin() + static_cast<std::ptrdiff_t>(keep),
                      expansions.end(), hypothesis_before);
    expansions.resize(keep);

    live.clear();
    const bool last_step = step + 1 == max_length;
    for (auto& hyp : expansions) {
      if (last_step || hyp.tokens.back() == marker::kEnd) {
        finished.push_back(std::move(hyp));
      } else {
        live.push_back(std::move(hyp));
      }
    }

    // Scores only decrease along a path, so once k finished hypotheses beat
    // the best live one nothing left can enter the top k.
    if (!live.empty() && finished.size() >= k) {
      std::sort(finished.begin(), finished.end(), hypothesis_before);
      if (finished[k - 1].log_prob > live.front().log_prob) break;
    }
  }

  std::sort(finished.begin(), finished.end(), hypothesis_before);
  if (finished.size() > k) finished.resize(k);
  return finished;
}

}  // namespace titlegen
