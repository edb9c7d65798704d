#include "titlegen/experiment.hpp"

#include <algorithm>

#include "titlegen/rank.hpp"

namespace titlegen {

std::uint64_t input_seed(std::uint64_t seed, std::size_t index) {
  return Rng::for_row(seed, index).next();
}

void validate_k_sweep(std::span<const std::size_t> sweep) {
  if (sweep.empty()) throw Error("K sweep is empty");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i] < 1) throw Error("K values must be positive");
    if (i > 0 && sweep[i] <= sweep[i - 1]) throw Error("K sweep must be strictly increasing");
  }
}

StrategyComparison compare_strategies(const GeneratorModel& model,
                                      std::span<const Example> examples,
                                      const ComparisonConfig& config) {
  validate_k_sweep(config.k_sweep);
  config.sampling.validate();
  const std::size_t max_k = config.k_sweep.back();
  const Vocabulary& model_vocab = model.vocabulary();

  Vocabulary surface;
  auto to_surface = [&](const TokenSequence& seq) {
    return encode(detokenize(seq, model_vocab), surface);
  };

  std::vector<std::string> names;
  if (config.include_beam) names.emplace_back("BS");
  names.emplace_back("RNS");
  names.emplace_back("MMNS");
  std::vector<std::vector<EvaluationItem>> items(names.size());

  for (std::size_t i = 0; i < examples.size(); ++i) {
    const Example& ex = examples[i];
    const TokenSequence code = encode_closed(ex.code, model_vocab);
    const TokenSequence reference = encode(ex.title, surface);

    SamplingConfig sampling = config.sampling;
    sampling.seed = input_seed(config.sampling.seed, i);
    const CandidatePool pool = decode_candidates(model, code, sampling);

    std::vector<std::vector<TokenSequence>> outputs;
    if (config.include_beam) {
      std::vector<TokenSequence> beams;
      for (auto& h : beam_search(model, code, std::max(config.beam_size, max_k), max_k,
                                 config.sampling.max_length)) {
        beams.push_back(to_surface(h.tokens));
      }
      outputs.push_back(std::move(beams));
    }
    for (const auto* strategy : {"RNS", "MMNS"}) {
      const RankedSelection sel =
          std::string_view(strategy) == "RNS"
              ? first_k_select(pool.candidates, max_k)
              : maximal_marginal_select(pool.candidates, {max_k, config.dedup});
      std::vector<TokenSequence> chosen;
      for (std::size_t idx : sel.indices) chosen.push_back(to_surface(pool.candidates[idx]));
      outputs.push_back(std::move(chosen));
    }

    for (std::size_t s = 0; s < names.size(); ++s) {
      items[s].push_back({ex.id, ex.language, reference, std::move(outputs[s])});
    }
  }

  StrategyComparison result;
  result.k_sweep = config.k_sweep;
  for (std::size_t s = 0; s < names.size(); ++s) {
    StrategyResult sr;
    sr.name = names[s];
    for (std::size_t k : config.k_sweep) {
      sr.reports.push_back(evaluate_at_k(items[s], k));
      double diversity = 0;
      for (const auto& item : items[s]) {
        const std::size_t used = std::min(k, item.candidates.size());
        diversity += mean_pairwise_relevance(std::span(item.candidates.data(), used));
      }
      sr.mean_pairwise_relevance.push_back(
          items[s].empty() ? 0.0 : diversity / static_cast<double>(items[s].size()));
    }
    result.strategies.push_back(std::move(sr));
  }
  return result;
}

}  // namespace titlegen
