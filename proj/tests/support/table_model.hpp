#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "titlegen/decode.hpp"
#include "titlegen/lm.hpp"

namespace titlegen::testing {

// Generator whose next-token distribution is a pseudo-random function of
// (seed, code, prefix). Only END and the `words` content tokens get mass, so
// the number of emittable tokens is words + 1.
class TableModel final : public GeneratorModel {
 public:
  TableModel(std::size_t words, std::uint64_t seed) : seed_(seed) {
    for (std::size_t i = 0; i < words; ++i) vocab_.intern("w" + std::to_string(i));
  }

  const Vocabulary& vocabulary() const override { return vocab_; }

  Distribution next_distribution(std::span<const TokenId> code,
                                 std::span<const TokenId> prefix) const override {
    std::uint64_t h = seed_ * 0x9e3779b97f4a7c15ull + 1;
    for (TokenId id : code) h = (h ^ static_cast<std::uint64_t>(id + 11)) * 0x100000001b3ull;
    h = (h ^ 0xabcdefull) * 0x100000001b3ull;
    for (TokenId id : prefix) h = (h ^ static_cast<std::uint64_t>(id + 3)) * 0x100000001b3ull;
    Rng rng(h);
    std::vector<double> p(vocab_.size(), 0.0);
    double sum = 0;
    auto fill = [&](std::size_t i) {
      // Bounded away from zero so every emittable token keeps support.
      p[i] = 0.05 + rng.uniform();
      sum += p[i];
    };
    fill(static_cast<std::size_t>(marker::kEnd));
    for (std::size_t i = marker::kCount; i < p.size(); ++i) fill(i);
    for (double& v : p) v /= sum;
    return Distribution(std::move(p));
  }

 private:
  Vocabulary vocab_;
  std::uint64_t seed_;
};

}  // namespace titlegen::testing
