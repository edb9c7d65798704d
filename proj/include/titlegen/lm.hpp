#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "titlegen/text.hpp"

namespace titlegen {

/// Probability vector indexed by vocabulary id.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> probabilities)
      : p_(std::move(probabilities)) {}

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  double& operator[](std::size_t i) { return p_[i]; }
  std::span<const double> values() const { return p_; }
  std::vector<double>& mutable_values() { return p_; }

  double sum() const;
  /// Entries nonnegative and summing to one within `tolerance`.
  bool is_valid(double tolerance = 1e-9) const;
  /// Highest-probability id; ties go to the lowest id.
  TokenId argmax() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> p_;
};

/// Autoregressive title generator conditioned on a code sequence.
///
/// Implementations must return a valid distribution over `vocabulary()` that
/// gives PAD and START probability zero. `prefix` always begins with START.
class GeneratorModel {
 public:
  virtual ~GeneratorModel() = default;
  virtual const Vocabulary& vocabulary() const = 0;
  virtual Distribution next_distribution(std::span<const TokenId> code,
                                         std::span<const TokenId> prefix) const = 0;
};

struct TrainingPair {
  TokenSequence code;
  TokenSequence title;
};

struct NGramOptions {
  std::size_t order = 4;
  /// Per-order interpolation weights, lowest order first. Empty means uniform.
  std::vector<double> weights;
  std::size_t code_limit = 512;
  std::size_t title_limit = 48;
};

/// Mass added to every emittable id before renormalization, so END is
/// always reachable.
inline constexpr double kUniformFloor = 1e-6;

/// Jelinek-Mercer interpolated n-gram model over the joined sequence
/// code ++ [NEXT] ++ <s> ++ title ++ </s>.
class NGramLM final : public GeneratorModel {
 public:
  struct ContextCounts {
    std::uint64_t total = 0;
    std::map<TokenId, std::uint64_t> next;
    friend bool operator==(const ContextCounts&, const ContextCounts&) = default;
  };
  /// Keyed by context; context length is (table index).
  using Table = std::map<NGram, ContextCounts>;

  /// Throws Error("empty corpus") when `pairs` is empty.
  static NGramLM train(Vocabulary vocab, std::span<const TrainingPair> pairs,
                       const NGramOptions& options = {});

  const Vocabulary& vocabulary() const override { return vocab_; }
  Distribution next_distribution(std::span<const TokenId> code,
                                 std::span<const TokenId> prefix) const override;

  std::size_t order() const { return options_.order; }
  const NGramOptions& options() const { return options_; }
  std::span<const double> weights() const { return options_.weights; }
  std::span<const Table> tables() const { return tables_; }

  void save(std::ostream& out) const;
  static NGramLM load(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static NGramLM load(const std::filesystem::path& path);

  friend bool operator==(const NGramLM& a, const NGramLM& b);

 private:
  NGramLM(Vocabulary vocab, NGramOptions options);

  /// Truncated code ++ [NEXT] ++ prefix, keeping only what the widest
  /// context can see.
  TokenSequence history(std::span<const TokenId> code,
                        std::span<const TokenId> prefix) const;

  Vocabulary vocab_;
  NGramOptions options_;
  std::vector<Table> tables_;
};

/// Builds an open vocabulary from raw strings and trains on the tokenized
/// pairs.
NGramLM train_ngram_lm(std::span<const std::pair<std::string, std::string>> code_title,
                       const NGramOptions& options = {});

}  // namespace titlegen
