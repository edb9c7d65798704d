#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace titlegen {

/// Raised for violated preconditions and unreadable inputs across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TokenId = std::int32_t;
using TokenSequence = std::vector<TokenId>;

/// Reserved markers occupy the first five vocabulary slots in this fixed order.
namespace marker {
inline constexpr TokenId kStart = 0;
inline constexpr TokenId kEnd = 1;
inline constexpr TokenId kPad = 2;
inline constexpr TokenId kNext = 3;
inline constexpr TokenId kUnk = 4;
inline constexpr TokenId kCount = 5;

inline constexpr std::string_view kStartText = "<s>";
inline constexpr std::string_view kEndText = "</s>";
inline constexpr std::string_view kPadText = "[PAD]";
inline constexpr std::string_view kNextText = "[NEXT]";
inline constexpr std::string_view kUnkText = "[UNK]";
}  // namespace marker

/// Bijective token <-> id table. Ids 0..4 are always the reserved markers.
class Vocabulary {
 public:
  Vocabulary();

  /// Open mode: returns the id of `token`, appending it if unseen.
  TokenId intern(std::string_view token);
  /// Closed mode: unknown tokens map to UNK.
  TokenId lookup(std::string_view token) const;
  bool contains(std::string_view token) const;

  const std::string& token(TokenId id) const;
  std::size_t size() const { return tokens_.size(); }
  std::span<const std::string> tokens() const { return tokens_; }

  /// One token per line; line number is the id.
  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

/// Lowercases ASCII letters, splits on whitespace, then splits every ASCII
/// punctuation character into its own token. The bracketed markers
/// [NEXT], [PAD] and [UNK] survive as single tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Tokenizes and interns every token (vocabulary grows).
TokenSequence encode(std::string_view text, Vocabulary& vocab);
/// Tokenizes against a fixed vocabulary; unseen tokens become UNK.
TokenSequence encode_closed(std::string_view text, const Vocabulary& vocab);

/// Space-joined surface form with START, END and PAD omitted.
std::string detokenize(std::span<const TokenId> seq, const Vocabulary& vocab);

inline bool is_control_marker(TokenId id) {
  return id == marker::kStart || id == marker::kEnd || id == marker::kPad;
}

/// Removes START, END and PAD. Every metric and n-gram computation runs on
/// the stripped sequence.
TokenSequence strip_markers(std::span<const TokenId> seq);

/// At most one END, nothing but PAD after it, and no PAD before a non-PAD.
bool is_well_formed(std::span<const TokenId> seq);

using NGram = std::vector<TokenId>;

struct NGramBag {
  std::map<NGram, std::size_t> counts;

  std::size_t total() const;
  std::size_t count(const NGram& gram) const;
  bool empty() const { return counts.empty(); }
};

/// Multiset of contiguous n-grams of the marker-stripped sequence.
NGramBag extract_ngrams(std::span<const TokenId> seq, std::size_t n);

}  // namespace titlegen
