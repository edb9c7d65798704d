#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace titlegen {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM]". Throws Error.
Timestamp parse_timestamp(std::string_view text);

/// One Stack Overflow question as exported to line-delimited JSON.
struct Post {
  std::int64_t id = 0;
  std::string title;
  std::vector<std::string> code_snippets;
  std::string created_at;  // original text, written back verbatim
  Timestamp created{};
  bool is_closed = false;
  bool has_accepted_answer = false;
  std::int64_t votes = 0;
  std::string language;

  /// Throws Error on missing fields, wrong types or a bad timestamp.
  static Post from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Open, has an accepted answer, at least two votes, at least one snippet.
bool passes_quality_filter(const Post& post);

struct FilterStats {
  std::size_t read = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::size_t malformed = 0;
  /// Human-readable reason for every malformed line.
  std::vector<std::string> warnings;
};

/// Order-preserving subset passing the quality filter.
std::vector<Post> filter_posts(std::span<const Post> posts);

/// Streams JSON lines, skipping (and counting) malformed records.
std::vector<Post> filter_posts(std::istream& jsonl, FilterStats& stats);

/// Joins snippets with " [NEXT] ", leaving their content untouched.
std::string concat_snippets(std::span<const std::string> snippets);

struct SplitCounts {
  std::size_t validation = 0;
  std::size_t test = 0;
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

/// Per language: `default_count` validation and test posts each, capped at
/// `fallback_fraction` of the language's filtered posts. Explicit overrides
/// take precedence.
struct SplitSpec {
  std::size_t default_count = 5000;
  double fallback_fraction = 0.1;
  std::map<std::string, SplitCounts> overrides;

  SplitCounts counts_for(const std::string& language, std::size_t available) const;
};

struct LanguageSplit {
  std::vector<Post> train;
  std::vector<Post> validation;
  std::vector<Post> test;
};

/// Per language, the newest validation+test posts are shuffled with `seed`
/// and dealt into validation then test; everything older is training data.
/// Each split is returned in chronological order (ties by id).
std::map<std::string, LanguageSplit> chronological_split(std::span<const Post> posts,
                                                         const SplitSpec& spec,
                                                         std::uint64_t seed);

}  // namespace titlegen
