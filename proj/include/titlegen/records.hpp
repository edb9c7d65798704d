#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "titlegen/decode.hpp"
#include "titlegen/text.hpp"

// Line-delimited JSON records exchanged between pipeline stages. Every
// record carries a string `id`; numeric ids in input files are accepted and
// converted.

namespace titlegen {

/// A code input with its (optional) reference title. Reads either a Post
/// record (`code_snippets` are joined with [NEXT]) or a flat
/// {"id", "code", "title", "language"} record.
struct Example {
  std::string id;
  std::string language;
  std::string code;
  std::string title;

  static Example from_json(const nlohmann::json& j);
};

/// One candidate pool: the input, the sampling settings and every candidate.
/// `candidate_tokens` may be empty for pools written by external generators;
/// readers then tokenize `candidates`.
struct PoolRecord {
  std::string id;
  std::string language;
  std::string strategy;  // "sample" or "beam"
  std::string input;
  TokenSequence input_tokens;
  SamplingConfig config;
  std::vector<std::string> candidates;
  std::vector<TokenSequence> candidate_tokens;
  std::vector<double> log_probs;  // beam only

  nlohmann::ordered_json to_json() const;
  static PoolRecord from_json(const nlohmann::json& j);
};

/// Ordered output titles for one input, plus how they were chosen.
struct SelectionRecord {
  std::string id;
  std::string language;
  std::string strategy;  // "mmns", "rns", "beam" or "bm25"
  std::vector<std::string> titles;
  std::vector<std::size_t> indices;
  std::optional<double> initial_consistency;
  std::vector<double> marginal_objectives;
  std::vector<double> scores;
  std::optional<std::string> reference;

  nlohmann::ordered_json to_json() const;
  static SelectionRecord from_json(const nlohmann::json& j);
};

std::string json_id(const nlohmann::json& value);

/// Calls `fn` with each non-blank line's parsed JSON; errors name the line.
void for_each_json_line(const std::filesystem::path& path,
                        const std::function<void(const nlohmann::json&)>& fn);

template <typename Record>
std::vector<Record> read_records(const std::filesystem::path& path) {
  std::vector<Record> out;
  for_each_json_line(path, [&](const nlohmann::json& j) { out.push_back(Record::from_json(j)); });
  return out;
}

template <typename Record>
std::string to_jsonl(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

/// Writes via a sibling temporary file and rename, so a failed run never
/// leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace titlegen
