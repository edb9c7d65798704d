#include "titlegen/records.hpp"

#include <fstream>
#include <sstream>

#include "titlegen/data.hpp"

namespace titlegen {

namespace {

std::string optional_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  return it->get<std::string>();
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed ") + what + " record: " + e.what());
  }
}

}  // namespace

std::string json_id(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  throw Error("record id must be a string or an integer");
}

Example Example::from_json(const nlohmann::json& j) {
  return guarded("example", [&] {
    Example ex;
    ex.id = json_id(j.at("id"));
    ex.language = optional_string(j, "language");
    ex.title = optional_string(j, "title");
    if (j.contains("code_snippets")) {
      ex.code = concat_snippets(j.at("code_snippets").get<std::vector<std::string>>());
    } else {
      ex.code = j.at("code").get<std::string>();
    }
    return ex;
  });
}

nlohmann::ordered_json PoolRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["language"] = language;
  j["strategy"] = strategy;
  j["input"] = input;
  j["input_tokens"] = input_tokens;
  j["config"] = {{"top_p", config.top_p},
                 {"temperature", config.temperature},
                 {"num_samples", config.num_samples},
                 {"max_length", config.max_length},
                 {"seed", config.seed}};
  j["candidates"] = candidates;
  j["candidate_tokens"] = candidate_tokens;
  if (!log_probs.empty()) j["log_probs"] = log_probs;
  return j;
}

PoolRecord PoolRecord::from_json(const nlohmann::json& j) {
  return guarded("pool", [&] {
    PoolRecord r;
    r.id = json_id(j.at("id"));
    r.language = optional_string(j, "language");
    r.strategy = j.contains("strategy") ? j.at("strategy").get<std::string>() : "sample";
    r.input = optional_string(j, "input");
    if (j.contains("input_tokens")) r.input_tokens = j.at("input_tokens").get<TokenSequence>();
    if (j.contains("config")) {
      const auto& c = j.at("config");
      r.config.top_p = c.value("top_p", r.config.top_p);
      r.config.temperature = c.value("temperature", r.config.temperature);
      r.config.num_samples = c.value("num_samples", r.config.num_samples);
      r.config.max_length = c.value("max_length", r.config.max_length);
      r.config.seed = c.value("seed", r.config.seed);
    }
    r.candidates = j.at("candidates").get<std::vector<std::string>>();
    if (j.contains("candidate_tokens")) {
      r.candidate_tokens = j.at("candidate_tokens").get<std::vector<TokenSequence>>();
      if (r.candidate_tokens.size() != r.candidates.size()) {
        throw Error("pool record " + r.id + ": candidates and candidate_tokens differ in length");
      }
    }
    if (j.contains("log_probs")) r.log_probs = j.at("log_probs").get<std::vector<double>>();
    return r;
  });
}

nlohmann::ordered_json SelectionRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["language"] = language;
  j["strategy"] = strategy;
  j["titles"] = titles;
  if (!indices.empty()) j["indices"] = indices;
  if (initial_consistency || !marginal_objectives.empty()) {
    nlohmann::ordered_json d;
    if (initial_consistency) d["initial_consistency"] = *initial_consistency;
    d["marginal_objectives"] = marginal_objectives;
    j["diagnostics"] = std::move(d);
  }
  if (!scores.empty()) j["scores"] = scores;
  if (reference) j["reference"] = *reference;
  return j;
}

SelectionRecord SelectionRecord::from_json(const nlohmann::json& j) {
  return guarded("selection", [&] {
    SelectionRecord r;
    r.id = json_id(j.at("id"));
    r.language = optional_string(j, "language");
    r.strategy = optional_string(j, "strategy");
    if (j.contains("titles")) {
      r.titles = j.at("titles").get<std::vector<std::string>>();
    } else {
      r.titles = j.at("candidates").get<std::vector<std::string>>();
    }
    if (j.contains("indices")) r.indices = j.at("indices").get<std::vector<std::size_t>>();
    if (j.contains("diagnostics")) {
      const auto& d = j.at("diagnostics");
      if (d.contains("initial_consistency")) {
        r.initial_consistency = d.at("initial_consistency").get<double>();
      }
      if (d.contains("marginal_objectives")) {
        r.marginal_objectives = d.at("marginal_objectives").get<std::vector<double>>();
      }
    }
    if (j.contains("scores")) r.scores = j.at("scores").get<std::vector<double>>();
    if (j.contains("reference")) r.reference = j.at("reference").get<std::string>();
    return r;
  });
}

void for_each_json_line(const std::filesystem::path& path,
                        const std::function<void(const nlohmann::json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw Error("write failed: " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace titlegen
