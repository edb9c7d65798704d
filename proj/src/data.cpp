#include "titlegen/data.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>

#include "titlegen/decode.hpp"
#include "titlegen/text.hpp"

namespace titlegen {

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) throw Error("timestamp too short");
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error("timestamp: expected digit");
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

void expect_char(std::string_view s, std::size_t pos, std::string_view allowed) {
  if (pos >= s.size() || allowed.find(s[pos]) == std::string_view::npos) {
    throw Error("timestamp: unexpected character");
  }
}

// FNV-1a; stable across platforms, used to derive per-language streams.
std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool chronological(const Post& a, const Post& b) {
  if (a.created != b.created) return a.created < b.created;
  return a.id < b.id;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  try {
    const int y = digits(text, 0, 4);
    expect_char(text, 4, "-");
    const int mo = digits(text, 5, 2);
    expect_char(text, 7, "-");
    const int d = digits(text, 8, 2);
    expect_char(text, 10, "T ");
    const int hh = digits(text, 11, 2);
    expect_char(text, 13, ":");
    const int mm = digits(text, 14, 2);
    expect_char(text, 16, ":");
    const int ss = digits(text, 17, 2);
    std::size_t pos = 19;

    int millis = 0;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      int scale = 100;
      const std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        millis += (text[pos] - '0') * scale;
        scale /= 10;
        ++pos;
      }
      if (pos == start) throw Error("timestamp: empty fraction");
    }

    int offset_minutes = 0;
    if (pos < text.size()) {
      if (text[pos] == 'Z' && pos + 1 == text.size()) {
        ++pos;
      } else if ((text[pos] == '+' || text[pos] == '-') && pos + 6 == text.size()) {
        const int sign = text[pos] == '-' ? -1 : 1;
        const int oh = digits(text, pos + 1, 2);
        expect_char(text, pos + 3, ":");
        const int om = digits(text, pos + 4, 2);
        offset_minutes = sign * (oh * 60 + om);
        pos = text.size();
      } else {
        throw Error("timestamp: trailing characters");
      }
    }

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) throw Error("timestamp: field out of range");
    return sys_days{ymd} + hours{hh} + minutes{mm - offset_minutes} + seconds{ss} +
           milliseconds{millis};
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + ": '" + std::string(text) + "'");
  }
}

Post Post::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("record is not an object");
  Post p;
  try {
    p.id = j.at("id").get<std::int64_t>();
    p.title = j.at("title").get<std::string>();
    p.code_snippets = j.at("code_snippets").get<std::vector<std::string>>();
    p.created_at = j.at("created_at").get<std::string>();
    p.is_closed = j.at("is_closed").get<bool>();
    p.has_accepted_answer = j.at("has_accepted_answer").get<bool>();
    p.votes = j.at("votes").get<std::int64_t>();
    p.language = j.at("language").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad post field: ") + e.what());
  }
  if (p.language.empty()) throw Error("empty language tag");
  p.created = parse_timestamp(p.created_at);
  return p;
}

nlohmann::ordered_json Post::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["title"] = title;
  j["code_snippets"] = code_snippets;
  j["created_at"] = created_at;
  j["is_closed"] = is_closed;
  j["has_accepted_answer"] = has_accepted_answer;
  j["votes"] = votes;
  j["language"] = language;
  return j;
}

bool passes_quality_filter(const Post& post) {
  return !post.is_closed && post.has_accepted_answer && post.votes >= 2 &&
         !post.code_snippets.empty();
}

std::vector<Post> filter_posts(std::span<const Post> posts) {
  std::vector<Post> out;
  std::copy_if(posts.begin(), posts.end(), std::back_inserter(out), passes_quality_filter);
  return out;
}

std::vector<Post> filter_posts(std::istream& jsonl, FilterStats& stats) {
  std::vector<Post> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(jsonl, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++stats.read;
    Post post;
    try {
      post = Post::from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      ++stats.malformed;
      stats.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
      continue;
    } catch (const Error& e) {
      ++stats.malformed;
      stats.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
      continue;
    }
    if (passes_quality_filter(post)) {
      ++stats.kept;
      out.push_back(std::move(post));
    } else {
      ++stats.dropped;
    }
  }
  return out;
}

std::string concat_snippets(std::span<const std::string> snippets) {
  if (snippets.empty()) throw Error("no code snippets to concatenate");
  std::string out = snippets.front();
  for (std::size_t i = 1; i < snippets.size(); ++i) {
    out += " ";
    out += marker::kNextText;
    out += " ";
    out += snippets[i];
  }
  return out;
}

SplitCounts SplitSpec::counts_for(const std::string& language, std::size_t available) const {
  if (auto it = overrides.find(language); it != overrides.end()) return it->second;
  const auto capped = static_cast<std::size_t>(
      std::floor(fallback_fraction * static_cast<double>(available)));
  const std::size_t each = std::min(default_count, capped);
  return {each, each};
}

std::map<std::string, LanguageSplit> chronological_split(std::span<const Post> posts,
                                                         const SplitSpec& spec,
                                                         std::uint64_t seed) {
  std::map<std::string, std::vector<Post>> by_language;
  std::set<std::int64_t> ids;
  for (const auto& p : posts) {
    if (!ids.insert(p.id).second) throw Error("duplicate post id " + std::to_string(p.id));
    by_language[p.language].push_back(p);
  }

  std::map<std::string, LanguageSplit> out;
  for (auto& [language, list] : by_language) {
    const SplitCounts counts = spec.counts_for(language, list.size());
    const std::size_t held_out = counts.validation + counts.test;
    if (held_out > list.size()) {
      throw Error("language '" + language + "' has " + std::to_string(list.size()) +
                  " posts, fewer than the " + std::to_string(held_out) +
                  " requested for validation and test");
    }
    std::sort(list.begin(), list.end(), chronological);
    const auto cut = list.end() - static_cast<std::ptrdiff_t>(held_out);

    LanguageSplit split;
    split.train.assign(list.begin(), cut);
    std::vector<Post> recent(cut, list.end());

    Rng rng = Rng::for_row(seed, stable_hash(language));
    for (std::size_t i = recent.size(); i > 1; --i) {
      std::swap(recent[i - 1], recent[rng.below(i)]);
    }
    split.validation.assign(recent.begin(),
                            recent.begin() + static_cast<std::ptrdiff_t>(counts.validation));
    split.test.assign(recent.begin() + static_cast<std::ptrdiff_t>(counts.validation),
                      recent.end());
    std::sort(split.validation.begin(), split.validation.end(), chronological);
    std::sort(split.test.begin(), split.test.end(), chronological);
    out.emplace(language, std::move(split));
  }
  return out;
}

}  // namespace titlegen
