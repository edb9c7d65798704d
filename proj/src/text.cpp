#include "titlegen/text.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

namespace titlegen {

namespace {

constexpr std::array<std::string_view, marker::kCount> kReserved = {
    marker::kStartText, marker::kEndText, marker::kPadText, marker::kNextText,
    marker::kUnkText};

// Markers that tokenize() keeps whole. <s> and </s> are not among them: code
// snippets routinely contain HTML tags of that shape.
constexpr std::array<std::string_view, 3> kTextMarkers = {
    marker::kNextText, marker::kPadText, marker::kUnkText};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 0x21 && u <= 0x2f) || (u >= 0x3a && u <= 0x40) ||
         (u >= 0x5b && u <= 0x60) || (u >= 0x7b && u <= 0x7e);
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

Vocabulary::Vocabulary() {
  for (auto text : kReserved) intern(text);
}

TokenId Vocabulary::intern(std::string_view token) {
  if (auto it = index_.find(std::string(token)); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

TokenId Vocabulary::lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? marker::kUnk : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.contains(std::string(token));
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw Error("token id out of range: " + std::to_string(id));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

void Vocabulary::save(std::ostream& out) const {
  for (const auto& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::load(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no < kReserved.size()) {
      if (line != kReserved[line_no]) {
        throw Error("vocabulary line " + std::to_string(line_no + 1) +
                    ": expected reserved marker " +
                    std::string(kReserved[line_no]));
      }
    } else {
      if (line.empty()) {
        throw Error("vocabulary line " + std::to_string(line_no + 1) +
                    ": empty token");
      }
      if (vocab.contains(line)) {
        throw Error("vocabulary line " + std::to_string(line_no + 1) +
                    ": duplicate token '" + line + "'");
      }
      vocab.intern(line);
    }
    ++line_no;
  }
  if (line_no < kReserved.size()) {
    throw Error("vocabulary is missing reserved markers");
  }
  return vocab;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  save(out);
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return load(in);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      out.push_back(std::move(word));
      word.clear();
    }
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '[') {
      bool matched = false;
      for (auto m : kTextMarkers) {
        if (text.substr(i, m.size()) == m) {
          flush();
          out.emplace_back(m);
          i += m.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    if (is_space(c)) {
      flush();
    } else if (is_punct(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      word.push_back(to_lower(c));
    }
    ++i;
  }
  flush();
  return out;
}

TokenSequence encode(std::string_view text, Vocabulary& vocab) {
  TokenSequence seq;
  for (const auto& t : tokenize(text)) seq.push_back(vocab.intern(t));
  return seq;
}

TokenSequence encode_closed(std::string_view text, const Vocabulary& vocab) {
  TokenSequence seq;
  for (const auto& t : tokenize(text)) seq.push_back(vocab.lookup(t));
  return seq;
}

std::string detokenize(std::span<const TokenId> seq, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : seq) {
    if (is_control_marker(id)) continue;
    if (!out.empty()) out.push_back(' ');
    out += vocab.token(id);
  }
  return out;
}

TokenSequence strip_markers(std::span<const TokenId> seq) {
  TokenSequence out;
  out.reserve(seq.size());
  for (TokenId id : seq) {
    if (!is_control_marker(id)) out.push_back(id);
  }
  return out;
}

bool is_well_formed(std::span<const TokenId> seq) {
  bool seen_end = false;
  bool seen_pad = false;
  for (TokenId id : seq) {
    if (id == marker::kPad) {
      seen_pad = true;
      continue;
    }
    if (seen_pad || seen_end) return false;
    if (id == marker::kEnd) seen_end = true;
  }
  return true;
}

std::size_t NGramBag::total() const {
  std::size_t sum = 0;
  for (const auto& [gram, c] : counts) sum += c;
  return sum;
}

std::size_t NGramBag::count(const NGram& gram) const {
  auto it = counts.find(gram);
  return it == counts.end() ? 0 : it->second;
}

NGramBag extract_ngrams(std::span<const TokenId> seq, std::size_t n) {
  if (n == 0) throw Error("n-gram order must be positive");
  NGramBag bag;
  const TokenSequence stripped = strip_markers(seq);
  if (stripped.size() < n) return bag;
  for (std::size_t i = 0; i + n <= stripped.size(); ++i) {
    ++bag.counts[NGram(stripped.begin() + static_cast<std::ptrdiff_t>(i),
                       stripped.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return bag;
}

}  // namespace titlegen
