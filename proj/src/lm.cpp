#include "titlegen/lm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "number_format.hpp"

namespace titlegen {

namespace {

constexpr std::string_view kModelMagic = "titlegen-ngram-lm v1";

std::span<const TokenId> head(std::span<const TokenId> seq, std::size_t limit) {
  return seq.first(std::min(seq.size(), limit));
}

std::vector<double> normalized_weights(const NGramOptions& options) {
  if (options.weights.empty()) {
    return std::vector<double>(options.order, 1.0 / static_cast<double>(options.order));
  }
  if (options.weights.size() != options.order) {
    throw Error("expected " + std::to_string(options.order) +
                " interpolation weights, got " +
                std::to_string(options.weights.size()));
  }
  double sum = 0;
  for (double w : options.weights) {
    if (!(w >= 0)) throw Error("interpolation weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error("interpolation weights must sum to 1");
  }
  return options.weights;
}

std::string expect_line(std::istream& in, std::string_view what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("model file truncated: expected " + std::string(what));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(std::move(w));
  return out;
}

std::size_t keyed_size(const std::string& line, std::string_view key) {
  auto parts = split_ws(line);
  if (parts.size() != 2 || parts[0] != key) {
    throw Error("model file: expected '" + std::string(key) + " <n>', got '" +
                line + "'");
  }
  return detail::parse_int<std::size_t>(parts[1]);
}

}  // namespace

double Distribution::sum() const {
  return std::accumulate(p_.begin(), p_.end(), 0.0);
}

bool Distribution::is_valid(double tolerance) const {
  if (p_.empty()) return false;
  for (double v : p_) {
    if (!(v >= 0) || !std::isfinite(v)) return false;
  }
  return std::abs(sum() - 1.0) <= tolerance;
}

TokenId Distribution::argmax() const {
  if (p_.empty()) throw Error("argmax of empty distribution");
  return static_cast<TokenId>(std::max_element(p_.begin(), p_.end()) - p_.begin());
}

NGramLM::NGramLM(Vocabulary vocab, NGramOptions options)
    : vocab_(std::move(vocab)), options_(std::move(options)) {
  if (options_.order < 1) throw Error("n-gram order must be at least 1");
  options_.weights = normalized_weights(options_);
  tables_.resize(options_.order);
}

NGramLM NGramLM::train(Vocabulary vocab, std::span<const TrainingPair> pairs,
                       const NGramOptions& options) {
  if (pairs.empty()) throw Error("empty corpus");
  NGramLM model(std::move(vocab), options);
  const std::size_t order = model.options_.order;

  TokenSequence seq;
  for (const auto& pair : pairs) {
    seq.clear();
    auto code = head(pair.code, model.options_.code_limit);
    seq.insert(seq.end(), code.begin(), code.end());
    seq.push_back(marker::kNext);
    seq.push_back(marker::kStart);
    const std::size_t first_predicted = seq.size();
    auto title = head(pair.title, model.options_.title_limit);
    seq.insert(seq.end(), title.begin(), title.end());
    seq.push_back(marker::kEnd);

    for (std::size_t j = first_predicted; j < seq.size(); ++j) {
      for (std::size_t ctx_len = 0; ctx_len < order && ctx_len <= j; ++ctx_len) {
        NGram ctx(seq.begin() + static_cast<std::ptrdiff_t>(j - ctx_len),
                  seq.begin() + static_cast<std::ptrdiff_t>(j));
        auto& counts = model.tables_[ctx_len][ctx];
        ++counts.total;
        ++counts.next[seq[j]];
      }
    }
  }
  return model;
}

TokenSequence NGramLM::history(std::span<const TokenId> code,
                               std::span<const TokenId> prefix) const {
  const std::size_t want = options_.order - 1;
  TokenSequence tail;
  if (prefix.size() < want) {
    auto c = head(code, options_.code_limit);
    const std::size_t need = want - prefix.size();  // includes the [NEXT] slot
    const std::size_t from_code = std::min(c.size(), need - 1);
    tail.insert(tail.end(), c.end() - static_cast<std::ptrdiff_t>(from_code), c.end());
    tail.push_back(marker::kNext);
  }
  const std::size_t from_prefix = std::min(prefix.size(), want);
  tail.insert(tail.end(), prefix.end() - static_cast<std::ptrdiff_t>(from_prefix),
              prefix.end());
  return tail;
}

Distribution NGramLM::next_distribution(std::span<const TokenId> code,
                                        std::span<const TokenId> prefix) const {
  if (prefix.empty() || prefix.front() != marker::kStart) {
    throw Error("generation prefix must begin with <s>");
  }
  const TokenSequence hist = history(code, prefix);
  std::vector<double> p(vocab_.size(), 0.0);

  for (std::size_t ctx_len = 0; ctx_len < options_.order && ctx_len <= hist.size();
       ++ctx_len) {
    const double w = options_.weights[ctx_len];
    if (w == 0) continue;
    NGram ctx(hist.end() - static_cast<std::ptrdiff_t>(ctx_len), hist.end());
    auto it = tables_[ctx_len].find(ctx);
    if (it == tables_[ctx_len].end()) continue;
    const double total = static_cast<double>(it->second.total);
    for (const auto& [id, c] : it->second.next) {
      if (id >= 0 && static_cast<std::size_t>(id) < p.size()) {
        p[static_cast<std::size_t>(id)] += w * static_cast<double>(c) / total;
      }
    }
  }

  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    if (id == marker::kPad || id == marker::kStart) {
      p[i] = 0;
      continue;
    }
    p[i] += kUniformFloor;
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return Distribution(std::move(p));
}

void NGramLM::save(std::ostream& out) const {
  out << kModelMagic << '\n';
  out << "order " << options_.order << '\n';
  out << "code_limit " << options_.code_limit << '\n';
  out << "title_limit " << options_.title_limit << '\n';
  out << "weights";
  for (double w : options_.weights) out << ' ' << detail::format_double(w);
  out << '\n';
  out << "vocab " << vocab_.size() << '\n';
  vocab_.save(out);
  for (std::size_t ctx_len = 0; ctx_len < tables_.size(); ++ctx_len) {
    out << "table " << ctx_len << ' ' << tables_[ctx_len].size() << '\n';
    for (const auto& [ctx, counts] : tables_[ctx_len]) {
      for (TokenId id : ctx) out << id << ' ';
      out << '|';
      for (const auto& [id, c] : counts.next) out << ' ' << id << ' ' << c;
      out << '\n';
    }
  }
  out << "end\n";
}

NGramLM NGramLM::load(std::istream& in) {
  if (expect_line(in, "header") != kModelMagic) {
    throw Error("not a titlegen n-gram model file");
  }
  NGramOptions options;
  options.order = keyed_size(expect_line(in, "order"), "order");
  options.code_limit = keyed_size(expect_line(in, "code_limit"), "code_limit");
  options.title_limit = keyed_size(expect_line(in, "title_limit"), "title_limit");
  {
    auto parts = split_ws(expect_line(in, "weights"));
    if (parts.empty() || parts[0] != "weights") {
      throw Error("model file: expected weights line");
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
      options.weights.push_back(detail::parse_double(parts[i]));
    }
  }
  const std::size_t vocab_size = keyed_size(expect_line(in, "vocab"), "vocab");
  std::ostringstream vocab_text;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    vocab_text << expect_line(in, "vocabulary entry") << '\n';
  }
  std::istringstream vocab_in(vocab_text.str());
  NGramLM model(Vocabulary::load(vocab_in), options);
  if (model.vocab_.size() != vocab_size) {
    throw Error("model file: vocabulary size mismatch");
  }

  for (std::size_t ctx_len = 0; ctx_len < model.options_.order; ++ctx_len) {
    auto parts = split_ws(expect_line(in, "table header"));
    if (parts.size() != 3 || parts[0] != "table" ||
        detail::parse_int<std::size_t>(parts[1]) != ctx_len) {
      throw Error("model file: bad table header");
    }
    const auto rows = detail::parse_int<std::size_t>(parts[2]);
    for (std::size_t r = 0; r < rows; ++r) {
      auto fields = split_ws(expect_line(in, "table row"));
      auto bar = std::find(fields.begin(), fields.end(), "|");
      if (bar == fields.end() ||
          static_cast<std::size_t>(bar - fields.begin()) != ctx_len ||
          (fields.end() - bar - 1) % 2 != 0) {
        throw Error("model file: malformed table row");
      }
      NGram ctx;
      for (auto it = fields.begin(); it != bar; ++it) {
        ctx.push_back(detail::parse_int<TokenId>(*it));
      }
      ContextCounts counts;
      for (auto it = bar + 1; it != fields.end(); it += 2) {
        const auto id = detail::parse_int<TokenId>(*it);
        const auto c = detail::parse_int<std::uint64_t>(*(it + 1));
        counts.next[id] += c;
        counts.total += c;
      }
      model.tables_[ctx_len].emplace(std::move(ctx), std::move(counts));
    }
  }
  if (expect_line(in, "end marker") != "end") {
    throw Error("model file: missing end marker");
  }
  return model;
}

void NGramLM::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  save(out);
}

NGramLM NGramLM::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return load(in);
}

bool operator==(const NGramLM& a, const NGramLM& b) {
  return a.vocab_ == b.vocab_ && a.options_.order == b.options_.order &&
         a.options_.weights == b.options_.weights &&
         a.options_.code_limit == b.options_.code_limit &&
         a.options_.title_limit == b.options_.title_limit && a.tables_ == b.tables_;
}

NGramLM train_ngram_lm(std::span<const std::pair<std::string, std::string>> code_title,
                       const NGramOptions& options) {
  Vocabulary vocab;
  std::vector<TrainingPair> pairs;
  pairs.reserve(code_title.size());
  for (const auto& [code, title] : code_title) {
    TrainingPair pair;
    pair.code = encode(code, vocab);
    pair.title = encode(title, vocab);
    pairs.push_back(std::move(pair));
  }
  return NGramLM::train(std::move(vocab), pairs, options);
}

}  // namespace titlegen
