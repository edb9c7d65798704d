#include "titlegen/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "titlegen/text.hpp"

namespace titlegen {

namespace {
constexpr std::string_view kIndexFormat = "titlegen-bm25 v1";
}

Bm25Index Bm25Index::build(std::span<const RetrievalDoc> docs, Bm25Params params) {
  if (docs.empty()) throw Error("empty corpus");
  if (!(params.k1 >= 0) || !(params.b >= 0 && params.b <= 1)) {
    throw Error("BM25 parameters out of range");
  }
  Bm25Index index;
  index.params_ = params;
  std::set<std::int64_t> ids;
  std::size_t total_length = 0;
  for (const auto& d : docs) {
    if (!ids.insert(d.id).second) {
      throw Error("duplicate document id " + std::to_string(d.id));
    }
    const std::size_t slot = index.docs_.size();
    index.docs_.push_back({d.id, d.title, d.terms.size()});
    total_length += d.terms.size();
    std::map<std::string_view, std::size_t> tf;
    for (const auto& t : d.terms) ++tf[t];
    for (const auto& [term, count] : tf) {
      index.postings_[std::string(term)].push_back({slot, count});
    }
  }
  index.avgdl_ = static_cast<double>(total_length) / static_cast<double>(docs.size());
  if (!(index.avgdl_ > 0)) throw Error("corpus has no terms");
  return index;
}

std::size_t Bm25Index::document_frequency(std::string_view term) const {
  auto it = postings_.find(std::string(term));
  return it == postings_.end() ? 0 : it->second.size();
}

double Bm25Index::idf(std::string_view term) const {
  const double n = static_cast<double>(docs_.size());
  const double nq = static_cast<double>(document_frequency(term));
  return std::log(1.0 + (n - nq + 0.5) / (nq + 0.5));
}

std::vector<std::int64_t> Bm25Index::postings(std::string_view term) const {
  std::vector<std::int64_t> out;
  if (auto it = postings_.find(std::string(term)); it != postings_.end()) {
    for (const auto& p : it->second) out.push_back(docs_[p.doc].id);
  }
  return out;
}

std::vector<RetrievalHit> Bm25Index::query(std::span<const std::string> terms,
                                           std::size_t k) const {
  if (k < 1) throw Error("retrieval k must be at least 1");
  std::vector<double> scores(docs_.size(), 0.0);
  std::unordered_set<std::string_view> seen;
  for (const auto& term : terms) {
    if (!seen.insert(term).second) continue;
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double weight = idf(term);
    for (const auto& p : it->second) {
      const double f = static_cast<double>(p.tf);
      const double norm = params_.k1 * (1.0 - params_.b + params_.b *
                                        static_cast<double>(docs_[p.doc].length) / avgdl_);
      scores[p.doc] += weight * f * (params_.k1 + 1.0) / (f + norm);
    }
  }

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0) hits.push_back(i);
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return docs_[a].id < docs_[b].id;
  };
  const std::size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    better);
  std::vector<RetrievalHit> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& d = docs_[hits[i]];
    out.push_back({d.id, d.title, scores[hits[i]]});
  }
  return out;
}

void Bm25Index::save(const std::filesystem::path& path) const {
  // Per-document term frequencies, rebuilt into postings on load.
  std::vector<std::map<std::string, std::size_t>> tf(docs_.size());
  for (const auto& [term, list] : postings_) {
    for (const auto& p : list) tf[p.doc][term] = p.tf;
  }
  nlohmann::ordered_json j;
  j["format"] = kIndexFormat;
  j["k1"] = params_.k1;
  j["b"] = params_.b;
  auto& docs = j["docs"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::object();
    for (const auto& [term, count] : tf[i]) terms[term] = count;
    docs.push_back({{"id", docs_[i].id}, {"title", docs_[i].title}, {"terms", std::move(terms)}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump() << '\n';
}

Bm25Index Bm25Index::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format").get<std::string>() != kIndexFormat) {
      throw Error("not a titlegen BM25 index: " + path.string());
    }
    std::vector<RetrievalDoc> docs;
    for (const auto& d : j.at("docs")) {
      RetrievalDoc doc;
      doc.id = d.at("id").get<std::int64_t>();
      doc.title = d.at("title").get<std::string>();
      for (const auto& [term, count] : d.at("terms").items()) {
        doc.terms.insert(doc.terms.end(), count.get<std::size_t>(), term);
      }
      docs.push_back(std::move(doc));
    }
    return build(docs, {j.at("k1").get<double>(), j.at("b").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed BM25 index " + path.string() + ": " + e.what());
  }
}

}  // namespace titlegen
