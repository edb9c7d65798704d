#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace titlegen {

struct RetrievalDoc {
  std::int64_t id = 0;
  std::vector<std::string> terms;  // tokenized code
  std::string title;
};

/// Lucene defaults.
struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct RetrievalHit {
  std::int64_t id = 0;
  std::string title;
  double score = 0;
};

/// Okapi BM25 over code terms with IDF(q) = ln(1 + (N - n_q + 0.5) / (n_q + 0.5)).
class Bm25Index {
 public:
  /// Throws Error on an empty corpus or duplicate document ids.
  static Bm25Index build(std::span<const RetrievalDoc> docs, Bm25Params params = {});

  /// Up to k positively scored documents, best first; equal scores by
  /// ascending id. Repeated query terms count once.
  std::vector<RetrievalHit> query(std::span<const std::string> terms, std::size_t k) const;

  std::size_t size() const { return docs_.size(); }
  double average_length() const { return avgdl_; }
  const Bm25Params& params() const { return params_; }
  std::size_t document_frequency(std::string_view term) const;
  double idf(std::string_view term) const;
  /// Ids of the documents containing `term`, ascending by insertion.
  std::vector<std::int64_t> postings(std::string_view term) const;

  void save(const std::filesystem::path& path) const;
  static Bm25Index load(const std::filesystem::path& path);

 private:
  struct Doc {
    std::int64_t id = 0;
    std::string title;
    std::size_t length = 0;
  };
  struct Posting {
    std::size_t doc = 0;
    std::size_t tf = 0;
  };

  std::vector<Doc> docs_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  double avgdl_ = 0;
  Bm25Params params_;
};

}  // namespace titlegen
