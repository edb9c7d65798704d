#include "titlegen/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace titlegen {

namespace {

void require_reference(std::span<const TokenId> reference) {
  if (strip_markers(reference).empty()) throw Error("empty reference");
}

struct Overlap {
  std::size_t matched = 0;
  std::size_t candidate_total = 0;
  std::size_t reference_total = 0;
};

Overlap clipped_overlap(std::span<const TokenId> candidate, std::span<const TokenId> reference,
                        std::size_t n) {
  const NGramBag cand = extract_ngrams(candidate, n);
  const NGramBag ref = extract_ngrams(reference, n);
  Overlap o;
  o.candidate_total = cand.total();
  o.reference_total = ref.total();
  for (const auto& [gram, c] : cand.counts) o.matched += std::min(c, ref.count(gram));
  return o;
}

double f1(double precision, double recall) {
  return precision + recall == 0 ? 0.0 : 2 * precision * recall / (precision + recall);
}

std::size_t metric_slot(Metric m) {
  return static_cast<std::size_t>(std::find(kAllMetrics.begin(), kAllMetrics.end(), m) -
                                  kAllMetrics.begin());
}

}  // namespace

double bleus4(std::span<const TokenId> candidate, std::span<const TokenId> reference) {
  require_reference(reference);
  const TokenSequence cand = strip_markers(candidate);
  const TokenSequence ref = strip_markers(reference);
  if (cand.empty()) return 0.0;

  double log_sum = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const Overlap o = clipped_overlap(cand, ref, n);
    double p;
    if (n == 1) {
      if (o.matched == 0) return 0.0;
      p = static_cast<double>(o.matched) / static_cast<double>(o.candidate_total);
    } else {
      p = static_cast<double>(o.matched + 1) / static_cast<double>(o.candidate_total + 1);
    }
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double brevity = std::min(1.0, std::exp(1.0 - r / c));
  return 100.0 * brevity * std::exp(log_sum / 4.0);
}

double rouge_n(std::span<const TokenId> candidate, std::span<const TokenId> reference,
               std::size_t n) {
  require_reference(reference);
  if (n < 1) throw Error("rouge n must be positive");
  // Identical texts score 100 even when too short to contain an n-gram.
  if (strip_markers(candidate) == strip_markers(reference)) return 100.0;
  const Overlap o = clipped_overlap(candidate, reference, n);
  if (o.matched == 0) return 0.0;
  const double precision = static_cast<double>(o.matched) / static_cast<double>(o.candidate_total);
  const double recall = static_cast<double>(o.matched) / static_cast<double>(o.reference_total);
  return 100.0 * f1(precision, recall);
}

std::size_t lcs_length(std::span<const TokenId> a, std::span<const TokenId> b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_l(std::span<const TokenId> candidate, std::span<const TokenId> reference) {
  require_reference(reference);
  const TokenSequence cand = strip_markers(candidate);
  const TokenSequence ref = strip_markers(reference);
  const std::size_t l = lcs_length(cand, ref);
  if (l == 0) return 0.0;
  const double precision = static_cast<double>(l) / static_cast<double>(cand.size());
  const double recall = static_cast<double>(l) / static_cast<double>(ref.size());
  return 100.0 * f1(precision, recall);
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kBleus4: return "bleus4";
    case Metric::kRouge1: return "rouge1";
    case Metric::kRouge2: return "rouge2";
    case Metric::kRougeL: return "rougeL";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  if (name == "bleu" || name == "bleu4") return Metric::kBleus4;
  if (name == "rougel" || name == "rouge-l") return Metric::kRougeL;
  return std::nullopt;
}

double score(Metric m, std::span<const TokenId> candidate, std::span<const TokenId> reference) {
  switch (m) {
    case Metric::kBleus4: return bleus4(candidate, reference);
    case Metric::kRouge1: return rouge_n(candidate, reference, 1);
    case Metric::kRouge2: return rouge_n(candidate, reference, 2);
    case Metric::kRougeL: return rouge_l(candidate, reference);
  }
  throw Error("unknown metric");
}

double metric_at_k(std::span<const TokenSequence> candidates,
                   std::span<const TokenId> reference, Metric m) {
  if (candidates.empty()) throw Error("Metric@K needs at least one candidate");
  double best = 0;
  for (const auto& c : candidates) best = std::max(best, score(m, c, reference));
  return best;
}

std::map<std::string, std::array<double, 4>> MetricReport::group_means() const {
  std::map<std::string, std::array<double, 4>> sums;
  std::map<std::string, std::size_t> counts;
  for (const auto& ex : examples) {
    auto& s = sums[ex.group];
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += ex.best[i];
    ++counts[ex.group];
  }
  for (auto& [group, s] : sums) {
    for (double& v : s) v /= static_cast<double>(counts[group]);
  }
  return sums;
}

MetricReport evaluate_at_k(std::span<const EvaluationItem> items, std::size_t k) {
  if (k < 1) throw Error("K must be at least 1");
  MetricReport report;
  report.k = k;
  report.examples.reserve(items.size());
  for (const auto& item : items) {
    ExampleScores ex;
    ex.id = item.id;
    ex.group = item.group;
    const std::size_t used = std::min(k, item.candidates.size());
    if (used == 0) {
      require_reference(item.reference);
    } else {
      std::span<const TokenSequence> head(item.candidates.data(), used);
      for (Metric m : kAllMetrics) ex.best[metric_slot(m)] = metric_at_k(head, item.reference, m);
    }
    for (std::size_t i = 0; i < ex.best.size(); ++i) report.mean[i] += ex.best[i];
    report.examples.push_back(std::move(ex));
  }
  if (!report.examples.empty()) {
    for (double& v : report.mean) v /= static_cast<double>(report.examples.size());
  }
  return report;
}

}  // namespace titlegen
