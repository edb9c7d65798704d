#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/metric_cases.hpp"
#include "titlegen/decode.hpp"
#include "titlegen/metrics.hpp"

using namespace titlegen;

namespace {

// Longest subsequence of `a` found in `b`, by trying every subset of `a`.
std::size_t lcs_exhaustive(const TokenSequence& a, const TokenSequence& b) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::size_t j = 0, size = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      else {
        ++j;
        ++size;
      }
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

TokenSequence random_seq(Rng& rng, std::size_t max_len, std::size_t alphabet) {
  TokenSequence s(rng.below(max_len + 1));
  for (auto& t : s) t = static_cast<TokenId>(marker::kCount + rng.below(alphabet));
  return s;
}

}  // namespace

TEST_CASE("scores agree with the scripted oracle") {
  for (const auto& c : testing::kMetricCases) {
    CAPTURE(c.candidate);
    CAPTURE(c.reference);
    Vocabulary v;
    const TokenSequence cand = encode(c.candidate, v);
    const TokenSequence ref = encode(c.reference, v);
    CHECK(std::abs(bleus4(cand, ref) - c.bleus4) <= 1e-6);
    CHECK(std::abs(rouge_n(cand, ref, 1) - c.rouge1) <= 1e-6);
    CHECK(std::abs(rouge_n(cand, ref, 2) - c.rouge2) <= 1e-6);
    CHECK(std::abs(rouge_l(cand, ref) - c.rougeL) <= 1e-6);
  }
}

TEST_CASE("bleus4 examples") {
  Vocabulary v;
  const auto ref = encode("the cat sat on the mat", v);
  CHECK(bleus4(encode("the cat sat on mat", v), ref) ==
        doctest::Approx(65.11126026643228).epsilon(1e-12));
  CHECK(bleus4(ref, ref) == 100.0);
  CHECK(bleus4(encode("dogs run fast", v), ref) == 0.0);
  CHECK(bleus4(TokenSequence{}, ref) == 0.0);
  // Markers are ignored.
  auto wrapped = ref;
  wrapped.push_back(marker::kEnd);
  wrapped.push_back(marker::kPad);
  CHECK(bleus4(wrapped, ref) == 100.0);
}

TEST_CASE("rouge examples") {
  Vocabulary v;
  CHECK(rouge_n(encode("a b c", v), encode("a b", v), 1) == doctest::Approx(80.0));
  CHECK(rouge_l(encode("a x b", v), encode("a b", v)) == doctest::Approx(80.0));
  CHECK(rouge_n(encode("a b", v), encode("a b", v), 2) == 100.0);
  CHECK(rouge_n(encode("a b", v), encode("c d", v), 1) == 0.0);
  CHECK(rouge_l(encode("a b", v), encode("c d", v)) == 0.0);
  CHECK(rouge_l(TokenSequence{}, encode("c d", v)) == 0.0);
  CHECK_THROWS_AS(rouge_n(encode("a", v), encode("a", v), 0), Error);
}

TEST_CASE("empty references are rejected") {
  Vocabulary v;
  const auto cand = encode("a b", v);
  const TokenSequence empty;
  const TokenSequence only_markers{marker::kEnd, marker::kPad};
  for (Metric m : kAllMetrics) {
    CHECK_THROWS_AS(score(m, cand, empty), Error);
    CHECK_THROWS_AS(score(m, cand, only_markers), Error);
  }
}

TEST_CASE("lcs matches exhaustive subsequence search (property)") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_seq(rng, 12, 4);
    const auto b = random_seq(rng, 12, 4);
    CHECK(lcs_length(a, b) == lcs_exhaustive(a, b));
    CHECK(lcs_length(a, b) == lcs_length(b, a));
  }
}

TEST_CASE("metric bounds and endpoints (property)") {
  Rng rng(9);
  for (int trial = 0; trial < 400; ++trial) {
    auto cand = random_seq(rng, 10, 6);
    auto ref = random_seq(rng, 10, 6);
    if (ref.empty()) ref.push_back(marker::kCount);
    for (Metric m : kAllMetrics) {
      const double s = score(m, cand, ref);
      CHECK(s >= 0.0);
      CHECK(s <= 100.0 + 1e-9);
      CHECK(score(m, ref, ref) == doctest::Approx(100.0));
    }
    // Shift the candidate into a disjoint alphabet.
    for (auto& t : cand) t += 100;
    for (Metric m : kAllMetrics) CHECK(score(m, cand, ref) == 0.0);
  }
}

TEST_CASE("clipped bigram overlap never exceeds unigram overlap (property)") {
  Rng rng(10);
  auto clipped = [](const TokenSequence& a, const TokenSequence& b, std::size_t n) {
    const NGramBag x = extract_ngrams(a, n), y = extract_ngrams(b, n);
    std::size_t o = 0;
    for (const auto& [g, c] : x.counts) o += std::min(c, y.count(g));
    return o;
  };
  for (int trial = 0; trial < 400; ++trial) {
    const auto a = random_seq(rng, 10, 4);
    const auto b = random_seq(rng, 10, 4);
    CHECK(clipped(a, b, 2) <= clipped(a, b, 1));
  }
}

TEST_CASE("metric at k") {
  Vocabulary v;
  const auto ref = encode("how to merge two dicts", v);
  std::vector<TokenSequence> cands = {encode("merge dicts", v), encode("two dicts merge", v)};
  for (Metric m : kAllMetrics) {
    CHECK(metric_at_k(std::span(cands).first(1), ref, m) == score(m, cands[0], ref));
  }
  cands.push_back(ref);
  for (Metric m : kAllMetrics) CHECK(metric_at_k(cands, ref, m) == 100.0);
  std::vector<TokenSequence> none;
  CHECK_THROWS_AS(metric_at_k(none, ref, Metric::kRouge1), Error);
}

TEST_CASE("metric at k never decreases as candidates are appended (property)") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto ref = random_seq(rng, 8, 5);
    ref.push_back(marker::kCount);
    std::vector<TokenSequence> cands;
    std::array<double, 4> previous{};
    for (int i = 0; i < 6; ++i) {
      cands.push_back(random_seq(rng, 8, 5));
      for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
        const double now = metric_at_k(cands, ref, kAllMetrics[m]);
        CHECK(now >= previous[m]);
        previous[m] = now;
      }
    }
  }
}

TEST_CASE("metric names") {
  for (Metric m : kAllMetrics) CHECK(parse_metric(metric_name(m)) == m);
  CHECK(metric_name(Metric::kRougeL) == "rougeL");
  CHECK(parse_metric("bleu") == Metric::kBleus4);
  CHECK_FALSE(parse_metric("meteor").has_value());
}

TEST_CASE("evaluation report") {
  Vocabulary v;
  std::vector<EvaluationItem> items = {
      {"1", "python", encode("a b c", v), {encode("x y", v), encode("a b c", v)}},
      {"2", "go", encode("a b", v), {encode("a b", v)}},
      {"3", "go", encode("a b", v), {}},
  };
  const MetricReport at1 = evaluate_at_k(items, 1);
  REQUIRE(at1.examples.size() == 3);
  CHECK(at1.k == 1);
  CHECK(at1.examples[0].best[0] == 0.0);
  CHECK(at1.examples[1].best[0] == 100.0);
  CHECK(at1.examples[2].best == std::array<double, 4>{});
  CHECK(at1.mean[1] == doctest::Approx(100.0 / 3));

  const MetricReport at2 = evaluate_at_k(items, 2);
  CHECK(at2.examples[0].best[0] == 100.0);
  const auto groups = at2.group_means();
  REQUIRE(groups.size() == 2);
  CHECK(groups.at("python")[2] == 100.0);
  CHECK(groups.at("go")[2] == doctest::Approx(50.0));

  CHECK_THROWS_AS(evaluate_at_k(items, 0), Error);
  std::vector<EvaluationItem> bad = {{"4", "", TokenSequence{}, {encode("a", v)}}};
  CHECK_THROWS_AS(evaluate_at_k(bad, 1), Error);
}
