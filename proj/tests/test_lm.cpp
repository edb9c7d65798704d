#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support/table_model.hpp"
#include "support/toy_corpus.hpp"
#include "titlegen/lm.hpp"

using namespace titlegen;

namespace {

// Contract every GeneratorModel must honour, for any code and prefix.
void check_generator_contract(const GeneratorModel& model, std::span<const TokenSequence> codes,
                              std::span<const TokenSequence> prefixes) {
  for (const auto& code : codes) {
    for (const auto& prefix : prefixes) {
      const Distribution d = model.next_distribution(code, prefix);
      REQUIRE(d.size() == model.vocabulary().size());
      CHECK(d.is_valid(1e-9));
      CHECK(std::abs(d.sum() - 1.0) <= 1e-9);
      CHECK(d[marker::kPad] == 0.0);
      CHECK(d[marker::kStart] == 0.0);
      for (double v : d.values()) CHECK(v >= 0.0);
      CHECK(model.next_distribution(code, prefix) == d);
    }
  }
}

NGramLM single_pair_model(std::size_t order) {
  Vocabulary v;
  TrainingPair pair{encode("x", v), encode("a b", v)};
  return NGramLM::train(v, std::span(&pair, 1), {.order = order});
}

}  // namespace

TEST_CASE("single training path puts most mass on its continuation") {
  const NGramLM model = single_pair_model(2);
  const Vocabulary& v = model.vocabulary();
  const TokenId x = v.lookup("x"), a = v.lookup("a"), b = v.lookup("b");
  const Distribution d = model.next_distribution(TokenSequence{x}, TokenSequence{marker::kStart, a});
  CHECK(d.argmax() == b);

  // Hand count over "x [NEXT] <s> a b </s>": unigram table {a,b,</s>} once
  // each; bigram context (a) -> b. Weights 1/2 each; six emittable ids get
  // the 1e-6 floor; the unnormalized total is 1 + 6e-6.
  const double norm = 1.0 + 6e-6;
  CHECK(d[b] == doctest::Approx((0.5 / 3 + 0.5 + 1e-6) / norm).epsilon(1e-12));
  CHECK(d[a] == doctest::Approx((0.5 / 3 + 1e-6) / norm).epsilon(1e-12));
  CHECK(d[marker::kEnd] == doctest::Approx((0.5 / 3 + 1e-6) / norm).epsilon(1e-12));
  CHECK(d[x] == doctest::Approx(1e-6 / norm).epsilon(1e-12));
}

TEST_CASE("unigram model ignores the prefix and follows title counts") {
  Vocabulary v;
  std::vector<TrainingPair> pairs = {{encode("c1", v), encode("a a b", v)},
                                     {encode("c2", v), encode("a", v)}};
  const NGramLM model = NGramLM::train(v, pairs, {.order = 1});
  const TokenId a = v.lookup("a"), b = v.lookup("b");
  const Distribution d1 = model.next_distribution(pairs[0].code, TokenSequence{marker::kStart});
  const Distribution d2 = model.next_distribution(pairs[1].code, TokenSequence{marker::kStart, a, b});
  CHECK(d1 == d2);
  // Predicted tokens: a a b </s> a </s> -> a:3, b:1, </s>:2 of 6.
  CHECK(d1[a] == doctest::Approx(3.0 / 6).epsilon(1e-4));
  CHECK(d1[b] == doctest::Approx(1.0 / 6).epsilon(1e-4));
  CHECK(d1[marker::kEnd] == doctest::Approx(2.0 / 6).epsilon(1e-4));
  CHECK(d1[a] / d1[b] == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("training preconditions") {
  Vocabulary v;
  std::vector<TrainingPair> none;
  CHECK_THROWS_WITH_AS(NGramLM::train(v, none), "empty corpus", Error);
  TrainingPair pair{encode("x", v), encode("a", v)};
  CHECK_THROWS_AS(NGramLM::train(v, std::span(&pair, 1), {.order = 0}), Error);
  CHECK_THROWS_AS(NGramLM::train(v, std::span(&pair, 1), {.order = 2, .weights = {0.5}}), Error);
  CHECK_THROWS_AS(NGramLM::train(v, std::span(&pair, 1), {.order = 2, .weights = {0.7, 0.7}}),
                  Error);
  CHECK_NOTHROW(NGramLM::train(v, std::span(&pair, 1), {.order = 2, .weights = {0.2, 0.8}}));
}

TEST_CASE("prefix must start with <s>") {
  const NGramLM model = single_pair_model(2);
  CHECK_THROWS_AS(model.next_distribution(TokenSequence{}, TokenSequence{}), Error);
  CHECK_THROWS_AS(model.next_distribution(TokenSequence{}, TokenSequence{6}), Error);
}

TEST_CASE("unseen contexts back off and END stays reachable") {
  const NGramLM model = single_pair_model(3);
  const Distribution d =
      model.next_distribution(TokenSequence{marker::kUnk}, TokenSequence{marker::kStart, 7, 7, 7});
  CHECK(d.is_valid());
  CHECK(d[marker::kEnd] > 0);
}

TEST_CASE("generator contract holds for the n-gram model and a table model") {
  const auto examples = testing::make_toy_examples(60, 3);
  std::vector<std::pair<std::string, std::string>> raw;
  for (const auto& ex : examples) raw.emplace_back(ex.code, ex.title);
  const NGramLM lm = train_ngram_lm(raw, {.order = 4});
  const Vocabulary& v = lm.vocabulary();

  std::vector<TokenSequence> codes = {{}, encode_closed(examples[0].code, v),
                                      encode_closed("never seen code at all", v)};
  std::vector<TokenSequence> prefixes = {{marker::kStart}};
  TokenSequence title = encode_closed(examples[0].title, v);
  TokenSequence p{marker::kStart};
  for (TokenId id : title) {
    p.push_back(id);
    prefixes.push_back(p);
  }
  prefixes.push_back({marker::kStart, marker::kUnk, marker::kUnk});
  check_generator_contract(lm, codes, prefixes);

  const testing::TableModel table(4, 99);
  std::vector<TokenSequence> table_codes = {{}, {5, 6}};
  std::vector<TokenSequence> table_prefixes = {{marker::kStart}, {marker::kStart, 5},
                                               {marker::kStart, 8, 8, 6}};
  check_generator_contract(table, table_codes, table_prefixes);
}

namespace {

// Per-position probabilities of a pair's title tokens (and END) in their
// training contexts.
std::vector<double> title_path(const NGramLM& model, const TrainingPair& pair) {
  std::vector<double> out;
  TokenSequence prefix{marker::kStart};
  TokenSequence targets = pair.title;
  targets.push_back(marker::kEnd);
  for (TokenId t : targets) {
    out.push_back(model.next_distribution(pair.code, prefix)[t]);
    prefix.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("adding a copy of a pair never lowers its title probabilities (property)") {
  // Holds for every interpolation order when the pair's title words occur in
  // no other training title: each component ratio (c + a) / (C + b) then has
  // a / b >= c / C. END is shared by every title, so only word positions are
  // asserted.
  Rng rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    Vocabulary v;
    std::vector<TrainingPair> pairs;
    const auto n = 3 + rng.below(10);
    auto random_text = [&](const char* stem, std::size_t pool, std::size_t max_len) {
      std::string s;
      const auto len = 1 + rng.below(max_len);
      for (std::uint64_t i = 0; i < len; ++i) {
        s += stem + std::to_string(rng.below(pool)) + " ";
      }
      return s;
    };
    for (std::uint64_t i = 0; i < n; ++i) {
      pairs.push_back({encode(random_text("c", 4, 4), v), encode(random_text("w", 5, 5), v)});
    }
    const TrainingPair target{encode(random_text("c", 4, 4), v),
                              encode(random_text("u", 3, 5), v)};
    pairs.push_back(target);
    // Extra copies of the target already in the corpus are allowed.
    const auto copies = rng.below(3);
    for (std::uint64_t i = 0; i < copies; ++i) pairs.push_back(target);

    const std::size_t order = 1 + rng.below(5);
    std::vector<double> weights(order);
    double total = 0;
    for (double& w : weights) total += (w = 0.1 + rng.uniform());
    for (double& w : weights) w /= total;
    const NGramOptions options{.order = order, .weights = weights};

    const auto before = title_path(NGramLM::train(v, pairs, options), target);
    pairs.push_back(target);
    const auto after = title_path(NGramLM::train(v, pairs, options), target);
    for (std::size_t i = 0; i + 1 < before.size(); ++i) {
      CHECK(after[i] >= before[i] - 1e-15);
    }
  }
}

TEST_CASE("shared words can lose mass when a pair is duplicated") {
  // Unigram titles "a a" and "a b": p(a) = 3/6. A second "a b" makes it 4/9.
  Vocabulary v;
  std::vector<TrainingPair> pairs = {{encode("x", v), encode("a a", v)},
                                     {encode("y", v), encode("a b", v)}};
  const TokenId a = v.lookup("a");
  const double before = NGramLM::train(v, pairs, {.order = 1})
                            .next_distribution(pairs[1].code, TokenSequence{marker::kStart})[a];
  pairs.push_back(pairs[1]);
  const double after = NGramLM::train(v, pairs, {.order = 1})
                           .next_distribution(pairs[1].code, TokenSequence{marker::kStart})[a];
  CHECK(before == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(after == doctest::Approx(4.0 / 9).epsilon(1e-4));
  CHECK(after < before);
}

TEST_CASE("code beyond the code limit has no influence") {
  Vocabulary v;
  std::vector<TrainingPair> pairs = {{encode("p q r", v), encode("t1", v)},
                                     {encode("p q s", v), encode("t2", v)}};
  const NGramLM model = NGramLM::train(v, pairs, {.order = 5, .code_limit = 2});
  const TokenSequence start{marker::kStart};
  CHECK(model.next_distribution(encode_closed("p q r", v), start) ==
        model.next_distribution(encode_closed("p q", v), start));
  CHECK(model.next_distribution(encode_closed("p q s", v), start) ==
        model.next_distribution(encode_closed("p q r", v), start));
}

TEST_CASE("model file round trip preserves every distribution") {
  const auto examples = testing::make_toy_examples(50, 5);
  std::vector<std::pair<std::string, std::string>> raw;
  for (const auto& ex : examples) raw.emplace_back(ex.code, ex.title);
  const NGramLM model =
      train_ngram_lm(raw, {.order = 3, .weights = {0.1, 0.3, 0.6}, .title_limit = 20});

  std::stringstream first;
  model.save(first);
  const NGramLM loaded = NGramLM::load(first);
  CHECK(loaded == model);
  CHECK(loaded.options().title_limit == 20);

  std::stringstream second;
  loaded.save(second);
  CHECK(second.str() == first.str());

  const Vocabulary& v = model.vocabulary();
  for (const auto& ex : examples) {
    const TokenSequence code = encode_closed(ex.code, v);
    TokenSequence prefix{marker::kStart};
    for (TokenId id : encode_closed(ex.title, v)) {
      CHECK(loaded.next_distribution(code, prefix) == model.next_distribution(code, prefix));
      prefix.push_back(id);
    }
  }
}

TEST_CASE("malformed model files are rejected") {
  std::istringstream empty("");
  CHECK_THROWS_AS(NGramLM::load(empty), Error);
  std::istringstream wrong("not a model\n");
  CHECK_THROWS_AS(NGramLM::load(wrong), Error);

  std::stringstream good;
  single_pair_model(2).save(good);
  std::string text = good.str();
  std::istringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(NGramLM::load(truncated), Error);
}
