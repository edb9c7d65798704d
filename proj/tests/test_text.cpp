#include <doctest.h>

#include <sstream>

#include "titlegen/decode.hpp"
#include "titlegen/text.hpp"

using namespace titlegen;

using Words = std::vector<std::string>;

TEST_CASE("tokenize lowercases and splits punctuation") {
  CHECK(tokenize("What does yield do?") == Words{"what", "does", "yield", "do", "?"});
  CHECK(tokenize("") == Words{});
  CHECK(tokenize("   \n\t ") == Words{});
  CHECK(tokenize("os.path.join(a,b)") ==
        Words{"os", ".", "path", ".", "join", "(", "a", ",", "b", ")"});
}

TEST_CASE("tokenize keeps bracketed markers whole") {
  CHECK(tokenize("a [NEXT] b") == Words{"a", "[NEXT]", "b"});
  CHECK(tokenize("x[NEXT]y") == Words{"x", "[NEXT]", "y"});
  CHECK(tokenize("[PAD] [UNK]") == Words{"[PAD]", "[UNK]"});
  // Lowercase lookalikes are ordinary text.
  CHECK(tokenize("[next]") == Words{"[", "next", "]"});
  // Angle-bracket markers are not produced from raw text.
  CHECK(tokenize("<s>x</s>") == Words{"<", "s", ">", "x", "<", "/", "s", ">"});
}

TEST_CASE("non-ascii bytes stay inside words") {
  CHECK(tokenize("Größe ändern") == Words{"größe", "ändern"});
}

TEST_CASE("vocabulary reserves the five markers in fixed order") {
  Vocabulary v;
  CHECK(v.size() == 5);
  CHECK(v.token(marker::kStart) == "<s>");
  CHECK(v.token(marker::kEnd) == "</s>");
  CHECK(v.token(marker::kPad) == "[PAD]");
  CHECK(v.token(marker::kNext) == "[NEXT]");
  CHECK(v.token(marker::kUnk) == "[UNK]");
  CHECK_THROWS_AS(v.token(99), Error);
}

TEST_CASE("open and closed encoding") {
  Vocabulary v;
  const auto open = encode("sort a list", v);
  CHECK(open == TokenSequence{5, 6, 7});
  CHECK(encode("a list", v) == TokenSequence{6, 7});
  CHECK(v.size() == 8);

  const auto closed = encode_closed("sort a dict", v);
  CHECK(closed == TokenSequence{5, 6, marker::kUnk});
  CHECK(v.size() == 8);
  CHECK(encode_closed("x [NEXT] y", v) == TokenSequence{marker::kUnk, marker::kNext, marker::kUnk});
}

TEST_CASE("vocabulary file round trip and validation") {
  Vocabulary v;
  encode("how to merge two dicts", v);
  std::stringstream ss;
  v.save(ss);
  CHECK(ss.str().starts_with("<s>\n</s>\n[PAD]\n[NEXT]\n[UNK]\nhow\n"));
  const Vocabulary back = Vocabulary::load(ss);
  CHECK(back == v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    CHECK(back.lookup(back.token(id)) == id);
  }

  std::istringstream wrong_order("</s>\n<s>\n[PAD]\n[NEXT]\n[UNK]\n");
  CHECK_THROWS_AS(Vocabulary::load(wrong_order), Error);
  std::istringstream duplicate("<s>\n</s>\n[PAD]\n[NEXT]\n[UNK]\na\na\n");
  CHECK_THROWS_AS(Vocabulary::load(duplicate), Error);
  std::istringstream truncated("<s>\n</s>\n");
  CHECK_THROWS_AS(Vocabulary::load(truncated), Error);
}

TEST_CASE("detokenize inverts tokenize on normalized text") {
  const std::vector<std::string> normalized = {
      "what does yield do ?", "sort a list of tuples by second element", "a [NEXT] b",
      "x = json . loads ( s )", ""};
  for (const auto& text : normalized) {
    Vocabulary v;
    CHECK(detokenize(encode(text, v), v) == text);
  }
}

TEST_CASE("detokenize drops control markers") {
  Vocabulary v;
  auto seq = encode("a b", v);
  seq.insert(seq.begin(), marker::kStart);
  seq.push_back(marker::kEnd);
  seq.push_back(marker::kPad);
  CHECK(detokenize(seq, v) == "a b");
}

TEST_CASE("well-formed sequences") {
  using S = TokenSequence;
  CHECK(is_well_formed(S{}));
  CHECK(is_well_formed(S{7, 8, marker::kEnd}));
  CHECK(is_well_formed(S{7, marker::kEnd, marker::kPad, marker::kPad}));
  CHECK(is_well_formed(S{7, marker::kPad}));
  CHECK_FALSE(is_well_formed(S{7, marker::kEnd, 8}));
  CHECK_FALSE(is_well_formed(S{marker::kEnd, marker::kEnd}));
  CHECK_FALSE(is_well_formed(S{marker::kPad, 7}));
}

TEST_CASE("extract_ngrams examples") {
  Vocabulary v;
  const TokenId a = v.intern("a"), b = v.intern("b"), c = v.intern("c");

  auto abc = extract_ngrams(TokenSequence{a, b, c}, 2);
  CHECK(abc.counts.size() == 2);
  CHECK(abc.count({a, b}) == 1);
  CHECK(abc.count({b, c}) == 1);

  auto aaa = extract_ngrams(TokenSequence{a, a, a}, 2);
  CHECK(aaa.counts.size() == 1);
  CHECK(aaa.count({a, a}) == 2);

  CHECK(extract_ngrams(TokenSequence{a}, 2).empty());
  CHECK_THROWS_AS(extract_ngrams(TokenSequence{a}, 0), Error);

  // Control markers are removed before extraction; [NEXT] is content.
  auto wrapped = extract_ngrams(TokenSequence{marker::kStart, a, b, marker::kEnd, marker::kPad}, 2);
  CHECK(wrapped.counts.size() == 1);
  CHECK(wrapped.count({a, b}) == 1);
  CHECK(extract_ngrams(TokenSequence{a, marker::kNext, b}, 2).count({a, marker::kNext}) == 1);
}

TEST_CASE("n-gram totals match stripped length (property)") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    TokenSequence seq;
    const auto len = rng.below(12);
    for (std::uint64_t i = 0; i < len; ++i) {
      // Ids 0..9 include START, END and PAD so stripping is exercised.
      seq.push_back(static_cast<TokenId>(rng.below(10)));
    }
    const std::size_t stripped = strip_markers(seq).size();
    CHECK(extract_ngrams(seq, 1).total() == stripped);
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::size_t expected = stripped >= n ? stripped - n + 1 : 0;
      CHECK(extract_ngrams(seq, n).total() == expected);
    }
  }
}
