// test_ngram.cc
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"
#include "sylattr/ngram.h"

namespace sylattr {
namespace {

double P(const NGramModel& m, std::vector<std::string> ctx, const std::string& w) {
  std::vector<int> ids;
  for (const auto& c : ctx) ids.push_back(m.WordId(c));
  return std::pow(10.0, m.Log10Prob(ids, m.WordId(w)));
}

const std::vector<Sentence> kTiny = {{"a", "b"}, {"a", "c"}, {"b", "c"}};

TEST_CASE("vocabulary layout") {
  const NGramModel m = TrainNGram(kTiny, {});
  CHECK(m.vocabulary() ==
        std::vector<std::string>{"<unk>", "<s>", "</s>", "a", "b", "c"});
  CHECK(m.WordId("zzz") == m.unk_id());
  CHECK(m.order() == 3);
}

TEST_CASE("kneser-ney by hand") {
  LmTrainOptions o;
  o.order = 2;
  const NGramModel m = TrainNGram(kTiny, o);
  // Continuation counts: a 1, b 2, c 2, </s> 2 over 7 bigram types; the
  // leftover 0.75 * 4 / 7 is spread over 5 predictable words.
  CHECK(P(m, {}, "a") == doctest::Approx(4.25 / 35));
  CHECK(P(m, {}, "b") == doctest::Approx(9.25 / 35));
  CHECK(P(m, {}, "</s>") == doctest::Approx(9.25 / 35));
  CHECK(P(m, {}, "<unk>") == doctest::Approx(3.0 / 35));
  CHECK(P(m, {"a"}, "b") == doctest::Approx(0.25 / 2 + 0.75 * 9.25 / 35));
  CHECK(P(m, {"a"}, "a") == doctest::Approx(0.75 * 4.25 / 35));
  // c is only followed by </s> (twice): leftover 0.75 / 2.
  CHECK(P(m, {"c"}, "b") == doctest::Approx(0.375 * 9.25 / 35));
  // Unseen context backs off to the unigram.
  CHECK(P(m, {"<unk>"}, "a") == doctest::Approx(4.25 / 35));
}

TEST_CASE("symmetric corpus gives symmetric probabilities") {
  const std::vector<Sentence> corpus = {{"a", "b"}, {"b", "a"}};
  for (Smoothing s : {Smoothing::kKneserNey, Smoothing::kModifiedKneserNey,
                      Smoothing::kAddK}) {
    LmTrainOptions o;
    o.smoothing = s;
    const NGramModel m = TrainNGram(corpus, o);
    CHECK(P(m, {}, "a") == doctest::Approx(P(m, {}, "b")));
    CHECK(P(m, {"<s>"}, "a") == doctest::Approx(P(m, {"<s>"}, "b")));
  }
}

TEST_CASE("add-k on a unigram model") {
  LmTrainOptions o;
  o.order = 1;
  o.smoothing = Smoothing::kAddK;
  o.add_k = 1.0;
  const NGramModel m = TrainNGram(kTiny, o);
  // Counts: a 2, b 2, c 2, </s> 3, <unk> 0 over 9 tokens, V = 5, uniform
  // base, so P = (c + 1) / (9 + 5).
  CHECK(P(m, {}, "a") == doctest::Approx(3.0 / 14));
  CHECK(P(m, {}, "</s>") == doctest::Approx(4.0 / 14));
  CHECK(P(m, {}, "<unk>") == doctest::Approx(1.0 / 14));
}

TEST_CASE("sentence scores and perplexity") {
  LmTrainOptions o;
  o.order = 1;
  o.smoothing = Smoothing::kAddK;
  o.add_k = 1.0;
  const NGramModel m = TrainNGram(kTiny, o);
  const Sentence empty;
  CHECK(ScoreSentence(m, empty) == doctest::Approx(std::log(4.0 / 14)));
  const Sentence ab = {"a", "b"};
  CHECK(ScoreSentence(m, ab) ==
        doctest::Approx(std::log(3.0 / 14) * 2 + std::log(4.0 / 14)));
  CHECK(Perplexity(m, {ab}) ==
        doctest::Approx(std::exp(-ScoreSentence(m, ab) / 3)));

  // A corpus where every word is equally likely has perplexity = vocab size.
  LmTrainOptions u;
  u.order = 1;
  u.smoothing = Smoothing::kAddK;
  u.add_k = 1e-12;
  const NGramModel flat = TrainNGram({{"a", "b", "c"}}, u);
  // a, b, c and </s> each once; <unk> gets almost nothing.
  CHECK(Perplexity(flat, {{"a", "b", "c"}}) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("training is deterministic") {
  const NGramModel a = TrainNGram(kTiny, {});
  const NGramModel b = TrainNGram(kTiny, {});
  CHECK(WriteArpa(a) == WriteArpa(b));
}

TEST_CASE("modified kneser-ney falls back when counts of counts are missing") {
  LmTrainOptions o;
  o.smoothing = Smoothing::kModifiedKneserNey;
  const NGramModel m = TrainNGram(kTiny, o);
  CHECK(m.smoothing() == Smoothing::kAddK);

  // Skewed random text has singletons through four-of-a-kind at every order.
  std::mt19937_64 rng(3);
  std::geometric_distribution<int> word(0.15);
  std::vector<Sentence> rich(400);
  for (Sentence& s : rich) {
    for (int i = 0; i < 6; ++i) s.push_back("w" + std::to_string(word(rng)));
  }
  LmTrainOptions o2;
  o2.order = 2;
  o2.smoothing = Smoothing::kModifiedKneserNey;
  CHECK(TrainNGram(rich, o2).smoothing() == Smoothing::kModifiedKneserNey);
}

TEST_CASE("invalid training input") {
  CHECK_THROWS_AS(TrainNGram({}, {}), FormatError);
  CHECK_NOTHROW(TrainNGram({{}}, {}));
  LmTrainOptions o;
  o.order = 0;
  CHECK_THROWS_AS(TrainNGram(kTiny, o), FormatError);
  o.order = 6;
  CHECK_THROWS_AS(TrainNGram(kTiny, o), FormatError);
  LmTrainOptions d;
  d.discount = 1.5;
  CHECK_THROWS_AS(TrainNGram(kTiny, d), FormatError);
  CHECK_THROWS_AS(TrainNGram({{"a", "<s>"}}, {}), FormatError);
}

TEST_CASE("arpa reading") {
  const NGramModel m = TrainNGram(kTiny, {});
  const std::string text = WriteArpa(m);
  CHECK(text.rfind("\\data\\\n", 0) == 0);
  CHECK(text.find("\\end\\") != std::string::npos);
  CHECK(WriteArpa(ReadArpa(text)) == text);
  CHECK_THROWS_AS(ReadArpa(""), FormatError);
  CHECK_THROWS_AS(ReadArpa("\\data\\\nngram 1=1\n\n\\1-grams:\n-1 a\n\n\\end\\\n"),
                  FormatError);
  std::string bad = text;
  bad.replace(bad.find("\\1-grams:\n") + 10, 1, "x");
  CHECK_THROWS_WITH_AS(ReadArpa(bad), doctest::Contains("ARPA line"), FormatError);
}

TEST_CASE("smoothing names") {
  CHECK(ParseSmoothing("kn") == Smoothing::kKneserNey);
  CHECK(ParseSmoothing("mkn") == Smoothing::kModifiedKneserNey);
  CHECK(ParseSmoothing("addk") == Smoothing::kAddK);
  CHECK(SmoothingName(Smoothing::kAddK) == "addk");
  CHECK_THROWS_AS(ParseSmoothing("witten-bell"), FormatError);
}

TEST_CASE("sentence parsing") {
  const auto s = ParseSentences("a b\n\n  c  \n");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Sentence{"a", "b"});
  CHECK(s[1] == Sentence{"c"});
}

}  // namespace
}  // namespace sylattr
