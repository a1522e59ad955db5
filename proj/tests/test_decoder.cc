// test_decoder.cc
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

#include "doctest.h"
#include "sylattr/batch.h"
#include "sylattr/decoder.h"
#include "sylattr/mandarin.h"
#include "sylattr/metrics.h"
#include "sylattr/synth.h"
#include "test_util.h"

namespace sylattr {
namespace {

using testing::Rng;

CategoryStream OneHotStream(Category c, const std::vector<int>& path) {
  CategoryStream s = MakeStream(c, static_cast<int>(path.size()));
  for (std::size_t t = 0; t < path.size(); ++t) s.row(static_cast<int>(t))[path[t]] = 1.0;
  return s;
}

std::vector<std::string> Labels(const std::vector<AttributeValue>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.emplace_back(v.label());
  return out;
}

const int kStop = 2, kVowel = 11;  // manner classes (value index + 1)

TEST_CASE("ctc greedy decode") {
  CHECK(Labels(CtcGreedyDecode(OneHotStream(
            Category::kManner, {0, kStop, kStop, 0, kVowel, kVowel}))) ==
        std::vector<std::string>{"stop", "vowel"});
  CHECK(CtcGreedyDecode(OneHotStream(Category::kManner, {0, 0, 0})).empty());
  CHECK(Labels(CtcGreedyDecode(OneHotStream(Category::kManner, {kStop, 0, kStop}))) ==
        std::vector<std::string>{"stop", "stop"});
  // Absent markers separate like blanks and never surface.
  const int na = AbsentClass(Category::kHeight);
  CHECK(Labels(CtcGreedyDecode(OneHotStream(Category::kHeight, {1, na, 1, 1, na}))) ==
        std::vector<std::string>{"high", "high"});
}

TEST_CASE("integrate streams") {
  Rng rng(5);
  PosteriorSet ps;
  ps.utterance_id = "u";
  ps.frame_count = 5;
  for (Category c : {Category::kManner, Category::kPlace, Category::kHeight}) {
    CategoryStream s = MakeStream(c, 5);
    for (int t = 0; t < 5; ++t) testing::RandomRow(rng, s.row(t), 0, 0.3);
    ps.streams.push_back(std::move(s));
  }
  const TupleFrames m(ps, KnowledgeSource::Parse("M"));
  CHECK(m.num_streams() == 1);
  const TupleFrames mp(ps, KnowledgeSource::Parse("M+P"));
  CHECK(mp.num_frames() == 5);
  // The per-category view is the original stream, untouched.
  for (int t = 0; t < 5; ++t) {
    const auto row = mp.Row(t, 1);
    const auto orig = ps.streams[1].row(t);
    CHECK(std::equal(row.begin(), row.end(), orig.begin(), orig.end()));
  }
  CHECK_THROWS_AS(TupleFrames(ps, KnowledgeSource::Parse("M+B")), FormatError);

  ProjectedTuple stop_bilabial;
  stop_bilabial.slots[0] = 1;
  stop_bilabial.slots[1] = 0;
  CHECK(mp.TupleLogProb(2, stop_bilabial) ==
        doctest::Approx(std::log(ps.streams[0].row(2)[2]) +
                        std::log(ps.streams[1].row(2)[1])));
  CHECK(mp.BlankLogProb(2) ==
        doctest::Approx(std::log(ps.streams[0].row(2)[0]) +
                        std::log(ps.streams[1].row(2)[0])));
  const TupleFrames h(ps, KnowledgeSource::Parse("H"));
  CHECK(h.BlankLogProb(1) ==
        doctest::Approx(std::log(ps.streams[2].row(1)[0] + ps.streams[2].row(1)[8])));
}

TEST_CASE("noiseless decode recovers the reference up to homonymy") {
  const Lexicon lex = mandarin::SeedLexicon();
  const auto ks = KnowledgeSource::Parse("M+P+A+H+B");
  const Utterance ref{"t", {"wu", "xian", "yi"}};
  const PosteriorSet ps = SynthesizeUtterance(ref, lex, ks, SynthConfig(), 0);
  const Decoder decoder(lex, ks, nullptr, DecoderOptions());
  const NBestList nbest = decoder.Decode(ps);
  REQUIRE_FALSE(nbest.empty());
  CHECK(SherCounts(ref.tokens, nbest.front().syllables, decoder.homonyms()).errors() == 0);
  CHECK(nbest.front().acoustic == 0.0);
}

TEST_CASE("homonym variants are distinguished by the language model") {
  const Lexicon lex = mandarin::SeedLexicon();
  const auto ks = KnowledgeSource::Parse("M+P+A+H+B");
  std::vector<Sentence> corpus(5, Sentence{"wu", "xuan", "yi"});
  const NGramModel lm = TrainNGram(corpus, {});
  const Utterance ref{"t", {"wu", "xuan", "yi"}};
  const PosteriorSet ps = SynthesizeUtterance(ref, lex, ks, SynthConfig(), 0);
  const Decoder plain(lex, ks, nullptr, DecoderOptions());
  CHECK(plain.Decode(ps).front().syllables ==
        std::vector<std::string>{"wu", "xian", "yi"});
  const Decoder fused(lex, ks, &lm, DecoderOptions());
  CHECK(fused.Decode(ps).front().syllables == ref.tokens);
  // Post-hoc rescoring needs the homonym variants of an LM-free n-best list.
  DecoderOptions wide;
  wide.lm_weight = 0.0;
  const Decoder no_weight(lex, ks, &lm, wide);
  const NBestList nbest = no_weight.Decode(ps);
  CHECK(RescoreNBest(nbest, &lm, 0.5, 0.0).front().syllables != ref.tokens);
  const NBestList expanded = ExpandHomonyms(nbest, no_weight.homonyms());
  CHECK(expanded.size() > nbest.size());
  CHECK(RescoreNBest(expanded, &lm, 0.5, 0.0).front().syllables == ref.tokens);
}

TEST_CASE("zero lm weight matches decoding without a model") {
  Rng rng(21);
  const Lexicon lex = testing::RandomLexicon(rng, 6, 2, 2);
  const auto ks = KnowledgeSource::Parse("M+H");
  std::vector<Sentence> corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back(testing::RandomSentence(rng, lex, 1, 4));
  const NGramModel lm = TrainNGram(corpus, {});
  DecoderOptions opts;
  opts.lm_weight = 0.0;
  for (int i = 0; i < 20; ++i) {
    SynthConfig config;
    config.SetNoise(0.2);
    config.seed = static_cast<std::uint64_t>(i);
    const Utterance ref{"u", testing::RandomSentence(rng, lex, 1, 3)};
    const PosteriorSet ps = SynthesizeUtterance(ref, lex, ks, config, 0);
    const NBestList a = Decoder(lex, ks, nullptr, opts).Decode(ps);
    const NBestList b = Decoder(lex, ks, &lm, opts).Decode(ps);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].syllables == b[k].syllables);
      CHECK(a[k].score == b[k].score);
    }
  }
}

TEST_CASE("n-best lists are sorted and deterministic") {
  const Lexicon lex = mandarin::SeedLexicon();
  const auto ks = KnowledgeSource::Parse("M+P");
  SynthConfig config;
  config.SetNoise(0.1);
  const Utterance ref{"t", {"ba", "shan", "lu"}};
  const PosteriorSet ps = SynthesizeUtterance(ref, lex, ks, config, 4);
  const Decoder decoder(lex, ks, nullptr, DecoderOptions());
  const NBestList a = decoder.Decode(ps);
  const NBestList b = decoder.Decode(ps);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() <= 10);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].syllables == b[k].syllables);
    CHECK(a[k].score == b[k].score);
    if (k > 0) CHECK(HypothesisBefore(a[k - 1], a[k]));
  }
}

TEST_CASE("decode failures are reported, not returned empty") {
  Lexicon lex = ParseLexicon(
      "ba\tstop,bilabial,voiceless,unaspirated,-,-;"
      "vowel,vowel,voiced,unaspirated,low,central\n");
  PosteriorSet ps;
  ps.utterance_id = "bad";
  ps.frame_count = 1;
  // A single frame cannot hold a two-segment syllable, and blank has no mass.
  CategoryStream m = MakeStream(Category::kManner, 1);
  m.row(0)[2] = 1.0;
  ps.streams.push_back(m);
  const Decoder decoder(lex, KnowledgeSource::Parse("M"), nullptr, DecoderOptions());
  CHECK_THROWS_AS(decoder.Decode(ps), RuntimeError);
  DecoderOptions bad;
  bad.beam = 0;
  CHECK_THROWS_AS(Decoder(lex, KnowledgeSource::Parse("M"), nullptr, bad), FormatError);
}

TEST_CASE("empty input decodes to the empty hypothesis") {
  const Lexicon lex = mandarin::SeedLexicon();
  PosteriorSet ps;
  ps.utterance_id = "empty";
  ps.streams.push_back(MakeStream(Category::kManner, 0));
  const NBestList nbest =
      Decoder(lex, KnowledgeSource::Parse("M"), nullptr, DecoderOptions()).Decode(ps);
  REQUIRE(nbest.size() == 1);
  CHECK(nbest[0].syllables.empty());
}

TEST_CASE("beam search matches exhaustive enumeration on small inputs") {
  Rng rng(1234);
  for (int i = 0; i < 40; ++i) {
    CAPTURE(i);
    const testing::SmallInstance in = testing::MakeSmallInstance(rng);
    DecoderOptions opts;
    opts.beam = 1 << 20;
    opts.lm_weight = in.lm_weight;
    opts.insertion_bonus = in.bonus;
    const NGramModel* lm = in.lm ? &*in.lm : nullptr;
    const double best = testing::ExhaustiveBestScore(in.ps, in.lex, in.ks, lm,
                                                     in.lm_weight, in.bonus);
    const double got = Decoder(in.lex, in.ks, lm, opts).Decode(in.ps).front().score;
    CHECK(got == doctest::Approx(best).epsilon(1e-12).scale(0));
    CHECK(std::abs(got - best) <= 1e-9);
  }
}

TEST_CASE("beam one on a dominant single syllable finds the exhaustive argmax") {
  Rng rng(77);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const Lexicon lex = testing::RandomLexicon(rng, 3, 2, 2);
    const auto ks = KnowledgeSource::Parse("M");
    const Utterance ref{"x", {lex.entries()[0].syllable}};
    SynthConfig config;
    config.SetNoise(0.05);
    const PosteriorSet ps = SynthesizeUtterance(ref, lex, ks, config, i);
    if (ps.frame_count > 6) continue;
    ++checked;
    DecoderOptions opts;
    opts.beam = 1;
    std::vector<std::string> argmax;
    const double best =
        testing::ExhaustiveBestScore(ps, lex, ks, nullptr, 0, 0, &argmax);
    const Decoder decoder(lex, ks, nullptr, opts);
    const Hypothesis top = decoder.Decode(ps).front();
    REQUIRE(top.syllables.size() == argmax.size());
    for (std::size_t k = 0; k < argmax.size(); ++k) {
      CHECK(decoder.homonyms().ClassOf(top.syllables[k]) ==
            decoder.homonyms().ClassOf(argmax[k]));
    }
    // A narrow beam drops prefix mass, so its score is a lower bound.
    CHECK(top.score <= best + 1e-9);
  }
  CHECK(checked >= 10);
}

TEST_CASE("narrow beams never beat a beam wide enough to be exact") {
  // A narrow beam only sums a subset of each hypothesis' paths, so its top
  // score is bounded by the exact optimum. Strict monotonicity between two
  // narrow widths does not hold for prefix beam search in general.
  Rng rng(15);
  for (int i = 0; i < 30; ++i) {
    const testing::SmallInstance in = testing::MakeSmallInstance(rng);
    const NGramModel* lm = in.lm ? &*in.lm : nullptr;
    DecoderOptions opts;
    opts.lm_weight = in.lm_weight;
    opts.insertion_bonus = in.bonus;
    opts.beam = 1 << 20;
    const double exact = Decoder(in.lex, in.ks, lm, opts).Decode(in.ps).front().score;
    for (int beam : {1, 2, 4, 8}) {
      opts.beam = beam;
      CHECK(Decoder(in.lex, in.ks, lm, opts).Decode(in.ps).front().score <=
            exact + 1e-9);
    }
  }
}

TEST_CASE("parallel decoding equals serial decoding") {
  const Lexicon lex = mandarin::SeedLexicon();
  const auto ks = KnowledgeSource::Parse("M+P+H");
  Rng rng(3);
  std::vector<Utterance> refs;
  for (int i = 0; i < 30; ++i) {
    refs.push_back({"u" + std::to_string(i), testing::RandomSentence(rng, lex, 1, 6)});
  }
  SynthConfig config;
  config.SetNoise(0.1);
  const auto sets = SynthesizeCorpus(refs, lex, ks, config, 4);
  const Decoder decoder(lex, ks, nullptr, DecoderOptions());
  const auto par = DecodeCorpus(decoder, sets, 4);
  const auto ser = DecodeCorpusSerial(decoder, sets);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    REQUIRE(par[i].nbest.size() == ser[i].nbest.size());
    for (std::size_t k = 0; k < par[i].nbest.size(); ++k) {
      CHECK(par[i].nbest[k].syllables == ser[i].nbest[k].syllables);
      CHECK(par[i].nbest[k].score == ser[i].nbest[k].score);
    }
  }
}

}  // namespace
}  // namespace sylattr
