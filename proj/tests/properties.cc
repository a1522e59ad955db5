// properties.cc
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

#include "properties.h"

#include <cmath>
#include <functional>
#include <set>

#include "sylattr/decoder.h"
#include "sylattr/lexicon.h"
#include "sylattr/metrics.h"
#include "sylattr/ngram.h"
#include "sylattr/posterior.h"
#include "test_util.h"

namespace sylattr::testing {

namespace {

// Runs body once per case; body returns an empty string on success or a
// description of the failure.
SuiteResult Run(std::string name, int cases, std::uint64_t seed,
                const std::function<std::string(Rng&)>& body) {
  SuiteResult r;
  r.name = std::move(name);
  for (int i = 0; i < cases; ++i) {
    Rng rng(seed * 1000003u + static_cast<std::uint64_t>(i));
    std::string failure;
    try {
      failure = body(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (!failure.empty()) {
      if (r.failures++ == 0) {
        r.first_failure = "case " + std::to_string(i) + ": " + failure;
      }
    }
  }
  return r;
}

std::vector<Sentence> RandomCorpus(Rng& rng) {
  const int vocab = Uniform(rng, 1, 8);
  std::vector<Sentence> corpus(Uniform(rng, 1, 10));
  for (Sentence& s : corpus) {
    const int n = Uniform(rng, 0, 6);
    for (int i = 0; i < n; ++i) {
      s.push_back("w" + std::to_string(Uniform(rng, 0, vocab - 1)));
    }
  }
  return corpus;
}

LmTrainOptions RandomLmOptions(Rng& rng) {
  LmTrainOptions o;
  o.order = Uniform(rng, 1, 4);
  o.smoothing = static_cast<Smoothing>(Uniform(rng, 0, 2));
  return o;
}

PosteriorSet RandomPosteriorSet(Rng& rng, const std::string& id) {
  PosteriorSet set;
  set.utterance_id = id;
  set.frame_count = Uniform(rng, 0, 6);
  for (Category c : RandomKs(rng).categories()) {
    CategoryStream s = MakeStream(c, set.frame_count);
    for (int t = 0; t < set.frame_count; ++t) {
      auto row = s.row(t);
      RandomRow(rng, row, Uniform(rng, 0, s.num_classes - 1), Uniform01(rng));
      for (double& p : row) p = QuantizeProbability(p);
    }
    set.streams.push_back(std::move(s));
  }
  return set;
}

}  // namespace

SuiteResult CtcCollapseSuite(int cases, std::uint64_t seed) {
  return Run("ctc collapse", cases, seed, [](Rng& rng) -> std::string {
    const Category c = kAllCategories[Uniform(rng, 0, kNumCategories - 1)];
    CategoryStream s = MakeStream(c, Uniform(rng, 0, 20));
    std::vector<int> path;
    for (int t = 0; t < s.num_frames(); ++t) {
      // Small label range so repeats and blanks are frequent.
      const int label = Uniform(rng, 0, std::min(3, s.num_classes - 1));
      const int cls = Uniform(rng, 0, 4) == 0 ? s.num_classes - 1 : label;
      path.push_back(cls);
      s.row(t)[cls] = 1.0;
    }
    std::vector<int> expected;
    for (int v : Collapse(path)) {
      if (v != AbsentClass(c)) expected.push_back(v);
    }
    std::vector<int> got;
    for (const AttributeValue& v : CtcGreedyDecode(s)) {
      if (v.category != c) return "wrong category";
      got.push_back(v.index + 1);
    }
    return got == expected ? "" : "collapse mismatch";
  });
}

SuiteResult EditDistanceSuite(int cases, std::uint64_t seed) {
  return Run("edit distance", cases, seed, [](Rng& rng) -> std::string {
    const auto random_seq = [&] {
      std::vector<int> v(Uniform(rng, 0, 8));
      for (int& x : v) x = Uniform(rng, 0, 2);
      return v;
    };
    const auto a = random_seq(), b = random_seq(), c = random_seq();
    const Alignment ab = Align(a, b);
    if (ab.cost() != RecursiveDistance(a, 0, b, 0)) return "cost differs from oracle";
    if (ab.cost() != Align(b, a).cost()) return "asymmetric cost";
    if (Align(a, c).cost() > ab.cost() + Align(b, c).cost()) {
      return "triangle inequality violated";
    }
    long long match = 0;
    for (EditOp op : ab.ops) match += op == EditOp::kMatch;
    const ErrorCounts& k = ab.counts;
    if (match + k.substitutions + k.deletions != static_cast<long long>(a.size()) ||
        match + k.substitutions + k.insertions != static_cast<long long>(b.size()) ||
        k.ref_tokens != static_cast<long long>(a.size())) {
      return "operation counts inconsistent";
    }
    return "";
  });
}

SuiteResult LexiconRoundTripSuite(int cases, std::uint64_t seed) {
  return Run("lexicon round trip", cases, seed, [](Rng& rng) -> std::string {
    const Lexicon lex = RandomLexicon(rng, Uniform(rng, 1, 15), 4, 4);
    const Lexicon back = ParseLexicon(FormatLexicon(lex));
    if (back.entries() != lex.entries() || back.language() != lex.language()) {
      return "format/parse changed the lexicon";
    }
    const KnowledgeSource ks = RandomKs(rng);
    const HomonymIndex index(lex, ks);
    for (const LexiconEntry& e : lex.entries()) {
      const auto found = index.Lookup(SyllableToAttributes(lex, e.syllable, ks));
      if (std::find(found.begin(), found.end(), e.syllable) == found.end()) {
        return "syllable '" + e.syllable + "' not recovered from its attributes";
      }
    }
    return "";
  });
}

SuiteResult RefinementSuite(int cases, std::uint64_t seed) {
  return Run("homonym refinement", cases, seed, [](Rng& rng) -> std::string {
    const Lexicon lex = RandomLexicon(rng, Uniform(rng, 2, 30), 3, 3);
    const KnowledgeSource small = RandomKs(rng);
    std::vector<Category> more = small.categories();
    for (Category c : kAllCategories) {
      if (!small.Contains(c) && Uniform(rng, 0, 1)) more.push_back(c);
    }
    const KnowledgeSource big(more);
    const HomonymIndex coarse(lex, small), fine(lex, big);
    std::set<std::string> seen;
    for (const auto& cls : fine.classes()) {
      const int parent = coarse.ClassOf(cls.front());
      for (const std::string& s : cls) {
        if (coarse.ClassOf(s) != parent) return "class of a larger ks straddles";
        if (!seen.insert(s).second) return "syllable in two classes";
      }
    }
    if (seen.size() != lex.size()) return "classes do not cover the lexicon";
    if (fine.num_classes() < coarse.num_classes()) return "class count decreased";
    return "";
  });
}

SuiteResult LmNormalizationSuite(int cases, std::uint64_t seed) {
  return Run("lm normalization", cases, seed, [](Rng& rng) -> std::string {
    const auto corpus = RandomCorpus(rng);
    const NGramModel model = TrainNGram(corpus, RandomLmOptions(rng));
    for (int n = 1; n <= model.order(); ++n) {
      for (const auto& [gram, e] : model.table(n)) {
        if (e.log10_prob > 0) return "positive log probability";
      }
    }
    const int v = static_cast<int>(model.vocabulary().size());
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> ctx = {model.start_id()};
      const int len = Uniform(rng, 0, 4);
      for (int i = 0; i < len; ++i) {
        int w = Uniform(rng, 0, v - 1);
        if (w == model.start_id() || w == model.end_id()) w = model.unk_id();
        ctx.push_back(w);
      }
      double sum = 0.0;
      for (int w = 0; w < v; ++w) {
        if (w != model.start_id()) sum += std::pow(10.0, model.Log10Prob(ctx, w));
      }
      if (std::abs(sum - 1.0) > 1e-6) {
        return "context sums to " + std::to_string(sum);
      }
    }
    return "";
  });
}

SuiteResult ApstRoundTripSuite(int cases, std::uint64_t seed) {
  return Run("apst round trip", cases, seed, [](Rng& rng) -> std::string {
    std::vector<PosteriorSet> sets;
    const int n = Uniform(rng, 1, 3);
    for (int i = 0; i < n; ++i) {
      sets.push_back(RandomPosteriorSet(rng, "utt" + std::to_string(i)));
    }
    const std::string text = WritePosteriors(sets);
    const auto back = ReadPosteriors(text);
    if (back.size() != sets.size()) return "utterance count changed";
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (back[i].utterance_id != sets[i].utterance_id ||
          back[i].frame_count != sets[i].frame_count ||
          back[i].streams.size() != sets[i].streams.size()) {
        return "header changed";
      }
      for (std::size_t k = 0; k < sets[i].streams.size(); ++k) {
        if (back[i].streams[k].category != sets[i].streams[k].category ||
            back[i].streams[k].probs != sets[i].streams[k].probs) {
          return "probabilities changed";
        }
      }
    }
    return WritePosteriors(back) == text ? "" : "rewrite not byte-identical";
  });
}

SuiteResult ArpaRoundTripSuite(int cases, std::uint64_t seed) {
  return Run("arpa round trip", cases, seed, [](Rng& rng) -> std::string {
    const auto corpus = RandomCorpus(rng);
    const NGramModel model = TrainNGram(corpus, RandomLmOptions(rng));
    const std::string text = WriteArpa(model);
    const NGramModel back = ReadArpa(text);
    if (WriteArpa(back) != text) return "rewrite not byte-identical";
    for (const Sentence& s : RandomCorpus(rng)) {
      if (std::abs(ScoreSentence(model, s) - ScoreSentence(back, s)) > 1e-9) {
        return "scores differ after round trip";
      }
    }
    return "";
  });
}

std::vector<SuiteResult> AllSuites(int cases, std::uint64_t seed) {
  return {CtcCollapseSuite(cases, seed),     EditDistanceSuite(cases, seed),
          LexiconRoundTripSuite(cases, seed), RefinementSuite(cases, seed),
          LmNormalizationSuite(cases, seed),  ApstRoundTripSuite(cases, seed),
          ArpaRoundTripSuite(cases, seed)};
}

}  // namespace sylattr::testing
