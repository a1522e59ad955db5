// acceptance.cc
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
//
// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "properties.h"
#include "sylattr/batch.h"
#include "sylattr/decoder.h"
#include "sylattr/japanese.h"
#include "sylattr/mandarin.h"
#include "sylattr/metrics.h"
#include "sylattr/synth.h"
#include "test_util.h"

namespace sylattr {
namespace {

using testing::Rng;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(int id, const std::string& title, double limit_s,
            const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  char time[32];
  std::snprintf(time, sizeof(time), "%.3f s", secs);
  std::printf("%s %d %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), time);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string Pct(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * rate);
  return buf;
}

std::vector<Utterance> RandomCorpus(const Lexicon& lex, int n, int min_len,
                                    int max_len, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Utterance> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({"utt" + std::to_string(i),
                   testing::RandomSentence(rng, lex, min_len, max_len)});
  }
  return out;
}

Outcome HomonymReproduction() {
  const Lexicon lex = mandarin::SeedLexicon();
  const HomonymIndex index(lex, KnowledgeSource::Parse("M+P+A+H+B"));
  const bool same = index.ClassOf("xian") == index.ClassOf("xuan");
  return {lex.size() == 408 && same,
          std::to_string(lex.size()) + " syllables, " +
              std::to_string(index.num_classes()) + " classes, xian/xuan " +
              (same ? "share a class" : "differ")};
}

Outcome SherLowerBound() {
  Rng rng(2024);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const Lexicon lex = testing::RandomLexicon(rng, testing::Uniform(rng, 2, 20), 3, 3);
    const HomonymIndex index(lex, testing::RandomKs(rng));
    std::vector<TokenSeq> refs, hyps;
    const int n = testing::Uniform(rng, 1, 5);
    for (int k = 0; k < n; ++k) {
      refs.push_back(testing::RandomSentence(rng, lex, 0, 8));
      hyps.push_back(testing::RandomSentence(rng, lex, 0, 8));
    }
    if (Sher(refs, hyps, index).errors() > Ser(refs, hyps).errors()) ++violations;
  }
  return {violations == 0, "1000 pairs, " + std::to_string(violations) + " violations"};
}

Outcome SnippetScores() {
  const Lexicon lex = mandarin::SeedLexicon();
  const TokenSeq ref = {"wu", "xian", "yi", "jin", "deng", "wei", "jie", "kou"};
  const TokenSeq baseline = {"wu", "qian", "jie", "de", "wei", "jie", "kou"};
  const TokenSeq bottom_up = {"wu", "xuan", "yi", "jin", "deng", "wei", "jie", "kou"};
  const ErrorCounts ser = Ser({ref}, {baseline});
  const long long oracle = testing::RecursiveDistance(ref, 0, baseline, 0);
  const ErrorCounts sher =
      Sher({ref}, {bottom_up}, HomonymIndex(lex, KnowledgeSource::Parse("M+P+A+H+B")));
  const bool pass = ser.errors() == 4 && oracle == 4 && ser.ref_tokens == 8 &&
                    ser.rate() == 0.5 && sher.errors() == 0 && sher.rate() == 0.0;
  return {pass, "SER " + std::to_string(ser.errors()) + "/" +
                    std::to_string(ser.ref_tokens) + " = " + Pct(ser.rate()) +
                    " (oracle " + std::to_string(oracle) + "), SHER " + Pct(sher.rate())};
}

// SER must fall strictly along the list; SHER must be zero at the end when
// require_zero_sher.
Outcome Trend(const Lexicon& lex, const std::vector<std::string>& ks_names,
              bool require_zero_sher) {
  std::vector<KnowledgeSource> ks_list;
  for (const auto& n : ks_names) ks_list.push_back(KnowledgeSource::Parse(n));
  const auto refs = RandomCorpus(lex, 200, 2, 8, 42);
  const ExperimentReport r =
      RunExperiment(refs, lex, ks_list, SynthConfig(), DecoderOptions(), nullptr, 0);
  bool pass = true;
  std::string detail;
  double prev = INFINITY;
  for (const ExperimentEntry& e : r.entries) {
    const double ser = e.report.Find("ser")->pooled.rate();
    const double sher = e.report.Find(SherName(e.ks))->pooled.rate();
    detail += e.ks.ToString() + " SER " + Pct(ser) + " SHER " + Pct(sher) + "; ";
    pass = pass && ser < prev;
    prev = ser;
  }
  if (require_zero_sher) {
    const ExperimentEntry& last = r.entries.back();
    pass = pass && last.report.Find(SherName(last.ks))->pooled.errors() == 0;
  }
  return {pass, detail};
}

Outcome KnowledgeSourceTrend() {
  const Outcome zh = Trend(mandarin::SeedLexicon(), {"M+P", "M+P+H", "M+P+A+H+B"}, true);
  const Outcome ja = Trend(japanese::SeedLexicon(), {"M+P", "M+P+H", "M+P+V+H+B"}, false);
  return {zh.pass && ja.pass, "mandarin: " + zh.detail + "japanese: " + ja.detail};
}

Outcome DecoderExactness() {
  Rng rng(4242);
  int mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const testing::SmallInstance in = testing::MakeSmallInstance(rng);
    DecoderOptions opts;
    opts.beam = 1 << 20;
    opts.lm_weight = in.lm_weight;
    opts.insertion_bonus = in.bonus;
    const NGramModel* lm = in.lm ? &*in.lm : nullptr;
    const double best =
        testing::ExhaustiveBestScore(in.ps, in.lex, in.ks, lm, in.lm_weight, in.bonus);
    const double got = Decoder(in.lex, in.ks, lm, opts).Decode(in.ps).front().score;
    const double diff = std::abs(got - best);
    worst = std::max(worst, diff);
    if (!(diff <= 1e-9)) ++mismatches;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), ", max |diff| %.3g", worst);
  return {mismatches == 0,
          "100 instances, " + std::to_string(mismatches) + " mismatches" + buf};
}

Outcome PropertySuites() {
  bool pass = true;
  std::string detail;
  for (const testing::SuiteResult& r : testing::AllSuites(60, 99)) {
    pass = pass && r.ok() && r.cases >= 50;
    detail += r.name + " " + std::to_string(r.cases - r.failures) + "/" +
              std::to_string(r.cases) + "; ";
    if (!r.ok()) detail += "(" + r.first_failure + ") ";
  }
  return {pass, detail};
}

Outcome NoiseMonotonicity() {
  const Lexicon lex = mandarin::SeedLexicon();
  const auto ks = KnowledgeSource::Parse("M+P+A+H+B");
  const auto refs = RandomCorpus(lex, 100, 2, 8, 7);
  const double levels[] = {0.0, 0.1, 0.2, 0.3};
  int monotone_seeds = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    double prev = -1.0;
    bool monotone = true;
    detail += "seed " + std::to_string(seed) + ":";
    for (double eps : levels) {
      SynthConfig config;
      config.SetNoise(eps);
      config.seed = seed;
      const ExperimentReport r =
          RunExperiment(refs, lex, {ks}, config, DecoderOptions(), nullptr, 0);
      const double prer = r.entries[0].report.Find(PrerName(ks))->pooled.rate();
      detail += " " + Pct(prer);
      monotone = monotone && prer > prev;
      prev = prer;
    }
    detail += monotone ? "; " : " (not monotone); ";
    monotone_seeds += monotone;
  }
  return {monotone_seeds >= 3,
          std::to_string(monotone_seeds) + "/5 seeds strictly increasing; " + detail};
}

}  // namespace
}  // namespace sylattr

int main() {
  using namespace sylattr;
  Report(1, "homonym reproduction", 1.0, HomonymReproduction);
  Report(2, "SHER <= SER", 0.0, SherLowerBound);
  Report(3, "snippet golden scores", 0.0, SnippetScores);
  Report(4, "knowledge-source trend", 30.0, KnowledgeSourceTrend);
  Report(5, "decoder exactness", 0.0, DecoderExactness);
  Report(6, "property suites", 60.0, PropertySuites);
  Report(7, "noise monotonicity", 0.0, NoiseMonotonicity);
  std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
