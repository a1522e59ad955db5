// bench_batch.cc
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
// Serial vs parallel timing of the per-utterance kernels on a synthetic
// Mandarin corpus. Usage: bench_batch [utterances] [jobs]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "sylattr/batch.h"
#include "sylattr/mandarin.h"

namespace {

double Seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void Row(const char* name, double serial, double parallel) {
  std::printf("%-10s serial %8.3f s  parallel %8.3f s  speedup %5.2fx\n", name,
              serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sylattr;
  const int n = argc > 1 ? std::atoi(argv[1]) : 400;
  const int jobs = argc > 2 ? std::atoi(argv[2]) : 0;
  const Lexicon lex = mandarin::SeedLexicon();
  const auto ks = KnowledgeSource::Parse("M+P+A+H+B");

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> len(2, 10);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(lex.size()) - 1);
  std::vector<Utterance> refs;
  for (int i = 0; i < n; ++i) {
    Utterance u{"u" + std::to_string(i), {}};
    for (int k = len(rng); k > 0; --k) u.tokens.push_back(lex.entries()[pick(rng)].syllable);
    refs.push_back(std::move(u));
  }
  SynthConfig config;
  config.SetNoise(0.1);

  std::printf("utterances %d, threads %d\n", n,
              jobs > 0 ? jobs : omp_get_max_threads());

  std::vector<PosteriorSet> sets;
  const double synth_s =
      Seconds([&] { sets = SynthesizeCorpusSerial(refs, lex, ks, config); });
  const double synth_p =
      Seconds([&] { sets = SynthesizeCorpus(refs, lex, ks, config, jobs); });
  Row("synth", synth_s, synth_p);

  const Decoder decoder(lex, ks, nullptr, DecoderOptions());
  std::vector<DecodeOutcome> out;
  const double dec_s = Seconds([&] { out = DecodeCorpusSerial(decoder, sets); });
  const double dec_p = Seconds([&] { out = DecodeCorpus(decoder, sets, jobs); });
  Row("decode", dec_s, dec_p);

  const auto hyps = TopHypotheses(sets, out);
  std::vector<std::string> ids;
  std::vector<TokenSeq> ref_tokens, hyp_tokens;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ids.push_back(refs[i].id);
    ref_tokens.push_back(refs[i].tokens);
    hyp_tokens.push_back(hyps[i].tokens);
  }
  ScoreRequest req;
  req.sher = {ks};
  req.prer = {ks, KnowledgeSource::Parse("M"), KnowledgeSource::Parse("H")};
  const double score_s = Seconds(
      [&] { ScoreCorpus(ids, ref_tokens, hyp_tokens, &lex, req); });
  const double score_p = Seconds(
      [&] { ScoreCorpusParallel(ids, ref_tokens, hyp_tokens, &lex, req, jobs); });
  Row("score", score_s, score_p);
  return 0;
}
