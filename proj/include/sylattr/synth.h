// synth.h
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
// Synthetic attribute posteriors for reference syllable sequences, and
// end-to-end experiments over several knowledge sources.
//
// Every segment of every syllable occupies frames_per_segment frames, with
// blank_frames_between blank frames between consecutive segments (at least
// one when two neighbouring segments look identical under the knowledge
// source, otherwise CTC would merge them). Noise works per frame and per
// category: with probability eps the dominant class is replaced by a
// uniformly drawn other class, and the row puts 1 - eps on the dominant class
// and spreads eps evenly over the rest. eps = 0 gives one-hot rows.

#ifndef SYLATTR_SYNTH_H_
#define SYLATTR_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sylattr/corpus.h"
#include "sylattr/decoder.h"
#include "sylattr/lexicon.h"
#include "sylattr/metrics.h"
#include "sylattr/ngram.h"
#include "sylattr/posterior.h"

namespace sylattr {

struct SynthConfig {
  int frames_per_segment = 2;
  int blank_frames_between = 1;
  // Indexed by category.
  std::array<double, kNumCategories> noise{};
  std::uint64_t seed = 0;

  void SetNoise(double eps) { noise.fill(eps); }
  // Throws FormatError.
  void Validate() const;
  std::string ToString() const;
};

// Utterance index selects an independent random stream, so results do not
// depend on how utterances are distributed over threads.
PosteriorSet SynthesizeUtterance(const Utterance& ref, const Lexicon& lexicon,
                                 const KnowledgeSource& ks,
                                 const SynthConfig& config,
                                 std::uint64_t index);

// Throws FormatError for out-of-lexicon tokens before generating anything.
void CheckInLexicon(const std::vector<Utterance>& refs, const Lexicon& lexicon);

struct ExperimentEntry {
  KnowledgeSource ks;
  ScoreReport report;
  std::vector<Utterance> hypotheses;
};

struct ExperimentReport {
  SynthConfig config;
  DecoderOptions options;
  bool with_lm = false;
  std::vector<ExperimentEntry> entries;

  // Header comments echoing the settings, then
  // "ks<TAB>metric<TAB>rate%<TAB>ref<TAB>errors" rows.
  std::string ToString() const;
};

// For each knowledge source: synthesize, decode (top-1) and score SER,
// SHER, PrER over the knowledge source and PrER per single category.
// Decoder failures propagate as RuntimeError. jobs <= 0 uses the OpenMP
// default.
ExperimentReport RunExperiment(const std::vector<Utterance>& refs,
                               const Lexicon& lexicon,
                               const std::vector<KnowledgeSource>& ks_list,
                               const SynthConfig& config,
                               const DecoderOptions& options,
                               const NGramModel* lm, int jobs = 0);

}  // namespace sylattr

#endif  // SYLATTR_SYNTH_H_
