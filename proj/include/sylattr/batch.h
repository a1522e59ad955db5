// batch.h
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
// Utterance-parallel corpus kernels (OpenMP) next to their serial reference
// versions. Results are identical and in input order whatever the thread
// count; jobs <= 0 uses the OpenMP default.

#ifndef SYLATTR_BATCH_H_
#define SYLATTR_BATCH_H_

#include <span>
#include <string>
#include <vector>

#include "sylattr/corpus.h"
#include "sylattr/decoder.h"
#include "sylattr/metrics.h"
#include "sylattr/posterior.h"
#include "sylattr/synth.h"

namespace sylattr {

struct DecodeOutcome {
  NBestList nbest;
  std::string error;  // non-empty when decoding failed
  bool format_error = false;  // input problem rather than a search failure

  bool ok() const { return error.empty(); }
};

std::vector<DecodeOutcome> DecodeCorpus(const Decoder& decoder,
                                        std::span<const PosteriorSet> sets,
                                        int jobs);
std::vector<DecodeOutcome> DecodeCorpusSerial(
    const Decoder& decoder, std::span<const PosteriorSet> sets);

std::vector<PosteriorSet> SynthesizeCorpus(const std::vector<Utterance>& refs,
                                           const Lexicon& lexicon,
                                           const KnowledgeSource& ks,
                                           const SynthConfig& config,
                                           int jobs);
std::vector<PosteriorSet> SynthesizeCorpusSerial(
    const std::vector<Utterance>& refs, const Lexicon& lexicon,
    const KnowledgeSource& ks, const SynthConfig& config);

// Parallel counterpart of ScoreCorpus.
ScoreReport ScoreCorpusParallel(const std::vector<std::string>& ids,
                                const std::vector<TokenSeq>& refs,
                                const std::vector<TokenSeq>& hyps,
                                const Lexicon* lexicon,
                                const ScoreRequest& request, int jobs);

// Top-1 syllables of each outcome; rethrows the first failure as
// FormatError or RuntimeError.
std::vector<Utterance> TopHypotheses(std::span<const PosteriorSet> sets,
                                     const std::vector<DecodeOutcome>& out);

}  // namespace sylattr

#endif  // SYLATTR_BATCH_H_
