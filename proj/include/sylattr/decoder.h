// decoder.h
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
// CTC decoding of attribute posteriors into syllables.
//
// Frames are scored jointly over the tuple space of a knowledge source: the
// log-score of a projected tuple is the sum of the per-category log
// posteriors of its values, and the joint blank is the product of the
// per-category blanks. A prefix beam search walks a trie of the lexicon's
// projected sequences; a syllable is committed lazily, when the next one
// starts or the utterance ends, so that every member of a homonym class gets
// its own language-model score.

#ifndef SYLATTR_DECODER_H_
#define SYLATTR_DECODER_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sylattr/attribute.h"
#include "sylattr/lexicon.h"
#include "sylattr/ngram.h"
#include "sylattr/posterior.h"

namespace sylattr {

// Per-frame argmax, merge repeats, drop blanks and absent markers.
std::vector<AttributeValue> CtcGreedyDecode(const CategoryStream& stream);

// Greedy decode of every category of ks, in canonical order.
std::vector<std::pair<Category, std::vector<AttributeValue>>>
DecodeAttributeSequence(const PosteriorSet& ps, const KnowledgeSource& ks);

// Frame-aligned view of the streams selected by a knowledge source.
class TupleFrames {
 public:
  // Throws FormatError when ps lacks a category of ks.
  TupleFrames(const PosteriorSet& ps, const KnowledgeSource& ks);

  const KnowledgeSource& knowledge_source() const { return ks_; }
  int num_frames() const { return frames_; }
  // Posterior row of the i-th selected category (canonical order).
  std::span<const double> Row(int t, int i) const {
    return streams_[i]->row(t);
  }
  const CategoryStream& stream(int i) const { return *streams_[i]; }
  int num_streams() const { return static_cast<int>(streams_.size()); }

  // Natural-log scores; -inf when a factor is zero.
  double TupleLogProb(int t, const ProjectedTuple& tuple) const;
  double BlankLogProb(int t) const;

 private:
  KnowledgeSource ks_;
  int frames_ = 0;
  std::vector<const CategoryStream*> streams_;
};

struct DecoderOptions {
  int beam = 16;
  double lm_weight = 0.5;
  double insertion_bonus = 0.0;
  int nbest = 10;
};

struct Hypothesis {
  std::vector<std::string> syllables;
  // ln of the CTC probability of the hypothesis' attribute sequence.
  double acoustic = 0.0;
  // Unscaled natural-log LM probability including the end token (0 without
  // a language model).
  double lm = 0.0;
  // acoustic + lm_weight * lm + insertion_bonus * |syllables|
  double score = 0.0;
};

// Descending score, ties broken lexicographically on labels.
using NBestList = std::vector<Hypothesis>;

class Decoder {
 public:
  // lm may be null. The lexicon and LM must outlive the decoder. Throws
  // FormatError on bad options.
  Decoder(const Lexicon& lexicon, const KnowledgeSource& ks,
          const NGramModel* lm, const DecoderOptions& options);

  const KnowledgeSource& knowledge_source() const { return ks_; }
  const DecoderOptions& options() const { return options_; }
  const HomonymIndex& homonyms() const { return homonyms_; }

  // Throws RuntimeError when no finite complete hypothesis survives.
  NBestList Decode(const PosteriorSet& ps) const;

 private:
  struct Node {
    int symbol = -1;  // alphabet index of the incoming edge
    int class_id = -1;
    std::vector<std::pair<int, int>> children;  // (symbol, node)
  };
  struct State;

  int AddChild(int node, int symbol);
  double LmLogProb(std::span<const int> history, int syllable) const;
  double LmEndLogProb(std::span<const int> history) const;

  const Lexicon* lexicon_;
  KnowledgeSource ks_;
  const NGramModel* lm_;
  DecoderOptions options_;
  HomonymIndex homonyms_;
  std::vector<ProjectedTuple> alphabet_;
  std::vector<Node> nodes_;
  // Lexicon entry indices per homonym class, sorted by label.
  std::vector<std::vector<int>> members_;
  std::vector<int> lm_ids_;
  std::vector<int> label_rank_;
};

// Re-sorts an n-best list with a different LM weighting.
NBestList RescoreNBest(const NBestList& nbest, const NGramModel* lm,
                       double lm_weight, double insertion_bonus);

// Adds every homonym variant of each hypothesis (same acoustic score, at most
// limit per hypothesis), so that post-hoc LM rescoring can choose among them.
// Duplicates are dropped; order follows the input.
NBestList ExpandHomonyms(const NBestList& nbest, const HomonymIndex& index,
                         std::size_t limit = 1024);

bool HypothesisBefore(const Hypothesis& a, const Hypothesis& b);

}  // namespace sylattr

#endif  // SYLATTR_DECODER_H_
