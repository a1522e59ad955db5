// ngram.h
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
// Syllable-level back-off n-gram language model with ARPA text I/O.
//
// Training produces interpolated estimates that are stored in back-off form:
// every seen n-gram keeps its full interpolated probability and every
// context keeps the mass reserved for lower orders as its back-off weight,
// so back-off lookup reproduces the interpolated distribution exactly.

#ifndef SYLATTR_NGRAM_H_
#define SYLATTR_NGRAM_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sylattr/error.h"

namespace sylattr {

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknownWord = "<unk>";

enum class Smoothing {
  // Interpolated Kneser-Ney, one fixed discount for every count.
  kKneserNey,
  // Modified Kneser-Ney with three discounts estimated from counts of
  // counts; falls back to kAddK when any of n1..n4 is zero at some order.
  kModifiedKneserNey,
  // Additive smoothing toward the next lower order.
  kAddK,
};

struct LmTrainOptions {
  int order = 3;
  Smoothing smoothing = Smoothing::kKneserNey;
  double discount = 0.75;
  double add_k = 0.01;
};

using Sentence = std::vector<std::string>;

class NGramModel {
 public:
  struct Entry {
    double log10_prob = 0.0;
    std::optional<double> log10_backoff;
  };
  using Table = std::map<std::vector<int>, Entry>;

  int order() const { return static_cast<int>(tables_.size()); }
  const std::vector<std::string>& vocabulary() const { return vocab_; }
  // Unknown words map to <unk>.
  int WordId(std::string_view word) const;
  int start_id() const { return start_id_; }
  int end_id() const { return end_id_; }
  int unk_id() const { return unk_id_; }
  // Smoothing actually used (after any fallback).
  Smoothing smoothing() const { return smoothing_; }

  // Conditional probability of word given the preceding ids (oldest first;
  // only the last order-1 are used).
  double Log10Prob(std::span<const int> context, int word) const;
  double LogProb(std::span<const int> context, int word) const;

  const Table& table(int n) const { return tables_[n - 1]; }

 private:
  friend NGramModel TrainNGram(const std::vector<Sentence>&,
                               const LmTrainOptions&);
  friend NGramModel ReadArpa(std::string_view);

  void SetVocabulary(std::vector<std::string> words);

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> ids_;
  int start_id_ = -1;
  int end_id_ = -1;
  int unk_id_ = -1;
  Smoothing smoothing_ = Smoothing::kKneserNey;
  std::vector<Table> tables_;
};

// Throws FormatError on an empty corpus or an order outside [1, 5].
NGramModel TrainNGram(const std::vector<Sentence>& corpus,
                      const LmTrainOptions& options);

// Natural-log probability of the sentence including the end token.
double ScoreSentence(const NGramModel& model, std::span<const std::string> s);
double Perplexity(const NGramModel& model, const std::vector<Sentence>& corpus);

std::string WriteArpa(const NGramModel& model);
NGramModel ReadArpa(std::string_view content);

// One sentence per non-empty line, tokens separated by blanks.
std::vector<Sentence> ParseSentences(std::string_view content);

std::string_view SmoothingName(Smoothing s);
Smoothing ParseSmoothing(std::string_view name);

}  // namespace sylattr

#endif  // SYLATTR_NGRAM_H_
