// metrics.h
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
// Levenshtein alignment and the error rates built on it:
//
//   SER    syllable error rate
//   SHER   SER after mapping every syllable to its homonym representative
//   PrER   error rate over attribute tokens; a single category compares
//          flattened values (H and B over vowels only), a combination
//          compares one tuple per segment
//
// Corpus rates pool edit counts over utterances and are not clamped.

#ifndef SYLATTR_METRICS_H_
#define SYLATTR_METRICS_H_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "sylattr/attribute.h"
#include "sylattr/lexicon.h"

namespace sylattr {

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

struct ErrorCounts {
  long long substitutions = 0;
  long long deletions = 0;
  long long insertions = 0;
  long long ref_tokens = 0;

  long long errors() const { return substitutions + deletions + insertions; }
  // errors / ref_tokens; 0 for an empty reference with no errors.
  double rate() const;
  ErrorCounts& operator+=(const ErrorCounts& o);
  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

struct Alignment {
  std::vector<EditOp> ops;  // reference order
  ErrorCounts counts;
  long long cost() const { return counts.errors(); }
};

// Minimum-cost alignment; among optimal alignments the backtrace prefers
// match, then substitution, deletion, insertion.
template <typename T>
Alignment Align(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<long long> d((n + 1) * (m + 1));
  const auto at = [&](std::size_t i, std::size_t j) -> long long& {
    return d[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<long long>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<long long>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const long long diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  Alignment a;
  a.counts.ref_tokens = static_cast<long long>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        at(i, j) == at(i - 1, j - 1)) {
      a.ops.push_back(EditOp::kMatch);
      --i, --j;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      a.ops.push_back(EditOp::kSubstitute);
      ++a.counts.substitutions;
      --i, --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      a.ops.push_back(EditOp::kDelete);
      ++a.counts.deletions;
      --i;
    } else {
      a.ops.push_back(EditOp::kInsert);
      ++a.counts.insertions;
      --j;
    }
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

template <typename T>
Alignment Align(const std::vector<T>& ref, const std::vector<T>& hyp) {
  return Align(std::span<const T>(ref), std::span<const T>(hyp));
}

using TokenSeq = std::vector<std::string>;

// Per-utterance helpers. Syllables outside the lexicon throw FormatError.
ErrorCounts SerCounts(const TokenSeq& ref, const TokenSeq& hyp);
ErrorCounts SherCounts(const TokenSeq& ref, const TokenSeq& hyp,
                       const HomonymIndex& index);
ErrorCounts PrerCounts(const TokenSeq& ref, const TokenSeq& hyp,
                       const Lexicon& lexicon, const KnowledgeSource& ks);
// Hypothesis given directly as a greedy-decoded value sequence of one
// category.
ErrorCounts PrerCounts(const TokenSeq& ref,
                       const std::vector<AttributeValue>& hyp,
                       const Lexicon& lexicon, Category category);

// Attribute tokens of a syllable sequence (one per segment).
ProjectedSequence AttributeTokens(const TokenSeq& syllables,
                                  const Lexicon& lexicon,
                                  const KnowledgeSource& ks);

// Corpus-level rates; refs and hyps must have equal lengths (FormatError).
ErrorCounts Ser(const std::vector<TokenSeq>& refs,
                const std::vector<TokenSeq>& hyps);
ErrorCounts Sher(const std::vector<TokenSeq>& refs,
                 const std::vector<TokenSeq>& hyps, const HomonymIndex& index);
ErrorCounts Prer(const std::vector<TokenSeq>& refs,
                 const std::vector<TokenSeq>& hyps, const Lexicon& lexicon,
                 const KnowledgeSource& ks);

struct MetricResult {
  std::string name;  // "ser", "sher[M+P]", "prer[H]", ...
  ErrorCounts pooled;
  std::vector<ErrorCounts> per_utterance;
};

struct ScoreReport {
  std::vector<std::string> utterance_ids;
  std::vector<MetricResult> metrics;

  const MetricResult* Find(const std::string& name) const;
};

struct ScoreRequest {
  bool ser = true;
  // Knowledge sources for SHER and PrER.
  std::vector<KnowledgeSource> sher;
  std::vector<KnowledgeSource> prer;
};

std::string SherName(const KnowledgeSource& ks);
std::string PrerName(const KnowledgeSource& ks);

// lexicon may be null when only SER is requested.
ScoreReport ScoreCorpus(const std::vector<std::string>& ids,
                        const std::vector<TokenSeq>& refs,
                        const std::vector<TokenSeq>& hyps,
                        const Lexicon* lexicon, const ScoreRequest& request);

// Aligned table for people.
std::string FormatReport(const ScoreReport& report);
// One "metric<TAB>value" line per number.
std::string FormatReportTsv(const ScoreReport& report);

}  // namespace sylattr

#endif  // SYLATTR_METRICS_H_
