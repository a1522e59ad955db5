// posterior.h
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
// Per-frame attribute posteriors, one softmax stream per category, and the
// APST v1 text format that carries them:
//
//   APST 1
//   utt <id> <frames> <n_categories>
//   cat <name> <n_classes>
//   <blk> value value ... [<na>]
//   p p p ...            (one line per frame)
//   cat ...
//
// Class 0 is the CTC blank. Height and backness streams end with an
// absent-marker class <na> emitted on consonant frames. Probabilities are
// written with 8 significant digits.

#ifndef SYLATTR_POSTERIOR_H_
#define SYLATTR_POSTERIOR_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sylattr/attribute.h"

namespace sylattr {

inline constexpr std::string_view kBlankLabel = "<blk>";
inline constexpr std::string_view kAbsentLabel = "<na>";
inline constexpr int kBlankClass = 0;
inline constexpr double kRowSumTolerance = 1e-6;

// Class labels of a category stream: blank, the category's values, then the
// absent marker for H and B.
std::vector<std::string> StreamLabels(Category c);
int NumClasses(Category c);
// Class index of a value, and of the absent marker (-1 when the category has
// none).
inline int ClassOf(const AttributeValue& v) { return v.index + 1; }
int AbsentClass(Category c);

struct CategoryStream {
  Category category = Category::kManner;
  int num_classes = 0;
  // Row-major frames x num_classes.
  std::vector<double> probs;

  int num_frames() const {
    return num_classes == 0 ? 0 : static_cast<int>(probs.size()) / num_classes;
  }
  std::span<const double> row(int t) const {
    return {probs.data() + static_cast<std::size_t>(t) * num_classes,
            static_cast<std::size_t>(num_classes)};
  }
  std::span<double> row(int t) {
    return {probs.data() + static_cast<std::size_t>(t) * num_classes,
            static_cast<std::size_t>(num_classes)};
  }
};

CategoryStream MakeStream(Category c, int frames);

struct PosteriorSet {
  std::string utterance_id;
  int frame_count = 0;
  // Canonical category order, no duplicates.
  std::vector<CategoryStream> streams;

  const CategoryStream* Find(Category c) const;
  KnowledgeSource categories() const;
};

// Throws FormatError on any invariant violation.
void ValidateStream(const CategoryStream& s);
void Validate(const PosteriorSet& set);

std::vector<PosteriorSet> ReadPosteriors(std::string_view content);
std::string WritePosteriors(std::span<const PosteriorSet> sets);

// Rounds to the precision the text format keeps, so that a write/read cycle
// is exact.
double QuantizeProbability(double p);

}  // namespace sylattr

#endif  // SYLATTR_POSTERIOR_H_
