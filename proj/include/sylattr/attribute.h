// attribute.h
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
// Language-universal articulatory attribute inventory: six categories with
// closed value sets, segment tuples, and knowledge sources (category subsets
// selecting the granularity at which pronunciation is represented).

#ifndef SYLATTR_ATTRIBUTE_H_
#define SYLATTR_ATTRIBUTE_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sylattr/error.h"

namespace sylattr {

// Canonical order is M, P, V, A, H, B; every ordered listing of categories in
// this library follows it.
enum class Category : std::uint8_t {
  kManner = 0,
  kPlace,
  kVoicing,
  kAspiration,
  kHeight,
  kBackness,
};

inline constexpr int kNumCategories = 6;
inline constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::kManner,     Category::kPlace,  Category::kVoicing,
    Category::kAspiration, Category::kHeight, Category::kBackness};

enum class Manner : std::uint8_t {
  kNasal, kStop, kAffricate, kFricative, kFlap, kTrill, kApproximant,
  kClick, kEjective, kImplosive, kVowel,
};
enum class Place : std::uint8_t {
  kBilabial, kLabiodental, kDental, kAlveolar, kPalatoAlveolar, kRetroflex,
  kAlveoloPalatal, kPalatal, kVelar, kUvular, kGlottal, kVowel,
};
enum class Voicing : std::uint8_t { kVoiced, kVoiceless };
enum class Aspiration : std::uint8_t { kAspirated, kUnaspirated };
enum class Height : std::uint8_t {
  kHigh, kSemiHigh, kUpperMid, kMid, kLowerMid, kSemiLow, kLow,
};
enum class Backness : std::uint8_t { kFront, kCentral, kBack };

// Single-letter abbreviation ("M") and lowercase name ("manner").
std::string_view CategoryAbbrev(Category c);
std::string_view CategoryName(Category c);
// Accepts either form, case-insensitively. Throws FormatError otherwise.
Category ParseCategory(std::string_view text);

// Ordered value labels of a category, lowercase.
std::span<const std::string_view> CategoryValues(Category c);
inline int ValueCount(Category c) {
  return static_cast<int>(CategoryValues(c).size());
}

// A value tagged with the category it belongs to.
struct AttributeValue {
  Category category = Category::kManner;
  std::uint8_t index = 0;

  std::string_view label() const { return CategoryValues(category)[index]; }

  friend auto operator<=>(const AttributeValue&,
                          const AttributeValue&) = default;
};

// Label lookup within one category; "semi-mid" is accepted for semi-low.
AttributeValue ParseValue(Category c, std::string_view label);

// One phonological segment. Height and backness exist only on vowels, and a
// vowel carries "vowel" in both manner and place.
struct AttributeTuple {
  Manner manner = Manner::kVowel;
  Place place = Place::kVowel;
  Voicing voicing = Voicing::kVoiced;
  Aspiration aspiration = Aspiration::kUnaspirated;
  std::optional<Height> height;
  std::optional<Backness> backness;

  static AttributeTuple Consonant(
      Manner m, Place p, Voicing v,
      Aspiration a = Aspiration::kUnaspirated);
  static AttributeTuple Vowel(Height h, Backness b);

  bool is_vowel() const { return manner == Manner::kVowel; }
  std::optional<AttributeValue> Get(Category c) const;

  // Throws FormatError when the vowel co-occurrence rules are broken.
  void Validate() const;

  friend bool operator==(const AttributeTuple&,
                         const AttributeTuple&) = default;
};

// Non-empty set of categories. Iteration and display use canonical order
// regardless of how the set was written.
class KnowledgeSource {
 public:
  KnowledgeSource() = default;
  // Throws FormatError on an empty list or a duplicate.
  explicit KnowledgeSource(std::span<const Category> categories);

  static KnowledgeSource All();
  // "M+P+H", case-insensitive; names or abbreviations.
  static KnowledgeSource Parse(std::string_view spec);

  bool Contains(Category c) const {
    return (mask_ >> static_cast<int>(c)) & 1u;
  }
  std::vector<Category> categories() const;
  int size() const;
  bool empty() const { return mask_ == 0; }
  std::uint8_t mask() const { return mask_; }
  bool IsSubsetOf(const KnowledgeSource& other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  // A lone H or B: consonant segments drop out of flattened sequences.
  bool IsVowelOnlySingle() const;

  std::string ToString() const;

  friend bool operator==(const KnowledgeSource&,
                         const KnowledgeSource&) = default;

 private:
  std::uint8_t mask_ = 0;
};

// A tuple restricted to a knowledge source. Slots are indexed by canonical
// category position; unselected categories hold kUnselected and absent
// height/backness hold kAbsent.
struct ProjectedTuple {
  static constexpr std::int8_t kUnselected = -2;
  static constexpr std::int8_t kAbsent = -1;

  std::array<std::int8_t, kNumCategories> slots{kUnselected, kUnselected,
                                                kUnselected, kUnselected,
                                                kUnselected, kUnselected};

  std::int8_t slot(Category c) const { return slots[static_cast<int>(c)]; }
  // Absent for every selected category (a consonant seen through H/B only).
  bool AllAbsent() const;
  std::optional<AttributeValue> Get(Category c) const;

  // Values in canonical order, "-" for absent, joined with ','.
  std::string ToString() const;

  friend auto operator<=>(const ProjectedTuple&,
                          const ProjectedTuple&) = default;
};

ProjectedTuple Project(const AttributeTuple& tuple, const KnowledgeSource& ks);
// Inverse of Project under the full knowledge source.
AttributeTuple Reassemble(const ProjectedTuple& projected);

// Text form used by lexicon files: "m,p,v,a,h,b" with "-" for absent.
std::string FormatTuple(const AttributeTuple& tuple);
AttributeTuple ParseTuple(std::string_view text);

}  // namespace sylattr

#endif  // SYLATTR_ATTRIBUTE_H_
