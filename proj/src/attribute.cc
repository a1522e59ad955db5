// attribute.cc
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

#include "sylattr/attribute.h"

#include <bit>

#include "sylattr/text.h"

namespace sylattr {

namespace {

constexpr std::string_view kMannerValues[] = {
    "nasal", "stop",  "affricate", "fricative", "flap",  "trill",
    "approximant", "click", "ejective", "implosive", "vowel"};
constexpr std::string_view kPlaceValues[] = {
    "bilabial", "labiodental",     "dental",  "alveolar",
    "palato-alveolar", "retroflex", "alveolo-palatal", "palatal",
    "velar",    "uvular",          "glottal", "vowel"};
constexpr std::string_view kVoicingValues[] = {"voiced", "voiceless"};
constexpr std::string_view kAspirationValues[] = {"aspirated", "unaspirated"};
constexpr std::string_view kHeightValues[] = {
    "high", "semi-high", "upper-mid", "mid", "lower-mid", "semi-low", "low"};
constexpr std::string_view kBacknessValues[] = {"front", "central", "back"};

constexpr std::string_view kAbbrevs[] = {"M", "P", "V", "A", "H", "B"};
constexpr std::string_view kNames[] = {"manner",     "place",  "voicing",
                                       "aspiration", "height", "backness"};

}  // namespace

std::string_view CategoryAbbrev(Category c) {
  return kAbbrevs[static_cast<int>(c)];
}

std::string_view CategoryName(Category c) {
  return kNames[static_cast<int>(c)];
}

Category ParseCategory(std::string_view text) {
  const std::string lower = ToLower(Trim(text));
  for (Category c : kAllCategories) {
    if (lower == ToLower(CategoryAbbrev(c)) || lower == CategoryName(c)) {
      return c;
    }
  }
  throw FormatError("unknown attribute category '" + std::string(text) + "'");
}

std::span<const std::string_view> CategoryValues(Category c) {
  switch (c) {
    case Category::kManner: return kMannerValues;
    case Category::kPlace: return kPlaceValues;
    case Category::kVoicing: return kVoicingValues;
    case Category::kAspiration: return kAspirationValues;
    case Category::kHeight: return kHeightValues;
    case Category::kBackness: return kBacknessValues;
  }
  return {};
}

AttributeValue ParseValue(Category c, std::string_view label) {
  std::string lower = ToLower(Trim(label));
  if (c == Category::kHeight && lower == "semi-mid") lower = "semi-low";
  const auto values = CategoryValues(c);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == lower) {
      return AttributeValue{c, static_cast<std::uint8_t>(i)};
    }
  }
  throw FormatError("unknown " + std::string(CategoryName(c)) + " value '" +
                    std::string(label) + "'");
}

AttributeTuple AttributeTuple::Consonant(Manner m, Place p, Voicing v,
                                         Aspiration a) {
  AttributeTuple t;
  t.manner = m;
  t.place = p;
  t.voicing = v;
  t.aspiration = a;
  t.Validate();
  return t;
}

AttributeTuple AttributeTuple::Vowel(Height h, Backness b) {
  AttributeTuple t;
  t.height = h;
  t.backness = b;
  return t;
}

std::optional<AttributeValue> AttributeTuple::Get(Category c) const {
  auto make = [c](auto e) {
    return AttributeValue{c, static_cast<std::uint8_t>(e)};
  };
  switch (c) {
    case Category::kManner: return make(manner);
    case Category::kPlace: return make(place);
    case Category::kVoicing: return make(voicing);
    case Category::kAspiration: return make(aspiration);
    case Category::kHeight:
      if (!height) return std::nullopt;
      return make(*height);
    case Category::kBackness:
      if (!backness) return std::nullopt;
      return make(*backness);
  }
  return std::nullopt;
}

void AttributeTuple::Validate() const {
  const bool m_vowel = manner == Manner::kVowel;
  const bool p_vowel = place == Place::kVowel;
  if (m_vowel != p_vowel) {
    throw FormatError("manner and place must both be 'vowel' or neither: " +
                      FormatTuple(*this));
  }
  if (m_vowel != height.has_value() || m_vowel != backness.has_value()) {
    throw FormatError(
        "height/backness must be present exactly on vowel segments: " +
        FormatTuple(*this));
  }
}

KnowledgeSource::KnowledgeSource(std::span<const Category> categories) {
  if (categories.empty()) throw FormatError("empty knowledge source");
  for (Category c : categories) {
    const std::uint8_t bit = 1u << static_cast<int>(c);
    if (mask_ & bit) {
      throw FormatError("duplicate category '" +
                        std::string(CategoryAbbrev(c)) +
                        "' in knowledge source");
    }
    mask_ |= bit;
  }
}

KnowledgeSource KnowledgeSource::All() {
  return KnowledgeSource(kAllCategories);
}

KnowledgeSource KnowledgeSource::Parse(std::string_view spec) {
  if (Trim(spec).empty()) throw FormatError("empty knowledge source");
  std::vector<Category> cats;
  for (std::string_view part : Split(spec, '+')) {
    if (Trim(part).empty()) {
      throw FormatError("empty category in knowledge source '" +
                        std::string(spec) + "'");
    }
    cats.push_back(ParseCategory(part));
  }
  return KnowledgeSource(cats);
}

std::vector<Category> KnowledgeSource::categories() const {
  std::vector<Category> out;
  for (Category c : kAllCategories) {
    if (Contains(c)) out.push_back(c);
  }
  return out;
}

int KnowledgeSource::size() const { return std::popcount(mask_); }

bool KnowledgeSource::IsVowelOnlySingle() const {
  return size() == 1 &&
         (Contains(Category::kHeight) || Contains(Category::kBackness));
}

std::string KnowledgeSource::ToString() const {
  std::string out;
  for (Category c : categories()) {
    if (!out.empty()) out += '+';
    out += CategoryAbbrev(c);
  }
  return out;
}

bool ProjectedTuple::AllAbsent() const {
  bool any = false;
  for (std::int8_t s : slots) {
    if (s == kUnselected) continue;
    if (s != kAbsent) return false;
    any = true;
  }
  return any;
}

std::optional<AttributeValue> ProjectedTuple::Get(Category c) const {
  const std::int8_t s = slot(c);
  if (s < 0) return std::nullopt;
  return AttributeValue{c, static_cast<std::uint8_t>(s)};
}

std::string ProjectedTuple::ToString() const {
  std::string out;
  for (Category c : kAllCategories) {
    const std::int8_t s = slot(c);
    if (s == kUnselected) continue;
    if (!out.empty()) out += ',';
    out += s == kAbsent ? std::string_view("-") : CategoryValues(c)[s];
  }
  return out;
}

ProjectedTuple Project(const AttributeTuple& tuple, const KnowledgeSource& ks) {
  ProjectedTuple out;
  for (Category c : kAllCategories) {
    if (!ks.Contains(c)) continue;
    const auto v = tuple.Get(c);
    out.slots[static_cast<int>(c)] =
        v ? static_cast<std::int8_t>(v->index) : ProjectedTuple::kAbsent;
  }
  return out;
}

AttributeTuple Reassemble(const ProjectedTuple& p) {
  for (std::int8_t s : p.slots) {
    if (s == ProjectedTuple::kUnselected) {
      throw FormatError("reassembly needs every category selected");
    }
  }
  AttributeTuple t;
  t.manner = static_cast<Manner>(p.slot(Category::kManner));
  t.place = static_cast<Place>(p.slot(Category::kPlace));
  t.voicing = static_cast<Voicing>(p.slot(Category::kVoicing));
  t.aspiration = static_cast<Aspiration>(p.slot(Category::kAspiration));
  if (p.slot(Category::kHeight) >= 0) {
    t.height = static_cast<Height>(p.slot(Category::kHeight));
  }
  if (p.slot(Category::kBackness) >= 0) {
    t.backness = static_cast<Backness>(p.slot(Category::kBackness));
  }
  t.Validate();
  return t;
}

std::string FormatTuple(const AttributeTuple& tuple) {
  return Project(tuple, KnowledgeSource::All()).ToString();
}

AttributeTuple ParseTuple(std::string_view text) {
  const auto fields = Split(text, ',');
  if (fields.size() != kNumCategories) {
    throw FormatError("segment '" + std::string(text) + "' has " +
                      std::to_string(fields.size()) +
                      " fields, expected 6 (m,p,v,a,h,b)");
  }
  ProjectedTuple p;
  for (Category c : kAllCategories) {
    const std::string_view f = Trim(fields[static_cast<int>(c)]);
    if (f == "-") {
      if (c != Category::kHeight && c != Category::kBackness) {
        throw FormatError("only height and backness may be absent in '" +
                          std::string(text) + "'");
      }
      p.slots[static_cast<int>(c)] = ProjectedTuple::kAbsent;
    } else {
      p.slots[static_cast<int>(c)] =
          static_cast<std::int8_t>(ParseValue(c, f).index);
    }
  }
  return Reassemble(p);
}

}  // namespace sylattr
