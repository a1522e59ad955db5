// japanese.h
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
// Japanese morae (Hepburn romaji) and their merging into syllables.
//
// Special mora tokens:
//   "N"  moraic nasal; becomes a nasal coda of the preceding syllable
//   "Q"  geminate; doubles the onset consonant of the following syllable
//   "-"  long vowel; repeats the last vowel of the preceding syllable

#ifndef SYLATTR_JAPANESE_H_
#define SYLATTR_JAPANESE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sylattr/attribute.h"
#include "sylattr/lexicon.h"

namespace sylattr::japanese {

// Plain morae (no special tokens), gojuon order with voiced and
// palatalized rows.
std::span<const std::string_view> Morae();

// Throws FormatError for an unknown mora.
std::vector<AttributeTuple> MoraSegments(std::string_view mora);

// Coda for the moraic nasal, assimilated to the place of the following
// onset when there is one; alveolar otherwise.
AttributeTuple MoraicNasal(const AttributeTuple* next_onset);

// Folds special tokens into neighbouring morae. Throws FormatError when a
// token has nothing to attach to (leading "N", trailing "Q", ...).
std::vector<LexiconEntry> MergeMorae(std::span<const std::string> morae);

// Every plain mora plus its moraic-nasal-final variant.
Lexicon SeedLexicon();

}  // namespace sylattr::japanese

#endif  // SYLATTR_JAPANESE_H_
