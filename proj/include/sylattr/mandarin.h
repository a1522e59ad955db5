// mandarin.h
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
// Toneless Mandarin syllables as initial + final. Initials carry manner,
// place and aspiration; finals are vowel segments (glides included) with an
// optional nasal or rhotic coda.
//
// Final names use 'v' for u-umlaut and "ii" for the apical vowel of
// zi/ci/si/zhi/chi/shi/ri. Besides the 21 consonant initials the table has
// three zero-initial onsets: "y" and "w" (approximants, written as such in
// pinyin) and "'" (glottal stop, the onset of a/o/e-initial syllables, which
// pinyin marks with an apostrophe inside words).

#ifndef SYLATTR_MANDARIN_H_
#define SYLATTR_MANDARIN_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sylattr/attribute.h"
#include "sylattr/lexicon.h"

namespace sylattr::mandarin {

std::span<const std::string_view> Initials();
std::span<const std::string_view> Finals();

// Throw FormatError for names outside the tables.
std::vector<AttributeTuple> InitialSegments(std::string_view initial);
std::vector<AttributeTuple> FinalSegments(std::string_view final);

// Initial segments (none for a null initial) followed by final segments.
std::vector<AttributeTuple> Compose(std::optional<std::string_view> initial,
                                    std::string_view final);

struct Spelling {
  std::string syllable;
  std::string initial;
  std::string final;
};

// Splits a toneless pinyin spelling ("xuan", "you", "ai") into table names.
// Zero-initial spellings map to the y/w/' onsets.
Spelling Decompose(std::string_view pinyin);

// The 408 toneless syllables, grouped by initial.
std::span<const std::string_view> SeedSyllables();
Lexicon SeedLexicon();

}  // namespace sylattr::mandarin

#endif  // SYLATTR_MANDARIN_H_
