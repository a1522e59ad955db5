// japanese.cc
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

#include "sylattr/japanese.h"

#include <map>

namespace sylattr::japanese {

namespace {

using T = AttributeTuple;
using M = Manner;
using P = Place;
using V = Voicing;
using H = Height;
using B = Backness;

T Cons(M m, P p, V v) { return T::Consonant(m, p, v); }

T VowelOf(char letter) {
  switch (letter) {
    case 'a': return T::Vowel(H::kLow, B::kCentral);
    case 'i': return T::Vowel(H::kHigh, B::kFront);
    case 'u': return T::Vowel(H::kHigh, B::kBack);
    case 'e': return T::Vowel(H::kMid, B::kFront);
    case 'o': return T::Vowel(H::kMid, B::kBack);
  }
  throw FormatError(std::string("not a Japanese vowel: ") + letter);
}

// Onset spellings in the order they are tried (longest first).
const std::vector<std::pair<std::string_view, T>>& Onsets() {
  static const std::vector<std::pair<std::string_view, T>> table = {
      {"sh", Cons(M::kFricative, P::kAlveoloPalatal, V::kVoiceless)},
      {"ch", Cons(M::kAffricate, P::kAlveoloPalatal, V::kVoiceless)},
      {"ts", Cons(M::kAffricate, P::kAlveolar, V::kVoiceless)},
      {"j", Cons(M::kFricative, P::kAlveoloPalatal, V::kVoiced)},
      {"k", Cons(M::kStop, P::kVelar, V::kVoiceless)},
      {"g", Cons(M::kStop, P::kVelar, V::kVoiced)},
      {"s", Cons(M::kFricative, P::kAlveolar, V::kVoiceless)},
      {"z", Cons(M::kFricative, P::kAlveolar, V::kVoiced)},
      {"t", Cons(M::kStop, P::kAlveolar, V::kVoiceless)},
      {"d", Cons(M::kStop, P::kAlveolar, V::kVoiced)},
      {"n", Cons(M::kNasal, P::kAlveolar, V::kVoiced)},
      {"h", Cons(M::kFricative, P::kGlottal, V::kVoiceless)},
      {"f", Cons(M::kFricative, P::kBilabial, V::kVoiceless)},
      {"b", Cons(M::kStop, P::kBilabial, V::kVoiced)},
      {"p", Cons(M::kStop, P::kBilabial, V::kVoiceless)},
      {"m", Cons(M::kNasal, P::kBilabial, V::kVoiced)},
      {"y", Cons(M::kApproximant, P::kPalatal, V::kVoiced)},
      {"r", Cons(M::kFlap, P::kAlveolar, V::kVoiced)},
      {"w", Cons(M::kApproximant, P::kVelar, V::kVoiced)},
  };
  return table;
}

const T& Glide() {
  static const T glide = Cons(M::kApproximant, P::kPalatal, V::kVoiced);
  return glide;
}

constexpr std::string_view kMorae[] = {
    "a",   "i",   "u",   "e",   "o",
    "ka",  "ki",  "ku",  "ke",  "ko",  "ga",  "gi",  "gu",  "ge",  "go",
    "sa",  "shi", "su",  "se",  "so",  "za",  "ji",  "zu",  "ze",  "zo",
    "ta",  "chi", "tsu", "te",  "to",  "da",  "de",  "do",
    "na",  "ni",  "nu",  "ne",  "no",
    "ha",  "hi",  "fu",  "he",  "ho",  "ba",  "bi",  "bu",  "be",  "bo",
    "pa",  "pi",  "pu",  "pe",  "po",
    "ma",  "mi",  "mu",  "me",  "mo",
    "ya",  "yu",  "yo",
    "ra",  "ri",  "ru",  "re",  "ro",
    "wa",
    "kya", "kyu", "kyo", "gya", "gyu", "gyo", "sha", "shu", "sho",
    "ja",  "ju",  "jo",  "cha", "chu", "cho", "nya", "nyu", "nyo",
    "hya", "hyu", "hyo", "bya", "byu", "byo", "pya", "pyu", "pyo",
    "mya", "myu", "myo", "rya", "ryu", "ryo",
};

bool IsSpecial(std::string_view tok) {
  return tok == "N" || tok == "Q" || tok == "-";
}

}  // namespace

std::span<const std::string_view> Morae() { return kMorae; }

std::vector<AttributeTuple> MoraSegments(std::string_view mora) {
  static const std::map<std::string_view, std::vector<T>> cache = [] {
    std::map<std::string_view, std::vector<T>> out;
    for (std::string_view m : kMorae) {
      std::vector<T> segs;
      std::string_view rest = m;
      if (rest.size() > 1) {
        for (const auto& [spelling, onset] : Onsets()) {
          if (!rest.starts_with(spelling)) continue;
          segs.push_back(onset);
          rest.remove_prefix(spelling.size());
          break;
        }
        // "hi" is a palatal fricative rather than a glottal one.
        if (m == "hi" || m.starts_with("hy")) {
          segs.back() = Cons(M::kFricative, P::kPalatal, V::kVoiceless);
        }
        if (rest.size() == 2 && rest.front() == 'y') {
          if (m.starts_with("hy")) {
            rest.remove_prefix(1);
          } else {
            segs.push_back(Glide());
            rest.remove_prefix(1);
          }
        }
      }
      if (rest.size() != 1) {
        throw FormatError("bad mora table entry '" + std::string(m) + "'");
      }
      segs.push_back(VowelOf(rest.front()));
      out.emplace(m, std::move(segs));
    }
    return out;
  }();
  const auto it = cache.find(mora);
  if (it == cache.end()) {
    throw FormatError("unknown Japanese mora '" + std::string(mora) + "'");
  }
  return it->second;
}

AttributeTuple MoraicNasal(const AttributeTuple* next_onset) {
  Place place = P::kAlveolar;
  if (next_onset != nullptr && !next_onset->is_vowel()) {
    switch (next_onset->place) {
      case P::kBilabial: place = P::kBilabial; break;
      case P::kVelar: place = P::kVelar; break;
      default: break;
    }
  }
  return Cons(M::kNasal, place, V::kVoiced);
}

std::vector<LexiconEntry> MergeMorae(std::span<const std::string> morae) {
  std::vector<LexiconEntry> out;
  bool pending_geminate = false;
  for (std::size_t i = 0; i < morae.size(); ++i) {
    const std::string& tok = morae[i];
    if (tok == "N") {
      if (out.empty() || pending_geminate) {
        throw FormatError("moraic nasal at position " + std::to_string(i) +
                          " has no preceding syllable");
      }
      const AttributeTuple* next = nullptr;
      std::vector<T> next_segs;
      if (i + 1 < morae.size() && !IsSpecial(morae[i + 1])) {
        next_segs = MoraSegments(morae[i + 1]);
        next = &next_segs.front();
      }
      LexiconEntry& prev = out.back();
      if (!prev.segments.back().is_vowel()) {
        throw FormatError("moraic nasal at position " + std::to_string(i) +
                          " follows a closed syllable");
      }
      prev.segments.push_back(MoraicNasal(next));
      prev.syllable += 'n';
    } else if (tok == "Q") {
      if (out.empty() || pending_geminate) {
        throw FormatError("geminate at position " + std::to_string(i) +
                          " has no preceding syllable");
      }
      pending_geminate = true;
    } else if (tok == "-") {
      if (out.empty() || pending_geminate) {
        throw FormatError("long vowel at position " + std::to_string(i) +
                          " has no preceding syllable");
      }
      LexiconEntry& prev = out.back();
      if (!prev.segments.back().is_vowel()) {
        throw FormatError("long vowel at position " + std::to_string(i) +
                          " follows a closed syllable");
      }
      prev.segments.push_back(prev.segments.back());
      prev.syllable += prev.syllable.back();
    } else {
      LexiconEntry e{tok, MoraSegments(tok)};
      if (pending_geminate) {
        if (e.segments.front().is_vowel()) {
          throw FormatError("geminate before vowel-initial mora '" + tok +
                            "'");
        }
        e.segments.insert(e.segments.begin(), e.segments.front());
        e.syllable = tok.substr(0, 1) + tok;
        pending_geminate = false;
      }
      out.push_back(std::move(e));
    }
  }
  if (pending_geminate) {
    throw FormatError("geminate at the end of the mora sequence");
  }
  return out;
}

Lexicon SeedLexicon() {
  std::vector<LexiconEntry> entries;
  for (std::string_view m : kMorae) {
    entries.push_back({std::string(m), MoraSegments(m)});
  }
  for (std::string_view m : kMorae) {
    const std::string morae[] = {std::string(m), "N"};
    entries.push_back(MergeMorae(morae).front());
  }
  return Lexicon("japanese", std::move(entries));
}

}  // namespace sylattr::japanese
