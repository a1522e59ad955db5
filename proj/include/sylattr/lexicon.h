// lexicon.h
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
// Pronunciation lexicon: syllable -> sequence of attribute tuples, plus the
// homonym classes induced by a knowledge source.
//
// File format (one entry per line, '#' starts a comment line):
//   syllable<TAB>m,p,v,a,h,b;m,p,v,a,h,b;...
// with '-' for height/backness on consonant segments. A comment of the form
// "# language: <tag>" sets the language tag.

#ifndef SYLATTR_LEXICON_H_
#define SYLATTR_LEXICON_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sylattr/attribute.h"

namespace sylattr {

struct LexiconEntry {
  std::string syllable;
  std::vector<AttributeTuple> segments;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

using ProjectedSequence = std::vector<ProjectedTuple>;

class Lexicon {
 public:
  Lexicon() = default;
  // Validates labels, segments and uniqueness; throws FormatError.
  Lexicon(std::string language, std::vector<LexiconEntry> entries);

  const std::string& language() const { return language_; }
  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // -1 when absent.
  int IndexOf(std::string_view syllable) const;
  bool Contains(std::string_view syllable) const {
    return IndexOf(syllable) >= 0;
  }
  // Throws FormatError for an out-of-lexicon syllable.
  const LexiconEntry& Get(std::string_view syllable) const;

 private:
  std::string language_;
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, int> index_;
};

Lexicon ParseLexicon(std::string_view content);
Lexicon LoadLexicon(const std::string& path);
std::string FormatLexicon(const Lexicon& lexicon);

// Segment-wise projection of an entry. For a lone H or B knowledge source the
// consonant segments (all-absent after projection) are dropped.
ProjectedSequence ProjectSegments(const std::vector<AttributeTuple>& segments,
                                  const KnowledgeSource& ks);
ProjectedSequence SyllableToAttributes(const Lexicon& lexicon,
                                       std::string_view syllable,
                                       const KnowledgeSource& ks);
std::string FormatProjected(const ProjectedSequence& seq);

// Partition of the lexicon into classes of syllables whose projections under
// a knowledge source coincide. Class ids follow the order of first
// appearance in the lexicon; members are sorted by label.
class HomonymIndex {
 public:
  HomonymIndex(const Lexicon& lexicon, const KnowledgeSource& ks);

  const KnowledgeSource& knowledge_source() const { return ks_; }
  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::vector<std::string>>& classes() const {
    return classes_;
  }
  // Lexicographically smallest member.
  const std::string& Representative(int class_id) const {
    return classes_[class_id].front();
  }
  const ProjectedSequence& Key(int class_id) const { return keys_[class_id]; }

  // Throws FormatError for an out-of-lexicon syllable.
  int ClassOf(std::string_view syllable) const;
  const std::string& RepresentativeOf(std::string_view syllable) const {
    return Representative(ClassOf(syllable));
  }
  // Every syllable whose projection equals seq; empty when none.
  std::vector<std::string> Lookup(const ProjectedSequence& seq) const;

 private:
  KnowledgeSource ks_;
  std::vector<std::vector<std::string>> classes_;
  std::vector<ProjectedSequence> keys_;
  std::map<ProjectedSequence, int> by_key_;
  std::unordered_map<std::string, int> class_of_;
};

}  // namespace sylattr

#endif  // SYLATTR_LEXICON_H_
