// lexicon.cc
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

#include "sylattr/lexicon.h"

#include <algorithm>

#include "sylattr/text.h"

namespace sylattr {

namespace {

bool HasWhitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

void ValidateEntry(const LexiconEntry& e) {
  if (e.syllable.empty()) throw FormatError("empty syllable label");
  if (HasWhitespace(e.syllable)) {
    throw FormatError("syllable '" + e.syllable + "' contains whitespace");
  }
  if (e.segments.empty()) {
    throw FormatError("syllable '" + e.syllable + "' has no segments");
  }
  bool has_vowel = false;
  for (const AttributeTuple& t : e.segments) {
    t.Validate();
    has_vowel |= t.is_vowel();
  }
  if (!has_vowel) {
    throw FormatError("syllable '" + e.syllable + "' has no vowel segment");
  }
}

}  // namespace

Lexicon::Lexicon(std::string language, std::vector<LexiconEntry> entries)
    : language_(std::move(language)), entries_(std::move(entries)) {
  if (entries_.empty()) throw FormatError("empty lexicon");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    ValidateEntry(entries_[i]);
    if (!index_.emplace(entries_[i].syllable, static_cast<int>(i)).second) {
      throw FormatError("duplicate syllable '" + entries_[i].syllable + "'");
    }
  }
}

int Lexicon::IndexOf(std::string_view syllable) const {
  const auto it = index_.find(std::string(syllable));
  return it == index_.end() ? -1 : it->second;
}

const LexiconEntry& Lexicon::Get(std::string_view syllable) const {
  const int i = IndexOf(syllable);
  if (i < 0) {
    throw FormatError("syllable '" + std::string(syllable) +
                      "' is not in the lexicon");
  }
  return entries_[i];
}

Lexicon ParseLexicon(std::string_view content) {
  std::string language;
  std::vector<LexiconEntry> entries;
  std::unordered_map<std::string, int> first_line;
  int line_no = 0;
  for (std::string_view raw : SplitLines(content)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = Trim(line.substr(1));
      if (body.starts_with("language:")) {
        language = std::string(Trim(body.substr(9)));
      }
      continue;
    }
    const auto where = [line_no] {
      return "line " + std::to_string(line_no) + ": ";
    };
    const auto cols = Split(line, '\t');
    if (cols.size() != 2) {
      throw FormatError(where() + "expected 'syllable<TAB>segments'");
    }
    LexiconEntry e;
    e.syllable = std::string(Trim(cols[0]));
    try {
      for (std::string_view seg : Split(cols[1], ';')) {
        e.segments.push_back(ParseTuple(seg));
      }
      ValidateEntry(e);
    } catch (const FormatError& err) {
      throw FormatError(where() + err.what());
    }
    const auto [it, fresh] = first_line.emplace(e.syllable, line_no);
    if (!fresh) {
      throw FormatError(where() + "duplicate syllable '" + e.syllable +
                        "' (first defined on line " +
                        std::to_string(it->second) + ")");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw FormatError("empty lexicon");
  return Lexicon(std::move(language), std::move(entries));
}

Lexicon LoadLexicon(const std::string& path) {
  return ParseLexicon(ReadFile(path));
}

std::string FormatLexicon(const Lexicon& lexicon) {
  std::string out;
  if (!lexicon.language().empty()) {
    out += "# language: " + lexicon.language() + "\n";
  }
  for (const LexiconEntry& e : lexicon.entries()) {
    out += e.syllable;
    out += '\t';
    for (std::size_t i = 0; i < e.segments.size(); ++i) {
      if (i) out += ';';
      out += FormatTuple(e.segments[i]);
    }
    out += '\n';
  }
  return out;
}

ProjectedSequence ProjectSegments(const std::vector<AttributeTuple>& segments,
                                  const KnowledgeSource& ks) {
  ProjectedSequence out;
  out.reserve(segments.size());
  const bool drop_absent = ks.IsVowelOnlySingle();
  for (const AttributeTuple& t : segments) {
    ProjectedTuple p = Project(t, ks);
    if (drop_absent && p.AllAbsent()) continue;
    out.push_back(p);
  }
  return out;
}

ProjectedSequence SyllableToAttributes(const Lexicon& lexicon,
                                       std::string_view syllable,
                                       const KnowledgeSource& ks) {
  return ProjectSegments(lexicon.Get(syllable).segments, ks);
}

std::string FormatProjected(const ProjectedSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    out += seq[i].ToString();
  }
  return out;
}

HomonymIndex::HomonymIndex(const Lexicon& lexicon, const KnowledgeSource& ks)
    : ks_(ks) {
  for (const LexiconEntry& e : lexicon.entries()) {
    ProjectedSequence key = ProjectSegments(e.segments, ks);
    auto [it, fresh] =
        by_key_.emplace(key, static_cast<int>(classes_.size()));
    if (fresh) {
      classes_.emplace_back();
      keys_.push_back(std::move(key));
    }
    classes_[it->second].push_back(e.syllable);
    class_of_.emplace(e.syllable, it->second);
  }
  for (auto& members : classes_) std::sort(members.begin(), members.end());
}

int HomonymIndex::ClassOf(std::string_view syllable) const {
  const auto it = class_of_.find(std::string(syllable));
  if (it == class_of_.end()) {
    throw FormatError("syllable '" + std::string(syllable) +
                      "' is not in the lexicon");
  }
  return it->second;
}

std::vector<std::string> HomonymIndex::Lookup(
    const ProjectedSequence& seq) const {
  const auto it = by_key_.find(seq);
  if (it == by_key_.end()) return {};
  return classes_[it->second];
}

}  // namespace sylattr
