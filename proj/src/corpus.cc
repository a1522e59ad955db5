// corpus.cc
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

#include "sylattr/corpus.h"

#include <unordered_map>
#include <unordered_set>

#include "sylattr/text.h"

namespace sylattr {

std::vector<Utterance> ParseCorpus(std::string_view content) {
  std::vector<Utterance> out;
  std::unordered_set<std::string> seen;
  const auto lines = SplitLines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    const std::size_t tab = line.find('\t');
    Utterance u;
    u.id = std::string(Trim(line.substr(0, tab)));
    if (u.id.empty() || u.id.find_first_of(" \t") != std::string::npos) {
      throw FormatError("line " + std::to_string(n + 1) + ": bad utterance id");
    }
    if (tab != std::string_view::npos) {
      for (std::string_view tok : SplitWhitespace(line.substr(tab + 1))) {
        u.tokens.emplace_back(tok);
      }
    }
    if (!seen.insert(u.id).second) {
      throw FormatError("line " + std::to_string(n + 1) +
                        ": duplicate utterance id '" + u.id + "'");
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::string FormatCorpus(const std::vector<Utterance>& corpus) {
  std::string out;
  for (const Utterance& u : corpus) {
    out += u.id;
    out += '\t';
    out += Join(u.tokens, " ");
    out += '\n';
  }
  return out;
}

std::vector<Utterance> MatchById(const std::vector<Utterance>& refs,
                                 const std::vector<Utterance>& hyps) {
  std::unordered_map<std::string, const Utterance*> by_id;
  for (const Utterance& h : hyps) by_id.emplace(h.id, &h);
  std::vector<Utterance> out;
  for (const Utterance& r : refs) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      throw FormatError("no hypothesis for utterance '" + r.id + "'");
    }
    out.push_back(*it->second);
  }
  if (hyps.size() != refs.size()) {
    throw FormatError("hypothesis corpus has utterances missing from the "
                      "reference");
  }
  return out;
}

}  // namespace sylattr
