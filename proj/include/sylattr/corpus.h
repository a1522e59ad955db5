// corpus.h
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
// Utterance corpora: one "utt_id<TAB>token token ..." line per utterance.

#ifndef SYLATTR_CORPUS_H_
#define SYLATTR_CORPUS_H_

#include <string>
#include <string_view>
#include <vector>

#include "sylattr/error.h"

namespace sylattr {

struct Utterance {
  std::string id;
  std::vector<std::string> tokens;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Blank lines and '#' comments are skipped. A line without a tab is an
// utterance with no tokens. Duplicate ids throw FormatError.
std::vector<Utterance> ParseCorpus(std::string_view content);
std::string FormatCorpus(const std::vector<Utterance>& corpus);

// Reorders hyps to follow refs by id; throws FormatError when the id sets
// differ.
std::vector<Utterance> MatchById(const std::vector<Utterance>& refs,
                                 const std::vector<Utterance>& hyps);

}  // namespace sylattr

#endif  // SYLATTR_CORPUS_H_
