// metrics.cc
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

#include "sylattr/metrics.h"

#include <cmath>
#include <cstdio>
#include <limits>

#include "sylattr/text.h"

namespace sylattr {

namespace {

void CheckSizes(std::size_t refs, std::size_t hyps) {
  if (refs != hyps) {
    throw FormatError("reference corpus has " + std::to_string(refs) +
                      " utterances but hypothesis corpus has " +
                      std::to_string(hyps));
  }
}

std::string Percent(double rate) {
  if (std::isinf(rate)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * rate);
  return buf;
}

}  // namespace

double ErrorCounts::rate() const {
  if (ref_tokens == 0) {
    return errors() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(errors()) / static_cast<double>(ref_tokens);
}

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  ref_tokens += o.ref_tokens;
  return *this;
}

ErrorCounts SerCounts(const TokenSeq& ref, const TokenSeq& hyp) {
  return Align(ref, hyp).counts;
}

ErrorCounts SherCounts(const TokenSeq& ref, const TokenSeq& hyp,
                       const HomonymIndex& index) {
  const auto canon = [&](const TokenSeq& seq) {
    TokenSeq out;
    out.reserve(seq.size());
    for (const std::string& s : seq) out.push_back(index.RepresentativeOf(s));
    return out;
  };
  return Align(canon(ref), canon(hyp)).counts;
}

ProjectedSequence AttributeTokens(const TokenSeq& syllables,
                                  const Lexicon& lexicon,
                                  const KnowledgeSource& ks) {
  ProjectedSequence out;
  for (const std::string& s : syllables) {
    const ProjectedSequence seq = ProjectSegments(lexicon.Get(s).segments, ks);
    out.insert(out.end(), seq.begin(), seq.end());
  }
  return out;
}

ErrorCounts PrerCounts(const TokenSeq& ref, const TokenSeq& hyp,
                       const Lexicon& lexicon, const KnowledgeSource& ks) {
  return Align(AttributeTokens(ref, lexicon, ks),
               AttributeTokens(hyp, lexicon, ks))
      .counts;
}

ErrorCounts PrerCounts(const TokenSeq& ref,
                       const std::vector<AttributeValue>& hyp,
                       const Lexicon& lexicon, Category category) {
  const Category cats[] = {category};
  const KnowledgeSource ks(cats);
  ProjectedSequence hyp_tokens;
  for (const AttributeValue& v : hyp) {
    if (v.category != category) {
      throw FormatError("hypothesis value '" + std::string(v.label()) +
                        "' is not a " + std::string(CategoryName(category)) +
                        " value");
    }
    ProjectedTuple t;
    t.slots[static_cast<int>(category)] = static_cast<std::int8_t>(v.index);
    hyp_tokens.push_back(t);
  }
  return Align(AttributeTokens(ref, lexicon, ks), hyp_tokens).counts;
}

ErrorCounts Ser(const std::vector<TokenSeq>& refs,
                const std::vector<TokenSeq>& hyps) {
  CheckSizes(refs.size(), hyps.size());
  ErrorCounts total;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    total += SerCounts(refs[i], hyps[i]);
  }
  return total;
}

ErrorCounts Sher(const std::vector<TokenSeq>& refs,
                 const std::vector<TokenSeq>& hyps, const HomonymIndex& index) {
  CheckSizes(refs.size(), hyps.size());
  ErrorCounts total;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    total += SherCounts(refs[i], hyps[i], index);
  }
  return total;
}

ErrorCounts Prer(const std::vector<TokenSeq>& refs,
                 const std::vector<TokenSeq>& hyps, const Lexicon& lexicon,
                 const KnowledgeSource& ks) {
  CheckSizes(refs.size(), hyps.size());
  ErrorCounts total;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    total += PrerCounts(refs[i], hyps[i], lexicon, ks);
  }
  return total;
}

std::string SherName(const KnowledgeSource& ks) {
  return "sher[" + ks.ToString() + "]";
}

std::string PrerName(const KnowledgeSource& ks) {
  return "prer[" + ks.ToString() + "]";
}

const MetricResult* ScoreReport::Find(const std::string& name) const {
  for (const MetricResult& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

ScoreReport ScoreCorpus(const std::vector<std::string>& ids,
                        const std::vector<TokenSeq>& refs,
                        const std::vector<TokenSeq>& hyps,
                        const Lexicon* lexicon, const ScoreRequest& request) {
  CheckSizes(refs.size(), hyps.size());
  CheckSizes(ids.size(), refs.size());
  if (lexicon == nullptr && (!request.sher.empty() || !request.prer.empty())) {
    throw FormatError("SHER and PrER need a lexicon");
  }
  ScoreReport report;
  report.utterance_ids = ids;
  const auto run = [&](std::string name, auto&& per_utt) {
    MetricResult m;
    m.name = std::move(name);
    for (std::size_t i = 0; i < refs.size(); ++i) {
      m.per_utterance.push_back(per_utt(refs[i], hyps[i]));
      m.pooled += m.per_utterance.back();
    }
    report.metrics.push_back(std::move(m));
  };
  if (request.ser) run("ser", SerCounts);
  for (const KnowledgeSource& ks : request.sher) {
    const HomonymIndex index(*lexicon, ks);
    run(SherName(ks), [&](const TokenSeq& r, const TokenSeq& h) {
      return SherCounts(r, h, index);
    });
  }
  for (const KnowledgeSource& ks : request.prer) {
    run(PrerName(ks), [&](const TokenSeq& r, const TokenSeq& h) {
      return PrerCounts(r, h, *lexicon, ks);
    });
  }
  return report;
}

std::string FormatReport(const ScoreReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-24s %8s %8s %6s %6s %6s %9s\n", "metric",
                "ref", "errors", "sub", "del", "ins", "rate");
  out += buf;
  for (const MetricResult& m : report.metrics) {
    const ErrorCounts& c = m.pooled;
    std::snprintf(buf, sizeof(buf), "%-24s %8lld %8lld %6lld %6lld %6lld %9s\n",
                  m.name.c_str(), c.ref_tokens, c.errors(), c.substitutions,
                  c.deletions, c.insertions, Percent(c.rate()).c_str());
    out += buf;
  }
  return out;
}

std::string FormatReportTsv(const ScoreReport& report) {
  std::string out;
  const auto line = [&](const std::string& key, const std::string& value) {
    out += key + '\t' + value + '\n';
  };
  line("utterances", std::to_string(report.utterance_ids.size()));
  for (const MetricResult& m : report.metrics) {
    const ErrorCounts& c = m.pooled;
    const double rate = c.rate();
    line(m.name, std::isinf(rate) ? "inf" : FormatDouble(100.0 * rate));
    line(m.name + ".ref", std::to_string(c.ref_tokens));
    line(m.name + ".sub", std::to_string(c.substitutions));
    line(m.name + ".del", std::to_string(c.deletions));
    line(m.name + ".ins", std::to_string(c.insertions));
  }
  return out;
}

}  // namespace sylattr
