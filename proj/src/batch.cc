// batch.cc
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

#include "sylattr/batch.h"

#include <omp.h>

namespace sylattr {

namespace {

int Threads(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

DecodeOutcome DecodeOne(const Decoder& decoder, const PosteriorSet& set) {
  DecodeOutcome out;
  try {
    out.nbest = decoder.Decode(set);
  } catch (const FormatError& e) {
    out.error = e.what();
    out.format_error = true;
  } catch (const std::exception& e) {
    out.error = e.what();
    if (out.error.empty()) out.error = "decode failed";
  }
  return out;
}

}  // namespace

std::vector<DecodeOutcome> DecodeCorpus(const Decoder& decoder,
                                        std::span<const PosteriorSet> sets,
                                        int jobs) {
  std::vector<DecodeOutcome> out(sets.size());
  const long long n = static_cast<long long>(sets.size());
#pragma omp parallel for schedule(dynamic) num_threads(Threads(jobs))
  for (long long i = 0; i < n; ++i) out[i] = DecodeOne(decoder, sets[i]);
  return out;
}

std::vector<DecodeOutcome> DecodeCorpusSerial(
    const Decoder& decoder, std::span<const PosteriorSet> sets) {
  std::vector<DecodeOutcome> out;
  out.reserve(sets.size());
  for (const PosteriorSet& s : sets) out.push_back(DecodeOne(decoder, s));
  return out;
}

std::vector<PosteriorSet> SynthesizeCorpus(const std::vector<Utterance>& refs,
                                           const Lexicon& lexicon,
                                           const KnowledgeSource& ks,
                                           const SynthConfig& config,
                                           int jobs) {
  config.Validate();
  CheckInLexicon(refs, lexicon);
  std::vector<PosteriorSet> out(refs.size());
  const long long n = static_cast<long long>(refs.size());
#pragma omp parallel for schedule(static) num_threads(Threads(jobs))
  for (long long i = 0; i < n; ++i) {
    out[i] = SynthesizeUtterance(refs[i], lexicon, ks, config,
                                 static_cast<std::uint64_t>(i));
  }
  return out;
}

std::vector<PosteriorSet> SynthesizeCorpusSerial(
    const std::vector<Utterance>& refs, const Lexicon& lexicon,
    const KnowledgeSource& ks, const SynthConfig& config) {
  config.Validate();
  CheckInLexicon(refs, lexicon);
  std::vector<PosteriorSet> out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    out.push_back(SynthesizeUtterance(refs[i], lexicon, ks, config, i));
  }
  return out;
}

ScoreReport ScoreCorpusParallel(const std::vector<std::string>& ids,
                                const std::vector<TokenSeq>& refs,
                                const std::vector<TokenSeq>& hyps,
                                const Lexicon* lexicon,
                                const ScoreRequest& request, int jobs) {
  // Out-of-lexicon tokens and size mismatches surface serially first.
  if (refs.size() != hyps.size() || ids.size() != refs.size()) {
    return ScoreCorpus(ids, refs, hyps, lexicon, request);
  }
  if (lexicon != nullptr) {
    for (const auto* corpus : {&refs, &hyps}) {
      for (const TokenSeq& seq : *corpus) {
        for (const std::string& s : seq) lexicon->Get(s);
      }
    }
  } else if (!request.sher.empty() || !request.prer.empty()) {
    return ScoreCorpus(ids, refs, hyps, lexicon, request);
  }

  std::vector<HomonymIndex> indices;
  for (const KnowledgeSource& ks : request.sher) indices.emplace_back(*lexicon, ks);

  ScoreReport report;
  report.utterance_ids = ids;
  const std::size_t n = refs.size();
  if (request.ser) report.metrics.push_back({"ser", {}, std::vector<ErrorCounts>(n)});
  for (const KnowledgeSource& ks : request.sher) {
    report.metrics.push_back({SherName(ks), {}, std::vector<ErrorCounts>(n)});
  }
  for (const KnowledgeSource& ks : request.prer) {
    report.metrics.push_back({PrerName(ks), {}, std::vector<ErrorCounts>(n)});
  }

  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(Threads(jobs))
  for (long long i = 0; i < count; ++i) {
    std::size_t m = 0;
    if (request.ser) report.metrics[m++].per_utterance[i] = SerCounts(refs[i], hyps[i]);
    for (const HomonymIndex& index : indices) {
      report.metrics[m++].per_utterance[i] = SherCounts(refs[i], hyps[i], index);
    }
    for (const KnowledgeSource& ks : request.prer) {
      report.metrics[m++].per_utterance[i] =
          PrerCounts(refs[i], hyps[i], *lexicon, ks);
    }
  }
  for (MetricResult& m : report.metrics) {
    for (const ErrorCounts& c : m.per_utterance) m.pooled += c;
  }
  return report;
}

std::vector<Utterance> TopHypotheses(std::span<const PosteriorSet> sets,
                                     const std::vector<DecodeOutcome>& out) {
  std::vector<Utterance> hyps;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!out[i].ok()) {
      if (out[i].format_error) throw FormatError(out[i].error);
      throw RuntimeError(out[i].error);
    }
    hyps.push_back({sets[i].utterance_id, out[i].nbest.front().syllables});
  }
  return hyps;
}

}  // namespace sylattr
