// synth.cc
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

#include "sylattr/synth.h"

#include <cmath>
#include <random>

#include "sylattr/batch.h"
#include "sylattr/text.h"

namespace sylattr {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int TrueClass(const ProjectedTuple& t, Category c) {
  const int slot = t.slot(c);
  return slot == ProjectedTuple::kAbsent ? AbsentClass(c) : slot + 1;
}

}  // namespace

void SynthConfig::Validate() const {
  if (frames_per_segment < 1) {
    throw FormatError("frames per segment must be at least 1");
  }
  if (blank_frames_between < 0) {
    throw FormatError("blank frames between segments must be non-negative");
  }
  for (double eps : noise) {
    if (!(eps >= 0.0 && eps < 1.0)) {
      throw FormatError("noise must lie in [0, 1), got " + FormatDouble(eps));
    }
  }
}

std::string SynthConfig::ToString() const {
  std::string noise_text;
  for (Category c : kAllCategories) {
    if (!noise_text.empty()) noise_text += ',';
    noise_text += std::string(CategoryAbbrev(c)) + ":" +
                  FormatDouble(noise[static_cast<int>(c)]);
  }
  return "frames_per_segment=" + std::to_string(frames_per_segment) +
         " blank_frames_between=" + std::to_string(blank_frames_between) +
         " noise=" + noise_text + " seed=" + std::to_string(seed);
}

PosteriorSet SynthesizeUtterance(const Utterance& ref, const Lexicon& lexicon,
                                 const KnowledgeSource& ks,
                                 const SynthConfig& config,
                                 std::uint64_t index) {
  config.Validate();
  const std::vector<Category> cats = ks.categories();

  // Frame labels: nullopt for blank.
  std::vector<std::optional<ProjectedTuple>> labels;
  std::optional<ProjectedTuple> prev;
  for (const std::string& syl : ref.tokens) {
    for (const AttributeTuple& seg : lexicon.Get(syl).segments) {
      const ProjectedTuple t = Project(seg, ks);
      if (prev) {
        int blanks = config.blank_frames_between;
        if (blanks == 0 && *prev == t) blanks = 1;
        labels.insert(labels.end(), blanks, std::nullopt);
      }
      labels.insert(labels.end(), config.frames_per_segment, t);
      prev = t;
    }
  }

  PosteriorSet set;
  set.utterance_id = ref.id;
  set.frame_count = static_cast<int>(labels.size());
  for (Category c : cats) set.streams.push_back(MakeStream(c, set.frame_count));

  std::mt19937_64 rng(SplitMix64(config.seed ^ SplitMix64(index)));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int t = 0; t < set.frame_count; ++t) {
    for (std::size_t k = 0; k < cats.size(); ++k) {
      CategoryStream& s = set.streams[k];
      const double eps = config.noise[static_cast<int>(cats[k])];
      int dominant = labels[t] ? TrueClass(*labels[t], cats[k]) : kBlankClass;
      if (eps > 0.0 && coin(rng) < eps) {
        std::uniform_int_distribution<int> other(0, s.num_classes - 2);
        const int r = other(rng);
        dominant = r >= dominant ? r + 1 : r;
      }
      const auto row = s.row(t);
      const double spread =
          QuantizeProbability(eps / static_cast<double>(s.num_classes - 1));
      for (int j = 0; j < s.num_classes; ++j) {
        row[j] = j == dominant ? QuantizeProbability(1.0 - eps) : spread;
      }
    }
  }
  return set;
}

void CheckInLexicon(const std::vector<Utterance>& refs, const Lexicon& lexicon) {
  for (const Utterance& u : refs) {
    for (const std::string& s : u.tokens) {
      if (!lexicon.Contains(s)) {
        throw FormatError("utterance '" + u.id + "': syllable '" + s +
                          "' is not in the lexicon");
      }
    }
  }
}

std::string ExperimentReport::ToString() const {
  std::string out = "# synth " + config.ToString() + "\n";
  out += "# decoder beam=" + std::to_string(options.beam) +
         " lm_weight=" + FormatDouble(options.lm_weight) +
         " insertion_bonus=" + FormatDouble(options.insertion_bonus) +
         " nbest=" + std::to_string(options.nbest) +
         " lm=" + (with_lm ? "yes" : "no") + "\n";
  out += "ks\tmetric\trate\tref\terrors\n";
  for (const ExperimentEntry& e : entries) {
    for (const MetricResult& m : e.report.metrics) {
      const double rate = m.pooled.rate();
      out += e.ks.ToString() + '\t' + m.name + '\t' +
             (std::isinf(rate) ? "inf" : FormatSignificant(100.0 * rate, 6)) +
             '\t' + std::to_string(m.pooled.ref_tokens) + '\t' +
             std::to_string(m.pooled.errors()) + '\n';
    }
  }
  return out;
}

ExperimentReport RunExperiment(const std::vector<Utterance>& refs,
                               const Lexicon& lexicon,
                               const std::vector<KnowledgeSource>& ks_list,
                               const SynthConfig& config,
                               const DecoderOptions& options,
                               const NGramModel* lm, int jobs) {
  config.Validate();
  CheckInLexicon(refs, lexicon);
  ExperimentReport report;
  report.config = config;
  report.options = options;
  report.with_lm = lm != nullptr;

  std::vector<std::string> ids;
  std::vector<TokenSeq> ref_tokens;
  for (const Utterance& u : refs) {
    ids.push_back(u.id);
    ref_tokens.push_back(u.tokens);
  }
  for (const KnowledgeSource& ks : ks_list) {
    const std::vector<PosteriorSet> sets =
        SynthesizeCorpus(refs, lexicon, ks, config, jobs);
    const Decoder decoder(lexicon, ks, lm, options);
    ExperimentEntry entry;
    entry.ks = ks;
    entry.hypotheses = TopHypotheses(sets, DecodeCorpus(decoder, sets, jobs));
    std::vector<TokenSeq> hyp_tokens;
    for (const Utterance& u : entry.hypotheses) hyp_tokens.push_back(u.tokens);

    ScoreRequest request;
    request.sher = {ks};
    request.prer = {ks};
    if (ks.size() > 1) {
      for (Category c : ks.categories()) {
        const Category one[] = {c};
        request.prer.emplace_back(one);
      }
    }
    entry.report =
        ScoreCorpusParallel(ids, ref_tokens, hyp_tokens, &lexicon, request, jobs);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace sylattr
