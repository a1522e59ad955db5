// decoder.cc
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

#include "sylattr/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace sylattr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double SafeLog(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

int ClassIndex(const ProjectedTuple& tuple, Category c) {
  const int slot = tuple.slot(c);
  return slot == ProjectedTuple::kAbsent ? AbsentClass(c) : slot + 1;
}

struct KeyHash {
  std::size_t operator()(const std::pair<std::vector<int>, int>& k) const {
    std::size_t h = std::hash<int>()(k.second);
    for (int v : k.first) h = h * 1000003u ^ std::hash<int>()(v);
    return h;
  }
};

}  // namespace

std::vector<AttributeValue> CtcGreedyDecode(const CategoryStream& stream) {
  const int absent = AbsentClass(stream.category);
  std::vector<AttributeValue> out;
  int prev = -1;
  for (int t = 0; t < stream.num_frames(); ++t) {
    const auto row = stream.row(t);
    const int best = static_cast<int>(
        std::max_element(row.begin(), row.end()) - row.begin());
    if (best != prev && best != kBlankClass && best != absent) {
      out.push_back({stream.category, static_cast<std::uint8_t>(best - 1)});
    }
    prev = best;
  }
  return out;
}

std::vector<std::pair<Category, std::vector<AttributeValue>>>
DecodeAttributeSequence(const PosteriorSet& ps, const KnowledgeSource& ks) {
  std::vector<std::pair<Category, std::vector<AttributeValue>>> out;
  for (Category c : ks.categories()) {
    const CategoryStream* s = ps.Find(c);
    if (s == nullptr) {
      throw FormatError("utterance '" + ps.utterance_id + "' has no " +
                        std::string(CategoryName(c)) + " stream");
    }
    out.emplace_back(c, CtcGreedyDecode(*s));
  }
  return out;
}

TupleFrames::TupleFrames(const PosteriorSet& ps, const KnowledgeSource& ks)
    : ks_(ks), frames_(ps.frame_count) {
  for (Category c : ks.categories()) {
    const CategoryStream* s = ps.Find(c);
    if (s == nullptr) {
      throw FormatError("utterance '" + ps.utterance_id + "' has no " +
                        std::string(CategoryName(c)) + " stream");
    }
    streams_.push_back(s);
  }
}

double TupleFrames::TupleLogProb(int t, const ProjectedTuple& tuple) const {
  double sum = 0.0;
  for (const CategoryStream* s : streams_) {
    sum += SafeLog(s->row(t)[ClassIndex(tuple, s->category)]);
  }
  return sum;
}

double TupleFrames::BlankLogProb(int t) const {
  // A lone H or B stream sees consonants only as absent markers, which the
  // decoder cannot emit; they count as blank.
  if (ks_.IsVowelOnlySingle()) {
    const CategoryStream& s = *streams_.front();
    return SafeLog(s.row(t)[kBlankClass] + s.row(t)[AbsentClass(s.category)]);
  }
  double sum = 0.0;
  for (const CategoryStream* s : streams_) sum += SafeLog(s->row(t)[kBlankClass]);
  return sum;
}

struct Decoder::State {
  std::vector<int> syllables;  // lexicon indices
  std::vector<int> classes;
  int node = 0;
  double pb = kNegInf;
  double pnb = kNegInf;
  double lm = 0.0;
  double total = kNegInf;

  double acoustic() const { return LogAdd(pb, pnb); }
};

Decoder::Decoder(const Lexicon& lexicon, const KnowledgeSource& ks,
                 const NGramModel* lm, const DecoderOptions& options)
    : lexicon_(&lexicon),
      ks_(ks),
      lm_(lm),
      options_(options),
      homonyms_(lexicon, ks) {
  if (options.beam < 1) throw FormatError("beam width must be at least 1");
  if (options.nbest < 1) throw FormatError("n-best size must be at least 1");
  if (!std::isfinite(options.lm_weight) ||
      !std::isfinite(options.insertion_bonus)) {
    throw FormatError("decoder weights must be finite");
  }
  if (lexicon.size() == 0) throw FormatError("empty lexicon");

  std::map<ProjectedTuple, int> symbols;
  for (std::size_t c = 0; c < homonyms_.num_classes(); ++c) {
    for (const ProjectedTuple& t : homonyms_.Key(static_cast<int>(c))) {
      symbols.emplace(t, 0);
    }
  }
  for (auto& [tuple, id] : symbols) {
    id = static_cast<int>(alphabet_.size());
    alphabet_.push_back(tuple);
  }

  nodes_.emplace_back();
  for (std::size_t c = 0; c < homonyms_.num_classes(); ++c) {
    int node = 0;
    for (const ProjectedTuple& t : homonyms_.Key(static_cast<int>(c))) {
      node = AddChild(node, symbols.at(t));
    }
    nodes_[node].class_id = static_cast<int>(c);
    std::vector<int> members;
    for (const std::string& s : homonyms_.classes()[c]) {
      members.push_back(lexicon.IndexOf(s));
    }
    members_.push_back(std::move(members));
  }

  std::vector<int> order(lexicon.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lexicon.entries()[a].syllable < lexicon.entries()[b].syllable;
  });
  label_rank_.resize(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    label_rank_[order[r]] = static_cast<int>(r);
  }
  if (lm_ != nullptr) {
    for (const LexiconEntry& e : lexicon.entries()) {
      lm_ids_.push_back(lm_->WordId(e.syllable));
    }
  }
}

int Decoder::AddChild(int node, int symbol) {
  for (const auto& [sym, child] : nodes_[node].children) {
    if (sym == symbol) return child;
  }
  const int child = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{symbol, -1, {}});
  nodes_[node].children.emplace_back(symbol, child);
  return child;
}

double Decoder::LmLogProb(std::span<const int> history, int syllable) const {
  if (lm_ == nullptr) return 0.0;
  std::vector<int> ctx = {lm_->start_id()};
  for (int s : history) ctx.push_back(lm_ids_[s]);
  const std::size_t keep = static_cast<std::size_t>(lm_->order() - 1);
  const std::span<const int> view(ctx);
  return lm_->LogProb(view.subspan(ctx.size() - std::min(keep, ctx.size())),
                      lm_ids_[syllable]);
}

double Decoder::LmEndLogProb(std::span<const int> history) const {
  if (lm_ == nullptr) return 0.0;
  std::vector<int> ctx = {lm_->start_id()};
  for (int s : history) ctx.push_back(lm_ids_[s]);
  const std::size_t keep = static_cast<std::size_t>(lm_->order() - 1);
  const std::span<const int> view(ctx);
  return lm_->LogProb(view.subspan(ctx.size() - std::min(keep, ctx.size())),
                      lm_->end_id());
}

NBestList Decoder::Decode(const PosteriorSet& ps) const {
  const TupleFrames frames(ps, ks_);
  const double weight = options_.lm_weight;
  const double bonus = options_.insertion_bonus;
  const bool lm_active = lm_ != nullptr && weight != 0.0;
  const std::size_t lm_context =
      lm_active ? static_cast<std::size_t>(lm_->order() - 1) : 0;

  const auto total_of = [&](const State& s) {
    return s.acoustic() + weight * s.lm +
           bonus * static_cast<double>(s.syllables.size());
  };
  const auto labels_before = [&](const std::vector<int>& a,
                                 const std::vector<int>& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [&](int x, int y) { return label_rank_[x] < label_rank_[y]; });
  };
  const auto state_before = [&](const State& a, const State& b) {
    if (a.total != b.total) return a.total > b.total;
    if (a.syllables != b.syllables) return labels_before(a.syllables, b.syllables);
    return a.node < b.node;
  };

  std::vector<State> beam(1);
  beam[0].pb = 0.0;
  std::vector<double> sym_score(alphabet_.size());

  using Key = std::pair<std::vector<int>, int>;
  std::unordered_map<Key, State, KeyHash> next;
  for (int t = 0; t < frames.num_frames(); ++t) {
    for (std::size_t a = 0; a < alphabet_.size(); ++a) {
      sym_score[a] = frames.TupleLogProb(t, alphabet_[a]);
    }
    const double blank = frames.BlankLogProb(t);
    next.clear();

    const auto slot = [&](std::vector<int> syllables,
                          std::vector<int> classes, int node,
                          double lm) -> State& {
      auto [it, inserted] = next.try_emplace(Key(syllables, node));
      if (inserted) {
        it->second.syllables = std::move(syllables);
        it->second.classes = std::move(classes);
        it->second.node = node;
        it->second.lm = lm;
      }
      return it->second;
    };

    for (const State& s : beam) {
      const double prev = s.acoustic();
      const Node& node = nodes_[s.node];

      State& self = slot(s.syllables, s.classes, s.node, s.lm);
      self.pb = LogAdd(self.pb, prev + blank);
      if (s.node != 0) {
        self.pnb = LogAdd(self.pnb, s.pnb + sym_score[node.symbol]);
      }

      for (const auto& [sym, child] : node.children) {
        const double from = (s.node != 0 && sym == node.symbol) ? s.pb : prev;
        const double score = from + sym_score[sym];
        if (score == kNegInf) continue;
        State& ext = slot(s.syllables, s.classes, child, s.lm);
        ext.pnb = LogAdd(ext.pnb, score);
      }

      if (node.class_id < 0) continue;
      for (const auto& [sym, child] : nodes_[0].children) {
        const double from = sym == node.symbol ? s.pb : prev;
        const double score = from + sym_score[sym];
        if (score == kNegInf) continue;
        std::vector<int> classes = s.classes;
        classes.push_back(node.class_id);
        for (int member : members_[node.class_id]) {
          std::vector<int> syllables = s.syllables;
          syllables.push_back(member);
          const double lm = s.lm + LmLogProb(s.syllables, member);
          State& ext = slot(std::move(syllables), classes, child, lm);
          ext.pnb = LogAdd(ext.pnb, score);
        }
      }
    }

    // Hypotheses that agree on homonym classes, trie position and LM
    // context have identical futures; only the best of each group can win.
    using Group = std::tuple<std::vector<int>, int, std::vector<int>>;
    std::map<Group, State*> best;
    for (auto& [key, s] : next) {
      s.total = total_of(s);
      if (s.total == kNegInf) continue;
      const std::size_t n = std::min(lm_context, s.syllables.size());
      Group g(s.classes, s.node,
              std::vector<int>(s.syllables.end() - n, s.syllables.end()));
      auto [it, inserted] = best.try_emplace(std::move(g), &s);
      if (!inserted && state_before(s, *it->second)) it->second = &s;
    }
    beam.clear();
    beam.reserve(best.size());
    for (auto& [g, s] : best) beam.push_back(std::move(*s));
    const std::size_t keep =
        std::min(beam.size(), static_cast<std::size_t>(options_.beam));
    std::size_t keep_extra = 0;
    std::partial_sort(beam.begin(), beam.begin() + keep, beam.end(),
                      state_before);
    // Spurious partial syllables can crowd out everything that could end
    // the utterance; hold on to the best state that still can.
    const auto can_end = [&](const State& s) {
      return s.node == 0 || nodes_[s.node].class_id >= 0;
    };
    if (std::none_of(beam.begin(), beam.begin() + keep, can_end)) {
      auto best_end = beam.end();
      for (auto it = beam.begin() + keep; it != beam.end(); ++it) {
        if (can_end(*it) &&
            (best_end == beam.end() || state_before(*it, *best_end))) {
          best_end = it;
        }
      }
      if (best_end != beam.end()) {
        std::swap(*best_end, beam[keep]);
        ++keep_extra;
      }
    }
    beam.resize(keep + keep_extra);
  }

  NBestList out;
  for (const State& s : beam) {
    const double acoustic = s.acoustic();
    if (acoustic == kNegInf) continue;
    const auto emit = [&](std::vector<int> syllables, double lm) {
      Hypothesis h;
      for (int i : syllables) {
        h.syllables.push_back(lexicon_->entries()[i].syllable);
      }
      h.acoustic = acoustic;
      h.lm = lm_ != nullptr ? lm : 0.0;
      h.score = acoustic + (lm_active ? weight * h.lm : 0.0) +
                bonus * static_cast<double>(syllables.size());
      if (std::isfinite(h.score)) out.push_back(std::move(h));
    };
    if (s.node == 0) {
      emit(s.syllables, s.lm + LmEndLogProb(s.syllables));
      continue;
    }
    const int cls = nodes_[s.node].class_id;
    if (cls < 0) continue;
    for (int member : members_[cls]) {
      std::vector<int> syllables = s.syllables;
      syllables.push_back(member);
      const double lm =
          s.lm + LmLogProb(s.syllables, member) + LmEndLogProb(syllables);
      emit(std::move(syllables), lm);
    }
  }
  if (out.empty()) {
    throw RuntimeError("utterance '" + ps.utterance_id +
                       "': no complete hypothesis survived the beam");
  }
  std::sort(out.begin(), out.end(), HypothesisBefore);
  if (out.size() > static_cast<std::size_t>(options_.nbest)) {
    out.resize(options_.nbest);
  }
  return out;
}

bool HypothesisBefore(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.syllables < b.syllables;
}

NBestList RescoreNBest(const NBestList& nbest, const NGramModel* lm,
                       double lm_weight, double insertion_bonus) {
  NBestList out = nbest;
  for (Hypothesis& h : out) {
    h.lm = lm != nullptr ? ScoreSentence(*lm, h.syllables) : 0.0;
    h.score = h.acoustic + lm_weight * h.lm +
              insertion_bonus * static_cast<double>(h.syllables.size());
  }
  std::sort(out.begin(), out.end(), HypothesisBefore);
  return out;
}

NBestList ExpandHomonyms(const NBestList& nbest, const HomonymIndex& index,
                         std::size_t limit) {
  NBestList out;
  std::set<std::vector<std::string>> seen;
  for (const Hypothesis& h : nbest) {
    std::vector<const std::vector<std::string>*> choices;
    for (const std::string& s : h.syllables) {
      choices.push_back(&index.classes()[index.ClassOf(s)]);
    }
    // Odometer over class members, first syllable varying slowest.
    std::vector<std::size_t> pick(choices.size(), 0);
    for (std::size_t made = 0; made < limit; ++made) {
      Hypothesis v = h;
      for (std::size_t k = 0; k < pick.size(); ++k) v.syllables[k] = (*choices[k])[pick[k]];
      if (seen.insert(v.syllables).second) out.push_back(std::move(v));
      std::size_t k = pick.size();
      while (k > 0 && ++pick[k - 1] == choices[k - 1]->size()) pick[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

}  // namespace sylattr
