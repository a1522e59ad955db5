// ngram.cc
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

#include "sylattr/ngram.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "sylattr/text.h"

namespace sylattr {

namespace {

constexpr double kLogZero = -99.0;
constexpr int kMaxOrder = 5;

using Counts = std::map<std::vector<int>, double>;

struct ContextStats {
  double total = 0.0;
  double discounted = 0.0;  // sum of discounts over continuations
};

// Discounts for counts 1, 2 and 3+.
struct Discounts {
  double d[3] = {0.75, 0.75, 0.75};
  double For(double count) const {
    return d[std::min(static_cast<int>(count), 3) - 1];
  }
};

std::optional<Discounts> EstimateDiscounts(const Counts& counts) {
  double n[5] = {0, 0, 0, 0, 0};
  for (const auto& [gram, c] : counts) {
    const int k = static_cast<int>(c);
    if (k >= 1 && k <= 4) n[k] += 1;
  }
  if (n[1] == 0 || n[2] == 0 || n[3] == 0 || n[4] == 0) return std::nullopt;
  const double y = n[1] / (n[1] + 2 * n[2]);
  Discounts out;
  out.d[0] = 1 - 2 * y * n[2] / n[1];
  out.d[1] = 2 - 3 * y * n[3] / n[2];
  out.d[2] = 3 - 4 * y * n[4] / n[3];
  for (int i = 0; i < 3; ++i) {
    if (!(out.d[i] > 0 && out.d[i] < i + 1)) return std::nullopt;
  }
  return out;
}

std::vector<int> Suffix(std::span<const int> ids, std::size_t n) {
  return std::vector<int>(ids.end() - n, ids.end());
}

}  // namespace

void NGramModel::SetVocabulary(std::vector<std::string> words) {
  vocab_ = std::move(words);
  ids_.clear();
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (!ids_.emplace(vocab_[i], static_cast<int>(i)).second) {
      throw FormatError("duplicate vocabulary word '" + vocab_[i] + "'");
    }
  }
  const auto need = [this](std::string_view w) {
    const auto it = ids_.find(std::string(w));
    if (it == ids_.end()) {
      throw FormatError("language model lacks " + std::string(w));
    }
    return it->second;
  };
  start_id_ = need(kSentenceStart);
  end_id_ = need(kSentenceEnd);
  unk_id_ = need(kUnknownWord);
}

int NGramModel::WordId(std::string_view word) const {
  const auto it = ids_.find(std::string(word));
  return it == ids_.end() ? unk_id_ : it->second;
}

double NGramModel::Log10Prob(std::span<const int> context, int word) const {
  if (word < 0 || word >= static_cast<int>(vocab_.size())) word = unk_id_;
  const std::size_t max_ctx =
      std::min(context.size(), static_cast<std::size_t>(order() - 1));
  double backoff = 0.0;
  std::vector<int> key;
  for (std::size_t n = max_ctx;; --n) {
    key = Suffix(context, n);
    key.push_back(word);
    const Table& t = tables_[n];
    if (const auto it = t.find(key); it != t.end()) {
      return backoff + it->second.log10_prob;
    }
    if (n == 0) break;
    key.pop_back();
    const Table& ct = tables_[n - 1];
    if (const auto it = ct.find(key); it != ct.end() && it->second.log10_backoff) {
      backoff += *it->second.log10_backoff;
    }
  }
  return backoff + kLogZero;
}

double NGramModel::LogProb(std::span<const int> context, int word) const {
  return Log10Prob(context, word) * std::numbers::ln10;
}

NGramModel TrainNGram(const std::vector<Sentence>& corpus,
                      const LmTrainOptions& options) {
  if (corpus.empty()) throw FormatError("empty training corpus");
  if (options.order < 1 || options.order > kMaxOrder) {
    throw FormatError("language model order must be in [1, 5], got " +
                      std::to_string(options.order));
  }
  if (!(options.discount > 0.0 && options.discount <= 1.0)) {
    throw FormatError("discount must be in (0, 1]");
  }
  if (!(options.add_k > 0.0) || !std::isfinite(options.add_k)) {
    throw FormatError("add-k constant must be positive");
  }
  const int order = options.order;

  std::set<std::string> words;
  for (const Sentence& s : corpus) {
    for (const std::string& w : s) {
      if (w == kSentenceStart || w == kSentenceEnd) {
        throw FormatError("sentence boundary token '" + w + "' inside a sentence");
      }
    }
    words.insert(s.begin(), s.end());
  }
  for (std::string_view special : {kUnknownWord, kSentenceStart, kSentenceEnd}) {
    words.erase(std::string(special));
  }
  std::vector<std::string> vocab = {std::string(kUnknownWord),
                                    std::string(kSentenceStart),
                                    std::string(kSentenceEnd)};
  vocab.insert(vocab.end(), words.begin(), words.end());

  NGramModel model;
  model.SetVocabulary(std::move(vocab));
  const int start = model.start_id();

  // raw[k - 1]: counts of k-grams ending on a predicted token.
  std::vector<Counts> raw(order);
  for (const Sentence& s : corpus) {
    std::vector<int> ids = {start};
    for (const std::string& w : s) ids.push_back(model.WordId(w));
    ids.push_back(model.end_id());
    for (std::size_t end = 1; end < ids.size(); ++end) {
      for (int k = 1; k <= order && static_cast<std::size_t>(k) <= end + 1;
           ++k) {
        raw[k - 1][std::vector<int>(ids.begin() + (end + 1 - k),
                                    ids.begin() + end + 1)] += 1;
      }
    }
  }

  // Kneser-Ney uses continuation counts below the top order, except for
  // n-grams anchored at <s>, which have no left context.
  const auto kn_counts = [&] {
    std::vector<Counts> adj(order);
    adj[order - 1] = raw[order - 1];
    for (int k = order - 1; k >= 1; --k) {
      for (const auto& [gram, c] : raw[k]) {
        adj[k - 1][std::vector<int>(gram.begin() + 1, gram.end())] += 1;
      }
      for (const auto& [gram, c] : raw[k - 1]) {
        if (gram.front() == start) adj[k - 1][gram] = c;
      }
    }
    return adj;
  };

  Smoothing smoothing = options.smoothing;
  std::vector<Counts> counts;
  std::vector<Discounts> discounts(order);
  if (smoothing == Smoothing::kAddK) {
    counts = raw;
  } else {
    counts = kn_counts();
    for (int k = 0; k < order; ++k) {
      if (smoothing == Smoothing::kKneserNey) {
        discounts[k].d[0] = discounts[k].d[1] = discounts[k].d[2] =
            options.discount;
        continue;
      }
      const auto est = EstimateDiscounts(counts[k]);
      if (!est) {
        smoothing = Smoothing::kAddK;
        counts = raw;
        break;
      }
      discounts[k] = *est;
    }
  }
  model.smoothing_ = smoothing;

  const double vocab_size = static_cast<double>(model.vocabulary().size() - 1);
  const double add_mass = options.add_k * vocab_size;
  model.tables_.assign(order, {});

  for (int k = 1; k <= order; ++k) {
    std::map<std::vector<int>, ContextStats> stats;
    for (const auto& [gram, c] : counts[k - 1]) {
      ContextStats& st = stats[std::vector<int>(gram.begin(), gram.end() - 1)];
      st.total += c;
      if (smoothing != Smoothing::kAddK) st.discounted += discounts[k - 1].For(c);
    }
    const auto lower = [&](std::span<const int> ctx, int w) {
      if (k == 1) return 1.0 / vocab_size;
      return std::pow(10.0, model.Log10Prob(ctx.subspan(1), w));
    };
    const auto gamma = [&](const ContextStats& st) {
      return smoothing == Smoothing::kAddK ? add_mass / (st.total + add_mass)
                                           : st.discounted / st.total;
    };

    NGramModel::Table& table = model.tables_[k - 1];
    for (const auto& [gram, c] : counts[k - 1]) {
      const std::span<const int> ctx(gram.data(), gram.size() - 1);
      const ContextStats& st = stats.at(std::vector<int>(ctx.begin(), ctx.end()));
      const double low = lower(ctx, gram.back());
      double p;
      if (smoothing == Smoothing::kAddK) {
        p = (c + add_mass * low) / (st.total + add_mass);
      } else {
        p = std::max(c - discounts[k - 1].For(c), 0.0) / st.total +
            gamma(st) * low;
      }
      table[gram].log10_prob = std::log10(p);
    }
    if (k == 1) {
      const ContextStats& st = stats.at({});
      for (int w = 0; w < static_cast<int>(model.vocabulary().size()); ++w) {
        if (table.count({w})) continue;
        table[{w}].log10_prob =
            w == start ? kLogZero : std::log10(gamma(st) / vocab_size);
      }
    } else {
      NGramModel::Table& parent = model.tables_[k - 2];
      for (const auto& [ctx, st] : stats) {
        const auto it = parent.find(ctx);
        if (it == parent.end()) {
          throw RuntimeError("internal: context missing from lower order");
        }
        it->second.log10_backoff = std::log10(gamma(st));
      }
    }
  }
  return model;
}

double ScoreSentence(const NGramModel& model, std::span<const std::string> s) {
  std::vector<int> ids = {model.start_id()};
  double total = 0.0;
  for (const std::string& w : s) {
    const int id = model.WordId(w);
    total += model.LogProb(ids, id);
    ids.push_back(id);
  }
  return total + model.LogProb(ids, model.end_id());
}

double Perplexity(const NGramModel& model,
                  const std::vector<Sentence>& corpus) {
  if (corpus.empty()) throw FormatError("empty corpus");
  double log_sum = 0.0;
  double tokens = 0.0;
  for (const Sentence& s : corpus) {
    log_sum += ScoreSentence(model, s);
    tokens += static_cast<double>(s.size() + 1);
  }
  return std::exp(-log_sum / tokens);
}

std::string WriteArpa(const NGramModel& model) {
  std::string out = "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) {
    out += "ngram " + std::to_string(n) + "=" +
           std::to_string(model.table(n).size()) + "\n";
  }
  for (int n = 1; n <= model.order(); ++n) {
    out += "\n\\" + std::to_string(n) + "-grams:\n";
    for (const auto& [gram, e] : model.table(n)) {
      out += FormatDouble(e.log10_prob);
      out += '\t';
      for (std::size_t i = 0; i < gram.size(); ++i) {
        if (i) out += ' ';
        out += model.vocabulary()[gram[i]];
      }
      if (e.log10_backoff) {
        out += '\t';
        out += FormatDouble(*e.log10_backoff);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  return out;
}

NGramModel ReadArpa(std::string_view content) {
  const auto lines = SplitLines(content);
  std::size_t i = 0;
  const auto fail = [&](const std::string& msg) -> FormatError {
    return FormatError("ARPA line " + std::to_string(i + 1) + ": " + msg);
  };
  const auto skip_blank = [&] {
    while (i < lines.size() && Trim(lines[i]).empty()) ++i;
  };
  skip_blank();
  if (i >= lines.size() || Trim(lines[i]) != "\\data\\") {
    throw fail("expected \\data\\");
  }
  ++i;
  std::vector<long long> declared;
  while (i < lines.size() && Trim(lines[i]).starts_with("ngram ")) {
    const std::string_view body = Trim(lines[i]).substr(6);
    const auto parts = Split(body, '=');
    long long n = 0, count = 0;
    if (parts.size() != 2 || !ParseInt(parts[0], &n) ||
        !ParseInt(parts[1], &count) ||
        n != static_cast<long long>(declared.size()) + 1 || count < 0) {
      throw fail("bad ngram count line");
    }
    declared.push_back(count);
    ++i;
  }
  if (declared.empty() || declared.size() > kMaxOrder) {
    throw fail("bad or missing ngram counts");
  }

  NGramModel model;
  std::vector<std::string> vocab;
  std::unordered_map<std::string, int> ids;
  std::vector<std::vector<std::pair<std::vector<std::string>,
                                    NGramModel::Entry>>> sections(
      declared.size());
  for (std::size_t n = 1; n <= declared.size(); ++n) {
    skip_blank();
    if (i >= lines.size() ||
        Trim(lines[i]) != "\\" + std::to_string(n) + "-grams:") {
      throw fail("expected \\" + std::to_string(n) + "-grams:");
    }
    ++i;
    for (long long k = 0; k < declared[n - 1]; ++k, ++i) {
      if (i >= lines.size()) throw fail("truncated section");
      const auto fields = SplitWhitespace(lines[i]);
      if (fields.size() != n + 1 && fields.size() != n + 2) {
        throw fail("expected " + std::to_string(n) + " words");
      }
      NGramModel::Entry e;
      if (!ParseDouble(fields[0], &e.log10_prob) || e.log10_prob > 0) {
        throw fail("bad log probability");
      }
      if (fields.size() == n + 2) {
        double b = 0;
        if (!ParseDouble(fields[n + 1], &b)) throw fail("bad back-off weight");
        e.log10_backoff = b;
      }
      std::vector<std::string> words;
      for (std::size_t w = 1; w <= n; ++w) words.emplace_back(fields[w]);
      if (n == 1) {
        if (!ids.emplace(words[0], static_cast<int>(vocab.size())).second) {
          throw fail("duplicate unigram '" + words[0] + "'");
        }
        vocab.push_back(words[0]);
      }
      sections[n - 1].emplace_back(std::move(words), e);
    }
  }
  skip_blank();
  if (i >= lines.size() || Trim(lines[i]) != "\\end\\") {
    throw fail("expected \\end\\");
  }

  model.SetVocabulary(std::move(vocab));
  model.tables_.assign(declared.size(), {});
  for (std::size_t n = 0; n < sections.size(); ++n) {
    for (auto& [words, e] : sections[n]) {
      std::vector<int> key;
      for (const std::string& w : words) {
        const auto it = ids.find(w);
        if (it == ids.end()) {
          throw FormatError("ARPA n-gram uses word '" + w +
                            "' missing from the unigrams");
        }
        key.push_back(it->second);
      }
      if (!model.tables_[n].emplace(std::move(key), e).second) {
        throw FormatError("duplicate ARPA n-gram");
      }
    }
  }
  return model;
}

std::vector<Sentence> ParseSentences(std::string_view content) {
  std::vector<Sentence> out;
  for (std::string_view line : SplitLines(content)) {
    const auto toks = SplitWhitespace(line);
    if (toks.empty()) continue;
    out.emplace_back(toks.begin(), toks.end());
  }
  return out;
}

std::string_view SmoothingName(Smoothing s) {
  switch (s) {
    case Smoothing::kKneserNey: return "kn";
    case Smoothing::kModifiedKneserNey: return "mkn";
    case Smoothing::kAddK: return "addk";
  }
  return "";
}

Smoothing ParseSmoothing(std::string_view name) {
  for (Smoothing s : {Smoothing::kKneserNey, Smoothing::kModifiedKneserNey,
                      Smoothing::kAddK}) {
    if (ToLower(name) == SmoothingName(s)) return s;
  }
  throw FormatError("unknown smoothing '" + std::string(name) +
                    "' (kn, mkn, addk)");
}

}  // namespace sylattr
