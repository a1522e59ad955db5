// posterior.cc
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

#include "sylattr/posterior.h"

#include <cmath>

#include "sylattr/text.h"

namespace sylattr {

namespace {

constexpr int kDigits = 8;

bool HasAbsentMarker(Category c) {
  return c == Category::kHeight || c == Category::kBackness;
}

// Line cursor with position-aware errors.
class LineReader {
 public:
  explicit LineReader(std::string_view content) : lines_(SplitLines(content)) {}

  bool Done() {
    SkipBlank();
    return pos_ >= lines_.size();
  }
  // Caller must check Done() first.
  std::string_view Peek() {
    SkipBlank();
    return lines_[pos_];
  }
  std::string_view Next(const char* what) {
    SkipBlank();
    if (pos_ >= lines_.size()) {
      throw FormatError(std::string("unexpected end of file, expected ") +
                        what);
    }
    return lines_[pos_++];
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw FormatError("line " + std::to_string(pos_) + ": " + msg);
  }

 private:
  void SkipBlank() {
    while (pos_ < lines_.size() && Trim(lines_[pos_]).empty()) ++pos_;
  }
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

long long ExpectInt(const LineReader& r, std::string_view field,
                    const char* what) {
  long long v = 0;
  if (!ParseInt(field, &v) || v < 0) {
    r.Fail(std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> StreamLabels(Category c) {
  std::vector<std::string> labels;
  labels.emplace_back(kBlankLabel);
  for (std::string_view v : CategoryValues(c)) labels.emplace_back(v);
  if (HasAbsentMarker(c)) labels.emplace_back(kAbsentLabel);
  return labels;
}

int NumClasses(Category c) {
  return 1 + ValueCount(c) + (HasAbsentMarker(c) ? 1 : 0);
}

int AbsentClass(Category c) {
  return HasAbsentMarker(c) ? 1 + ValueCount(c) : -1;
}

CategoryStream MakeStream(Category c, int frames) {
  CategoryStream s;
  s.category = c;
  s.num_classes = NumClasses(c);
  s.probs.assign(static_cast<std::size_t>(frames) * s.num_classes, 0.0);
  return s;
}

const CategoryStream* PosteriorSet::Find(Category c) const {
  for (const CategoryStream& s : streams) {
    if (s.category == c) return &s;
  }
  return nullptr;
}

KnowledgeSource PosteriorSet::categories() const {
  std::vector<Category> cats;
  for (const CategoryStream& s : streams) cats.push_back(s.category);
  return KnowledgeSource(cats);
}

void ValidateStream(const CategoryStream& s) {
  const std::string name(CategoryName(s.category));
  if (s.num_classes != NumClasses(s.category)) {
    throw FormatError(name + " stream has " + std::to_string(s.num_classes) +
                      " classes, expected " +
                      std::to_string(NumClasses(s.category)));
  }
  if (s.probs.size() % s.num_classes != 0) {
    throw FormatError(name + " stream is not a whole number of frames");
  }
  for (int t = 0; t < s.num_frames(); ++t) {
    double sum = 0.0;
    for (double p : s.row(t)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw FormatError(name + " frame " + std::to_string(t) +
                          ": probability outside [0,1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw FormatError(name + " frame " + std::to_string(t) +
                        ": row sums to " + FormatSignificant(sum, 10));
    }
  }
}

void Validate(const PosteriorSet& set) {
  if (set.utterance_id.empty() ||
      set.utterance_id.find_first_of(" \t\r\n") != std::string::npos) {
    throw FormatError("bad utterance id '" + set.utterance_id + "'");
  }
  if (set.streams.empty()) {
    throw FormatError("utterance '" + set.utterance_id + "' has no streams");
  }
  int last = -1;
  for (const CategoryStream& s : set.streams) {
    const int c = static_cast<int>(s.category);
    if (c <= last) {
      throw FormatError("utterance '" + set.utterance_id +
                        "': streams must be unique and in canonical order");
    }
    last = c;
    ValidateStream(s);
    if (s.num_frames() != set.frame_count) {
      throw FormatError("utterance '" + set.utterance_id + "': " +
                        std::string(CategoryName(s.category)) + " stream has " +
                        std::to_string(s.num_frames()) + " frames, expected " +
                        std::to_string(set.frame_count));
    }
  }
}

std::vector<PosteriorSet> ReadPosteriors(std::string_view content) {
  LineReader r(content);
  {
    const auto header = SplitWhitespace(r.Next("header"));
    if (header.size() != 2 || header[0] != "APST") {
      r.Fail("bad magic, expected 'APST 1'");
    }
    if (header[1] != "1") {
      r.Fail("unsupported APST version '" + std::string(header[1]) + "'");
    }
  }
  std::vector<PosteriorSet> sets;
  while (!r.Done()) {
    const auto utt = SplitWhitespace(r.Next("utterance header"));
    if (utt.size() != 4 || utt[0] != "utt") {
      r.Fail("expected 'utt <id> <frames> <n_categories>'");
    }
    PosteriorSet set;
    set.utterance_id = std::string(utt[1]);
    set.frame_count = static_cast<int>(ExpectInt(r, utt[2], "frame count"));
    const long long n_cats = ExpectInt(r, utt[3], "category count");
    for (long long k = 0; k < n_cats; ++k) {
      const auto cat = SplitWhitespace(r.Next("category header"));
      if (cat.size() != 3 || cat[0] != "cat") {
        r.Fail("expected 'cat <name> <n_classes>'");
      }
      Category c = Category::kManner;
      try {
        c = ParseCategory(cat[1]);
      } catch (const FormatError& e) {
        r.Fail(e.what());
      }
      CategoryStream s = MakeStream(c, 0);
      const long long n_classes = ExpectInt(r, cat[2], "class count");
      if (n_classes != s.num_classes) {
        r.Fail(std::string(CategoryName(c)) + " needs " +
               std::to_string(s.num_classes) + " classes, header says " +
               std::to_string(n_classes));
      }
      const auto labels = SplitWhitespace(r.Next("class labels"));
      const auto expected = StreamLabels(c);
      if (labels.size() != expected.size()) {
        r.Fail("label line has " + std::to_string(labels.size()) +
               " labels, expected " + std::to_string(expected.size()));
      }
      for (std::size_t i = 0; i < labels.size(); ++i) {
        std::string got = ToLower(labels[i]);
        if (c == Category::kHeight && got == "semi-mid") got = "semi-low";
        if (got != expected[i]) {
          r.Fail("unknown or misplaced label '" + std::string(labels[i]) +
                 "' (expected '" + expected[i] + "')");
        }
      }
      // Frames run until the next header; the count is checked afterwards
      // so that a short stream is reported as a frame-count mismatch.
      std::vector<double> probs;
      while (!r.Done()) {
        const auto fields = SplitWhitespace(r.Peek());
        if (fields[0] == "cat" || fields[0] == "utt") break;
        r.Next("frame");
        if (static_cast<long long>(fields.size()) != n_classes) {
          r.Fail("frame has " + std::to_string(fields.size()) +
                 " values, expected " + std::to_string(n_classes));
        }
        for (std::string_view f : fields) {
          double p = 0.0;
          if (!ParseDouble(f, &p)) {
            r.Fail("bad probability '" + std::string(f) + "'");
          }
          probs.push_back(p);
        }
      }
      s.probs = std::move(probs);
      set.streams.push_back(std::move(s));
    }
    Validate(set);
    sets.push_back(std::move(set));
  }
  return sets;
}

std::string WritePosteriors(std::span<const PosteriorSet> sets) {
  std::string out = "APST 1\n";
  for (const PosteriorSet& set : sets) {
    Validate(set);
    out += "utt " + set.utterance_id + " " + std::to_string(set.frame_count) +
           " " + std::to_string(set.streams.size()) + "\n";
    for (const CategoryStream& s : set.streams) {
      out += "cat " + std::string(CategoryName(s.category)) + " " +
             std::to_string(s.num_classes) + "\n";
      out += Join(StreamLabels(s.category), " ") + "\n";
      for (int t = 0; t < s.num_frames(); ++t) {
        const auto row = s.row(t);
        for (int k = 0; k < s.num_classes; ++k) {
          if (k) out += ' ';
          out += FormatSignificant(row[k], kDigits);
        }
        out += '\n';
      }
    }
  }
  return out;
}

double QuantizeProbability(double p) {
  double q = 0.0;
  ParseDouble(FormatSignificant(p, kDigits), &q);
  return q;
}

}  // namespace sylattr
