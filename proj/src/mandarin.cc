// mandarin.cc
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

#include "sylattr/mandarin.h"

#include <algorithm>
#include <utility>

namespace sylattr::mandarin {

namespace {

using T = AttributeTuple;
using M = Manner;
using P = Place;
using V = Voicing;
using A = Aspiration;
using H = Height;
using B = Backness;

T Cons(M m, P p, V v, A a = A::kUnaspirated) {
  return T::Consonant(m, p, v, a);
}

struct InitialRow {
  std::string_view name;
  T segment;
};

const std::vector<InitialRow>& InitialTable() {
  static const std::vector<InitialRow> table = {
      {"b", Cons(M::kStop, P::kBilabial, V::kVoiceless)},
      {"p", Cons(M::kStop, P::kBilabial, V::kVoiceless, A::kAspirated)},
      {"m", Cons(M::kNasal, P::kBilabial, V::kVoiced)},
      {"f", Cons(M::kFricative, P::kLabiodental, V::kVoiceless)},
      {"d", Cons(M::kStop, P::kAlveolar, V::kVoiceless)},
      {"t", Cons(M::kStop, P::kAlveolar, V::kVoiceless, A::kAspirated)},
      {"n", Cons(M::kNasal, P::kAlveolar, V::kVoiced)},
      {"l", Cons(M::kApproximant, P::kAlveolar, V::kVoiced)},
      {"g", Cons(M::kStop, P::kVelar, V::kVoiceless)},
      {"k", Cons(M::kStop, P::kVelar, V::kVoiceless, A::kAspirated)},
      {"h", Cons(M::kFricative, P::kVelar, V::kVoiceless)},
      {"j", Cons(M::kAffricate, P::kAlveoloPalatal, V::kVoiceless)},
      {"q", Cons(M::kAffricate, P::kAlveoloPalatal, V::kVoiceless,
                 A::kAspirated)},
      {"x", Cons(M::kFricative, P::kAlveoloPalatal, V::kVoiceless)},
      {"zh", Cons(M::kAffricate, P::kRetroflex, V::kVoiceless)},
      {"ch", Cons(M::kAffricate, P::kRetroflex, V::kVoiceless,
                  A::kAspirated)},
      {"sh", Cons(M::kFricative, P::kRetroflex, V::kVoiceless)},
      {"r", Cons(M::kFricative, P::kRetroflex, V::kVoiced)},
      {"z", Cons(M::kAffricate, P::kAlveolar, V::kVoiceless)},
      {"c", Cons(M::kAffricate, P::kAlveolar, V::kVoiceless, A::kAspirated)},
      {"s", Cons(M::kFricative, P::kAlveolar, V::kVoiceless)},
      // Zero-initial onsets.
      {"y", Cons(M::kApproximant, P::kPalatal, V::kVoiced)},
      {"w", Cons(M::kApproximant, P::kVelar, V::kVoiced)},
      {"'", Cons(M::kStop, P::kGlottal, V::kVoiceless)},
  };
  return table;
}

struct FinalRow {
  std::string_view name;
  std::vector<T> segments;
};

const std::vector<FinalRow>& FinalTable() {
  // Vowel qualities. The letter a has four realizations depending on its
  // neighbours; "e" has three.
  const T i = T::Vowel(H::kHigh, B::kFront);
  const T v = T::Vowel(H::kHigh, B::kFront);  // rounding is not an attribute
  const T u = T::Vowel(H::kHigh, B::kBack);
  const T apical = T::Vowel(H::kHigh, B::kCentral);
  const T a = T::Vowel(H::kLow, B::kCentral);
  const T a_front = T::Vowel(H::kLow, B::kFront);
  const T a_back = T::Vowel(H::kLow, B::kBack);
  const T open_e = T::Vowel(H::kLowerMid, B::kFront);
  const T close_e = T::Vowel(H::kUpperMid, B::kFront);
  const T back_e = T::Vowel(H::kUpperMid, B::kBack);
  const T o = T::Vowel(H::kUpperMid, B::kBack);
  const T schwa = T::Vowel(H::kMid, B::kCentral);
  const T lax_u = T::Vowel(H::kSemiHigh, B::kBack);
  const T n = Cons(M::kNasal, P::kAlveolar, V::kVoiced);
  const T ng = Cons(M::kNasal, P::kVelar, V::kVoiced);
  const T rhotic = Cons(M::kApproximant, P::kRetroflex, V::kVoiced);

  static const std::vector<FinalRow> table = {
      {"a", {a}},
      {"o", {o}},
      {"e", {back_e}},
      {"ai", {a_front, i}},
      {"ei", {close_e, i}},
      {"ao", {a_back, u}},
      {"ou", {o, u}},
      {"an", {a_front, n}},
      {"en", {schwa, n}},
      {"ang", {a_back, ng}},
      {"eng", {schwa, ng}},
      {"ong", {lax_u, ng}},
      {"er", {schwa, rhotic}},
      {"i", {i}},
      {"ii", {apical}},
      {"ia", {i, a}},
      {"ie", {i, open_e}},
      {"iao", {i, a_back, u}},
      {"iou", {i, o, u}},
      {"ian", {i, open_e, n}},
      {"in", {i, n}},
      {"iang", {i, a_back, ng}},
      {"ing", {i, ng}},
      {"iong", {i, lax_u, ng}},
      {"u", {u}},
      {"ua", {u, a}},
      {"uo", {u, o}},
      {"uai", {u, a_front, i}},
      {"uei", {u, close_e, i}},
      {"uan", {u, a_front, n}},
      {"uen", {u, schwa, n}},
      {"uang", {u, a_back, ng}},
      {"ueng", {u, schwa, ng}},
      {"v", {v}},
      {"ve", {v, open_e}},
      {"van", {v, open_e, n}},
      {"vn", {v, n}},
  };
  return table;
}

std::vector<std::string_view> Names(const auto& table) {
  std::vector<std::string_view> out;
  for (const auto& row : table) out.push_back(row.name);
  return out;
}

constexpr std::string_view kSeed[] = {
    // zero initial
    "a", "ai", "an", "ang", "ao", "e", "ei", "en", "eng", "er", "o", "ou",
    "yi", "ya", "ye", "yao", "you", "yan", "yin", "yang", "ying", "yong",
    "yu", "yue", "yuan", "yun",
    "wu", "wa", "wo", "wai", "wei", "wan", "wen", "wang", "weng",
    // b p m f
    "ba", "bo", "bai", "bei", "bao", "ban", "ben", "bang", "beng", "bi",
    "bie", "biao", "bian", "bin", "bing", "bu",
    "pa", "po", "pai", "pei", "pao", "pou", "pan", "pen", "pang", "peng",
    "pi", "pie", "piao", "pian", "pin", "ping", "pu",
    "ma", "mo", "me", "mai", "mei", "mao", "mou", "man", "men", "mang",
    "meng", "mi", "mie", "miao", "miu", "mian", "min", "ming", "mu",
    "fa", "fo", "fei", "fou", "fan", "fen", "fang", "feng", "fu",
    // d t n l
    "da", "de", "dai", "dei", "dao", "dou", "dan", "den", "dang", "deng",
    "dong", "di", "dia", "die", "diao", "diu", "dian", "ding", "du", "duo", "dui",
    "duan", "dun",
    "ta", "te", "tai", "tao", "tou", "tan", "tang", "teng", "tong", "ti",
    "tie", "tiao", "tian", "ting", "tu", "tuo", "tui", "tuan", "tun",
    "na", "ne", "nai", "nei", "nao", "nou", "nan", "nen", "nang", "neng",
    "nong", "ni", "nie", "niao", "niu", "nian", "nin", "niang", "ning", "nu",
    "nuo", "nuan", "nv", "nve",
    "la", "lo", "le", "lai", "lei", "lao", "lou", "lan", "lang", "leng", "long",
    "li", "lia", "lie", "liao", "liu", "lian", "lin", "liang", "ling", "lu",
    "luo", "luan", "lun", "lv", "lve",
    // g k h
    "ga", "ge", "gai", "gei", "gao", "gou", "gan", "gen", "gang", "geng",
    "gong", "gu", "gua", "guo", "guai", "gui", "guan", "gun", "guang",
    "ka", "ke", "kai", "kei", "kao", "kou", "kan", "ken", "kang", "keng", "kong",
    "ku", "kua", "kuo", "kuai", "kui", "kuan", "kun", "kuang",
    "ha", "he", "hai", "hei", "hao", "hou", "han", "hen", "hang", "heng",
    "hong", "hu", "hua", "huo", "huai", "hui", "huan", "hun", "huang",
    // j q x
    "ji", "jia", "jie", "jiao", "jiu", "jian", "jin", "jiang", "jing",
    "jiong", "ju", "jue", "juan", "jun",
    "qi", "qia", "qie", "qiao", "qiu", "qian", "qin", "qiang", "qing",
    "qiong", "qu", "que", "quan", "qun",
    "xi", "xia", "xie", "xiao", "xiu", "xian", "xin", "xiang", "xing",
    "xiong", "xu", "xue", "xuan", "xun",
    // zh ch sh r
    "zha", "zhe", "zhi", "zhai", "zhei", "zhao", "zhou", "zhan", "zhen",
    "zhang", "zheng", "zhong", "zhu", "zhua", "zhuo", "zhuai", "zhui",
    "zhuan", "zhun", "zhuang",
    "cha", "che", "chi", "chai", "chao", "chou", "chan", "chen", "chang",
    "cheng", "chong", "chu", "chuo", "chuai", "chui", "chuan", "chun",
    "chuang",
    "sha", "she", "shi", "shai", "shei", "shao", "shou", "shan", "shen",
    "shang", "sheng", "shu", "shua", "shuo", "shuai", "shui", "shuan", "shun",
    "shuang",
    "re", "ri", "rao", "rou", "ran", "ren", "rang", "reng", "rong", "ru", "rua",
    "ruo", "rui", "ruan", "run",
    // z c s
    "za", "ze", "zi", "zai", "zei", "zao", "zou", "zan", "zen", "zang",
    "zeng", "zong", "zu", "zuo", "zui", "zuan", "zun",
    "ca", "ce", "ci", "cai", "cao", "cou", "can", "cen", "cang", "ceng",
    "cong", "cu", "cuo", "cui", "cuan", "cun",
    "sa", "se", "si", "sai", "sao", "sou", "san", "sen", "sang", "seng",
    "song", "su", "suo", "sui", "suan", "sun",
};

}  // namespace

std::span<const std::string_view> Initials() {
  static const std::vector<std::string_view> names = Names(InitialTable());
  return names;
}

std::span<const std::string_view> Finals() {
  static const std::vector<std::string_view> names = Names(FinalTable());
  return names;
}

std::vector<AttributeTuple> InitialSegments(std::string_view initial) {
  for (const auto& row : InitialTable()) {
    if (row.name == initial) return {row.segment};
  }
  throw FormatError("unknown Mandarin initial '" + std::string(initial) + "'");
}

std::vector<AttributeTuple> FinalSegments(std::string_view final) {
  for (const auto& row : FinalTable()) {
    if (row.name == final) return row.segments;
  }
  throw FormatError("unknown Mandarin final '" + std::string(final) + "'");
}

std::vector<AttributeTuple> Compose(std::optional<std::string_view> initial,
                                    std::string_view final) {
  std::vector<AttributeTuple> out;
  if (initial) out = InitialSegments(*initial);
  const auto tail = FinalSegments(final);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Spelling Decompose(std::string_view pinyin) {
  Spelling s;
  s.syllable = std::string(pinyin);
  std::string_view rest = pinyin;
  if (rest.empty()) throw FormatError("empty pinyin syllable");

  const char head = rest.front();
  if (head == 'y') {
    rest.remove_prefix(1);
    s.initial = "y";
    if (rest.starts_with("u")) {
      s.final = "v" + std::string(rest.substr(1));
    } else if (rest.starts_with("i")) {
      s.final = std::string(rest);
    } else {
      s.final = "i" + std::string(rest);
    }
  } else if (head == 'w') {
    rest.remove_prefix(1);
    s.initial = "w";
    s.final = rest == "u" ? "u" : "u" + std::string(rest);
  } else if (head == 'a' || head == 'o' || head == 'e') {
    s.initial = "'";
    s.final = std::string(rest);
  } else {
    for (std::string_view two : {"zh", "ch", "sh"}) {
      if (rest.starts_with(two)) s.initial = std::string(two);
    }
    if (s.initial.empty()) s.initial = std::string(1, head);
    rest.remove_prefix(s.initial.size());
    std::string fin(rest);
    const bool palatal =
        s.initial == "j" || s.initial == "q" || s.initial == "x";
    const bool sibilant = s.initial == "z" || s.initial == "c" ||
                          s.initial == "s" || s.initial == "zh" ||
                          s.initial == "ch" || s.initial == "sh" ||
                          s.initial == "r";
    if (palatal && fin.starts_with("u")) {
      fin = "v" + fin.substr(1);
    } else if (sibilant && fin == "i") {
      fin = "ii";
    } else if (fin == "iu") {
      fin = "iou";
    } else if (fin == "ui") {
      fin = "uei";
    } else if (fin == "un") {
      fin = "uen";
    }
    s.final = fin;
  }
  InitialSegments(s.initial);
  FinalSegments(s.final);
  return s;
}

std::span<const std::string_view> SeedSyllables() { return kSeed; }

Lexicon SeedLexicon() {
  std::vector<LexiconEntry> entries;
  entries.reserve(std::size(kSeed));
  for (std::string_view syl : kSeed) {
    const Spelling sp = Decompose(syl);
    entries.push_back({sp.syllable, Compose(sp.initial, sp.final)});
  }
  return Lexicon("mandarin", std::move(entries));
}

}  // namespace sylattr::mandarin
