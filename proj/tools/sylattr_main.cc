// sylattr_main.cc
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
// Command-line front end. Exit codes: 0 success, 1 usage, 2 input or format
// error, 3 decoding or scoring failure.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sylattr/batch.h"
#include "sylattr/corpus.h"
#include "sylattr/decoder.h"
#include "sylattr/japanese.h"
#include "sylattr/lexicon.h"
#include "sylattr/mandarin.h"
#include "sylattr/metrics.h"
#include "sylattr/ngram.h"
#include "sylattr/posterior.h"
#include "sylattr/synth.h"
#include "sylattr/text.h"

namespace {

using namespace sylattr;

constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitRuntime = 3;

void Emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    WriteFile(path, content);
  }
}

std::vector<KnowledgeSource> ParseKsList(const std::vector<std::string>& specs) {
  std::vector<KnowledgeSource> out;
  for (const std::string& s : specs) out.push_back(KnowledgeSource::Parse(s));
  return out;
}

struct DecoderFlags {
  int beam = DecoderOptions().beam;
  double lm_weight = DecoderOptions().lm_weight;
  double insertion_bonus = DecoderOptions().insertion_bonus;
  int nbest = DecoderOptions().nbest;

  void Register(CLI::App* app) {
    app->add_option("--beam", beam, "Beam width")->capture_default_str();
    app->add_option("--lm-weight", lm_weight, "Language model weight")
        ->capture_default_str();
    app->add_option("--insertion-bonus", insertion_bonus,
                    "Score added per syllable")
        ->capture_default_str();
    app->add_option("--nbest", nbest, "Hypotheses kept per utterance")
        ->capture_default_str();
  }
  DecoderOptions Options() const {
    return {beam, lm_weight, insertion_bonus, nbest};
  }
};

struct SynthFlags {
  int frames_per_segment = SynthConfig().frames_per_segment;
  int blank_frames = SynthConfig().blank_frames_between;
  double noise = 0.0;
  std::vector<std::string> category_noise;
  std::uint64_t seed = 0;

  void Register(CLI::App* app) {
    app->add_option("--frames-per-segment", frames_per_segment, "Frames per segment")
        ->capture_default_str();
    app->add_option("--blank-frames", blank_frames,
                    "Blank frames between segments")
        ->capture_default_str();
    app->add_option("--noise", noise, "Corruption probability for every category")
        ->capture_default_str();
    app->add_option("--category-noise", category_noise,
                    "Per-category override, e.g. H=0.2");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }
  SynthConfig Config() const {
    SynthConfig c;
    c.frames_per_segment = frames_per_segment;
    c.blank_frames_between = blank_frames;
    c.SetNoise(noise);
    c.seed = seed;
    for (const std::string& item : category_noise) {
      const auto parts = Split(item, '=');
      double eps = 0.0;
      if (parts.size() != 2 || !ParseDouble(parts[1], &eps)) {
        throw FormatError("bad --category-noise '" + item + "'");
      }
      c.noise[static_cast<int>(ParseCategory(parts[0]))] = eps;
    }
    c.Validate();
    return c;
  }
};

std::optional<NGramModel> MaybeLoadLm(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return ReadArpa(ReadFile(path));
}

// lexicon -------------------------------------------------------------------

int LexiconValidate(const std::string& path) {
  const Lexicon lex = LoadLexicon(path);
  std::cout << "ok\t" << lex.size() << " syllables";
  if (!lex.language().empty()) std::cout << "\t" << lex.language();
  std::cout << "\n";
  return 0;
}

int LexiconHomonyms(const std::string& path, const std::string& ks_spec,
                    int min_size, const std::string& output) {
  const Lexicon lex = LoadLexicon(path);
  const HomonymIndex index(lex, KnowledgeSource::Parse(ks_spec));
  std::vector<const std::vector<std::string>*> classes;
  for (const auto& c : index.classes()) {
    if (static_cast<int>(c.size()) >= min_size) classes.push_back(&c);
  }
  std::stable_sort(classes.begin(), classes.end(), [](auto* a, auto* b) {
    if (a->size() != b->size()) return a->size() > b->size();
    return a->front() < b->front();
  });
  std::string out = "# " + index.knowledge_source().ToString() + "\t" +
                    std::to_string(index.num_classes()) + " classes\n";
  for (const auto* c : classes) {
    out += std::to_string(c->size()) + "\t" + Join(*c, " ") + "\n";
  }
  Emit(output, out);
  return 0;
}

int LexiconMap(const std::string& path, const std::string& ks_spec,
               const std::vector<std::string>& syllables) {
  const Lexicon lex = LoadLexicon(path);
  const KnowledgeSource ks = KnowledgeSource::Parse(ks_spec);
  for (const std::string& s : syllables) {
    std::cout << FormatProjected(SyllableToAttributes(lex, s, ks)) << "\n";
  }
  return 0;
}

int LexiconSeed(const std::string& language, const std::string& output) {
  const std::string lang = ToLower(language);
  Lexicon lex;
  if (lang == "mandarin") {
    lex = mandarin::SeedLexicon();
  } else if (lang == "japanese") {
    lex = japanese::SeedLexicon();
  } else {
    throw FormatError("unknown seed language '" + language +
                      "' (mandarin, japanese)");
  }
  Emit(output, FormatLexicon(lex));
  return 0;
}

// lm ------------------------------------------------------------------------

int LmTrain(const std::string& corpus_path, const LmTrainOptions& options,
            const std::string& output) {
  const auto corpus = ParseSentences(ReadFile(corpus_path));
  const NGramModel model = TrainNGram(corpus, options);
  if (model.smoothing() != options.smoothing) {
    std::cerr << "note: counts of counts too sparse, used "
              << SmoothingName(model.smoothing()) << " smoothing\n";
  }
  Emit(output, WriteArpa(model));
  return 0;
}

int LmPerplexity(const std::string& lm_path, const std::string& corpus_path) {
  const NGramModel model = ReadArpa(ReadFile(lm_path));
  const auto corpus = ParseSentences(ReadFile(corpus_path));
  std::cout << "perplexity\t" << FormatDouble(Perplexity(model, corpus))
            << "\n";
  return 0;
}

int LmScore(const std::string& lm_path, const std::string& corpus_path,
            const std::string& output) {
  const NGramModel model = ReadArpa(ReadFile(lm_path));
  std::string out;
  for (const Sentence& s : ParseSentences(ReadFile(corpus_path))) {
    out += FormatDouble(ScoreSentence(model, s)) + "\t" + Join(s, " ") + "\n";
  }
  Emit(output, out);
  return 0;
}

// decode --------------------------------------------------------------------

int Decode(const std::string& posteriors_path, const std::string& lexicon_path,
           const std::string& ks_spec, const std::string& lm_path,
           const DecoderOptions& options, bool rescore, int jobs,
           const std::string& output, const std::string& nbest_output) {
  const Lexicon lex = LoadLexicon(lexicon_path);
  const KnowledgeSource ks = KnowledgeSource::Parse(ks_spec);
  const auto lm = MaybeLoadLm(lm_path);
  const auto sets = ReadPosteriors(ReadFile(posteriors_path));
  if (rescore && !lm) throw FormatError("--rescore needs --lm");

  DecoderOptions search = options;
  if (rescore) search.lm_weight = 0.0;
  const Decoder decoder(lex, ks, lm ? &*lm : nullptr, search);
  std::vector<DecodeOutcome> results = DecodeCorpus(decoder, sets, jobs);

  int status = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok()) continue;
    std::cerr << "error: " << results[i].error << "\n";
    status = std::max(status, results[i].format_error ? kExitFormat
                                                      : kExitRuntime);
  }
  if (status != 0) return status;

  std::string hyps, nbest;
  for (std::size_t i = 0; i < results.size(); ++i) {
    NBestList list = results[i].nbest;
    if (rescore) {
      list = RescoreNBest(ExpandHomonyms(list, decoder.homonyms()), &*lm,
                          options.lm_weight, options.insertion_bonus);
      if (list.size() > static_cast<std::size_t>(options.nbest)) {
        list.resize(options.nbest);
      }
    }
    const std::string& id = sets[i].utterance_id;
    hyps += id + "\t" + Join(list.front().syllables, " ") + "\n";
    for (std::size_t r = 0; r < list.size(); ++r) {
      const Hypothesis& h = list[r];
      nbest += id + "\t" + std::to_string(r + 1) + "\t" +
               FormatSignificant(h.score, 12) + "\t" +
               FormatSignificant(h.acoustic, 12) + "\t" +
               FormatSignificant(h.lm, 12) + "\t" + Join(h.syllables, " ") +
               "\n";
    }
  }
  Emit(output, hyps);
  if (!nbest_output.empty()) Emit(nbest_output, nbest);
  return 0;
}

// score ---------------------------------------------------------------------

int Score(const std::string& ref_path, const std::string& hyp_path,
          const std::string& lexicon_path, const std::string& metrics_spec,
          const std::string& ks_spec, const std::vector<std::string>& prer,
          const std::string& format, int jobs, const std::string& output) {
  const auto refs = ParseCorpus(ReadFile(ref_path));
  const auto hyps = MatchById(refs, ParseCorpus(ReadFile(hyp_path)));
  std::optional<Lexicon> lex;
  if (!lexicon_path.empty()) lex = LoadLexicon(lexicon_path);

  ScoreRequest request;
  request.ser = false;
  std::optional<KnowledgeSource> ks;
  if (!ks_spec.empty()) ks = KnowledgeSource::Parse(ks_spec);
  for (std::string_view m : Split(metrics_spec, ',')) {
    const std::string name = ToLower(Trim(m));
    if (name == "ser") {
      request.ser = true;
    } else if (name == "sher" || name == "prer") {
      if (!ks) throw FormatError(name + " needs --ks");
      if (name == "sher") {
        request.sher.push_back(*ks);
      } else if (prer.empty()) {
        request.prer.push_back(*ks);
        if (ks->size() > 1) {
          for (Category c : ks->categories()) {
            const Category one[] = {c};
            request.prer.emplace_back(one);
          }
        }
      }
    } else {
      throw FormatError("unknown metric '" + name + "' (ser, sher, prer)");
    }
  }
  for (const KnowledgeSource& p : ParseKsList(prer)) request.prer.push_back(p);
  if ((!request.sher.empty() || !request.prer.empty()) && !lex) {
    throw FormatError("sher and prer need --lexicon");
  }

  std::vector<std::string> ids;
  std::vector<TokenSeq> ref_tokens, hyp_tokens;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ids.push_back(refs[i].id);
    ref_tokens.push_back(refs[i].tokens);
    hyp_tokens.push_back(hyps[i].tokens);
  }
  const ScoreReport report = ScoreCorpusParallel(
      ids, ref_tokens, hyp_tokens, lex ? &*lex : nullptr, request, jobs);
  Emit(output, format == "tsv" ? FormatReportTsv(report) : FormatReport(report));
  return 0;
}

// synth / experiment --------------------------------------------------------

int Synth(const std::string& corpus_path, const std::string& lexicon_path,
          const std::string& ks_spec, const SynthConfig& config, int jobs,
          const std::string& output) {
  const Lexicon lex = LoadLexicon(lexicon_path);
  const KnowledgeSource ks = KnowledgeSource::Parse(ks_spec);
  const auto refs = ParseCorpus(ReadFile(corpus_path));
  Emit(output, WritePosteriors(SynthesizeCorpus(refs, lex, ks, config, jobs)));
  return 0;
}

int Experiment(const std::string& corpus_path, const std::string& lexicon_path,
               const std::vector<std::string>& ks_specs,
               const std::string& lm_path, const SynthConfig& config,
               const DecoderOptions& options, int jobs,
               const std::string& output) {
  const Lexicon lex = LoadLexicon(lexicon_path);
  const auto ks_list = ParseKsList(ks_specs);
  const auto lm = MaybeLoadLm(lm_path);
  const auto refs = ParseCorpus(ReadFile(corpus_path));
  const ExperimentReport report = RunExperiment(
      refs, lex, ks_list, config, options, lm ? &*lm : nullptr, jobs);
  Emit(output, report.ToString());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syllable recognition from articulatory attribute posteriors"};
  app.require_subcommand(1);

  std::string lexicon_path, ks_spec, output, lm_path, corpus_path;
  int jobs = 0;
  const auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "Worker threads (0 = OpenMP default)")
        ->capture_default_str();
  };
  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output,-o", output, "Output file (default stdout)");
  };

  // lexicon
  auto* lexicon = app.add_subcommand("lexicon", "Lexicon tools");
  lexicon->require_subcommand(1);
  auto* lex_validate = lexicon->add_subcommand("validate", "Validate a lexicon");
  lex_validate->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  auto* lex_homonyms =
      lexicon->add_subcommand("homonyms", "List homonym classes");
  int min_size = 1;
  lex_homonyms->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  lex_homonyms->add_option("--ks", ks_spec, "Knowledge source, e.g. M+P+H")
      ->required();
  lex_homonyms->add_option("--min-size", min_size, "Smallest class shown")
      ->capture_default_str();
  add_output(lex_homonyms);
  auto* lex_map = lexicon->add_subcommand("map", "Map syllables to attributes");
  std::vector<std::string> syllables;
  lex_map->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  lex_map->add_option("--ks", ks_spec, "Knowledge source, e.g. M+P+H")->required();
  lex_map->add_option("syllables", syllables, "Syllables to map")->required();
  auto* lex_seed = lexicon->add_subcommand("seed", "Print a built-in lexicon");
  std::string language;
  lex_seed->add_option("language", language, "mandarin or japanese")
      ->required();
  add_output(lex_seed);

  // lm
  auto* lm = app.add_subcommand("lm", "Syllable n-gram language models");
  lm->require_subcommand(1);
  auto* lm_train = lm->add_subcommand("train", "Train an ARPA model");
  LmTrainOptions lm_options;
  std::string smoothing = "kn";
  lm_train->add_option("--corpus", corpus_path, "One sentence per line")
      ->required();
  lm_train->add_option("--order", lm_options.order)->capture_default_str();
  lm_train->add_option("--smoothing", smoothing, "kn, mkn or addk")
      ->capture_default_str();
  lm_train->add_option("--discount", lm_options.discount)
      ->capture_default_str();
  lm_train->add_option("--add-k", lm_options.add_k)->capture_default_str();
  add_output(lm_train);
  auto* lm_ppl = lm->add_subcommand("perplexity", "Corpus perplexity");
  lm_ppl->add_option("--lm", lm_path, "ARPA model")->required();
  lm_ppl->add_option("--corpus", corpus_path, "Corpus file")->required();
  auto* lm_score = lm->add_subcommand("score", "Per-sentence log-probability");
  lm_score->add_option("--lm", lm_path, "ARPA model")->required();
  lm_score->add_option("--corpus", corpus_path, "Corpus file")->required();
  add_output(lm_score);

  // decode
  auto* decode = app.add_subcommand("decode", "Decode posteriors to syllables");
  std::string posteriors_path, nbest_output;
  bool rescore = false;
  DecoderFlags decoder_flags;
  decode->add_option("--posteriors", posteriors_path, "APST file")->required();
  decode->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  decode->add_option("--ks", ks_spec, "Knowledge source, e.g. M+P+H")->required();
  decode->add_option("--lm", lm_path, "ARPA model");
  decode->add_flag("--rescore", rescore,
                   "Apply the LM to the n-best list after search instead of "
                   "during it");
  decode->add_option("--nbest-output", nbest_output, "N-best list file");
  decoder_flags.Register(decode);
  add_jobs(decode);
  add_output(decode);

  // score
  auto* score = app.add_subcommand("score", "SER, SHER and PrER");
  std::string ref_path, hyp_path, metrics = "ser", format = "text";
  std::vector<std::string> prer;
  score->add_option("--ref", ref_path, "Reference corpus (id<TAB>syllables)")->required();
  score->add_option("--hyp", hyp_path, "Hypothesis corpus")->required();
  score->add_option("--lexicon", lexicon_path, "Lexicon TSV");
  score->add_option("--metrics", metrics, "Comma list of ser, sher, prer")
      ->capture_default_str();
  score->add_option("--ks", ks_spec, "Knowledge source for sher and prer");
  score->add_option("--prer", prer, "Category sets for prer (repeatable)");
  score->add_option("--format", format)
      ->check(CLI::IsMember({"text", "tsv"}))
      ->capture_default_str();
  add_jobs(score);
  add_output(score);

  // synth
  auto* synth = app.add_subcommand("synth", "Synthesize posteriors");
  SynthFlags synth_flags;
  synth->add_option("--corpus", corpus_path, "Reference corpus")->required();
  synth->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  synth->add_option("--ks", ks_spec, "Knowledge source, e.g. M+P+H")->required();
  synth_flags.Register(synth);
  add_jobs(synth);
  add_output(synth);

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "Synthesize, decode and score");
  std::vector<std::string> ks_specs;
  experiment->add_option("--corpus", corpus_path, "Corpus file")->required();
  experiment->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  experiment->add_option("--ks", ks_specs, "Knowledge sources (repeatable)")
      ->required();
  experiment->add_option("--lm", lm_path, "ARPA model");
  synth_flags.Register(experiment);
  decoder_flags.Register(experiment);
  add_jobs(experiment);
  add_output(experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (lex_validate->parsed()) return LexiconValidate(lexicon_path);
    if (lex_homonyms->parsed()) {
      return LexiconHomonyms(lexicon_path, ks_spec, min_size, output);
    }
    if (lex_map->parsed()) return LexiconMap(lexicon_path, ks_spec, syllables);
    if (lex_seed->parsed()) return LexiconSeed(language, output);
    if (lm_train->parsed()) {
      lm_options.smoothing = ParseSmoothing(smoothing);
      return LmTrain(corpus_path, lm_options, output);
    }
    if (lm_ppl->parsed()) return LmPerplexity(lm_path, corpus_path);
    if (lm_score->parsed()) return LmScore(lm_path, corpus_path, output);
    if (decode->parsed()) {
      return Decode(posteriors_path, lexicon_path, ks_spec, lm_path,
                    decoder_flags.Options(), rescore, jobs, output,
                    nbest_output);
    }
    if (score->parsed()) {
      return Score(ref_path, hyp_path, lexicon_path, metrics, ks_spec, prer,
                   format, jobs, output);
    }
    if (synth->parsed()) {
      return Synth(corpus_path, lexicon_path, ks_spec, synth_flags.Config(),
                   jobs, output);
    }
    if (experiment->parsed()) {
      return Experiment(corpus_path, lexicon_path, ks_specs, lm_path,
                        synth_flags.Config(), decoder_flags.Options(), jobs,
                        output);
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const RuntimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
