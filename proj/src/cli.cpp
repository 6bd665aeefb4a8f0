#include "punforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "punforge/config.hpp"
#include "punforge/corpus.hpp"
#include "punforge/errors.hpp"
#include "punforge/generator.hpp"
#include "punforge/kao.hpp"
#include "punforge/ngram_lm.hpp"
#include "punforge/retrieval.hpp"
#include "punforge/skipgram.hpp"
#include "punforge/stats.hpp"
#include "punforge/surprisal.hpp"
#include "punforge/wordnet.hpp"

namespace punforge::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Subcommand {
  std::string name;
  std::string description;
  std::vector<std::string> fields;
  std::vector<std::string> required;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<std::string> corpus_opts = {"line_mode", "pretagged", "min_count"};
  auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  static const std::vector<Subcommand> list = {
      {"index", "Ingest a corpus and write the PGC1 container with its inverted index",
       with({"corpus", "out", "vocab_out", "wordnet"}, corpus_opts), {"corpus", "out"}},
      {"train-lm", "Train the Kneser-Ney language model",
       with({"corpus", "out", "order"}, corpus_opts), {"corpus", "out"}},
      {"train-skipgram", "Train the distant skip-gram model",
       with({"corpus", "out", "text_out", "dim", "d1", "d2", "epochs", "negatives", "step_size",
             "seed"},
            corpus_opts),
       {"corpus", "out"}},
      {"score", "Score JSON-lines pun records",
       with({"corpus", "lm", "skipgram", "input", "out", "window"}, corpus_opts),
       {"corpus", "lm"}},
      {"generate", "Generate puns for pun/alternative word pairs",
       with({"pairs", "corpus", "lm", "skipgram", "wordnet", "out", "rerank_surprisal",
             "max_outputs", "topic_k", "threshold", "pool", "keep", "window",
             "absolute_position", "swap_only"},
            corpus_opts),
       {"pairs", "corpus", "lm"}},
      {"correlate", "Spearman correlation of metrics with z-scored human ratings",
       {"ratings", "scores", "out", "permutations", "seed", "min_corr"}, {"ratings", "scores"}},
  };
  return list;
}

std::string get_field_text(const RunConfig& c, const std::string& name) {
  // Only string fields are ever required.
  static const std::map<std::string, std::string RunConfig::*> strings = {
      {"corpus", &RunConfig::corpus},   {"lm", &RunConfig::lm},
      {"skipgram", &RunConfig::skipgram}, {"wordnet", &RunConfig::wordnet},
      {"pairs", &RunConfig::pairs},     {"ratings", &RunConfig::ratings},
      {"scores", &RunConfig::scores},   {"out", &RunConfig::out}};
  auto it = strings.find(name);
  return it == strings.end() ? std::string() : c.*(it->second);
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err, int verbosity) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("punforge", sink);
  log->set_pattern("%Y-%m-%dT%H:%M:%S.%e level=%l %v");
  log->set_level(verbosity <= 0   ? spdlog::level::warn
                 : verbosity == 1 ? spdlog::level::info
                                  : spdlog::level::debug);
  return log;
}

// ---- resource loading ------------------------------------------------------

struct CorpusBundle {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<Sentence> sentences;
  Sections extra;
};

CorpusBundle load_any_corpus(const RunConfig& c) {
  CorpusBundle b;
  if (is_corpus_file(c.corpus)) {
    auto loaded = load_corpus(c.corpus);
    b.vocab = std::make_shared<const Vocabulary>(std::move(loaded.corpus.vocab));
    b.sentences = std::move(loaded.corpus.sentences);
    b.extra = std::move(loaded.extra);
    return b;
  }
  std::ifstream in(c.corpus, std::ios::binary);
  if (!in) throw Error("cannot open corpus " + c.corpus);
  IngestOptions opts{c.min_count, c.line_mode};
  Corpus corpus = c.pretagged ? ingest_pretagged(in, opts) : ingest(in, opts);
  b.vocab = std::make_shared<const Vocabulary>(std::move(corpus.vocab));
  b.sentences = std::move(corpus.sentences);
  return b;
}

std::string wordnet_dir(const RunConfig& c) {
  if (!c.wordnet.empty()) return c.wordnet;
  if (auto env = wordnet_dir_from_env()) return env->string();
  return "";
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

Json report_json(const SurprisalReport& r) {
  Json j;
  j["s_local"] = r.s_local;
  j["s_global"] = r.s_global;
  j["s_ratio"] = r.s_ratio;
  j["unusualness"] = r.unusualness;
  j["degenerate"] = r.degenerate;
  return j;
}

Json token_json(const Token& t) {
  return Json{{"surface", t.surface}, {"pos", std::string(to_string(t.pos))}};
}

// ---- subcommands -----------------------------------------------------------

int cmd_index(const RunConfig& c, std::ostream&, spdlog::logger& log) {
  auto bundle = load_any_corpus(c);
  const auto wn = wordnet_dir(c);
  if (!wn.empty() && !c.pretagged) {
    const auto lexicon = SynsetGraph::load(wn).lexicon();
    for (auto& s : bundle.sentences) s = tag(std::move(s), lexicon);
  } else if (!c.pretagged) {
    const TagLexicon closed;
    for (auto& s : bundle.sentences) s = tag(std::move(s), closed);
  }
  const auto index = InvertedIndex::build(bundle.sentences, *bundle.vocab);
  Corpus corpus{std::move(bundle.sentences), *bundle.vocab};
  save_corpus(c.out, corpus, {{"PGIX", index.serialize()}});
  const auto vocab_path = c.vocab_out.empty() ? c.out + ".vocab.tsv" : c.vocab_out;
  std::ofstream vout(vocab_path);
  if (!vout) throw Error("cannot write " + vocab_path);
  corpus.vocab.write_dump(vout);
  log.info("event=index sentences={} vocab={} out={}", corpus.sentences.size(),
           corpus.vocab.size(), c.out);
  return kOk;
}

int cmd_train_lm(const RunConfig& c, std::ostream&, spdlog::logger& log) {
  const auto bundle = load_any_corpus(c);
  const auto model = NGramModel::train(bundle.sentences, bundle.vocab, c.order);
  model.save(c.out);
  log.info("event=train_lm order={} sentences={} out={}", c.order, bundle.sentences.size(), c.out);
  return kOk;
}

int cmd_train_skipgram(const RunConfig& c, std::ostream&, spdlog::logger& log) {
  const auto bundle = load_any_corpus(c);
  SkipGramConfig sc;
  sc.dim = c.dim;
  sc.d1 = c.d1;
  sc.d2 = c.d2;
  sc.epochs = c.epochs;
  sc.negatives = c.negatives;
  sc.step_size = c.step_size;
  sc.seed = c.seed;
  const auto model = SkipGramModel::train(bundle.sentences, bundle.vocab, sc);
  model.save(c.out);
  if (!c.text_out.empty()) {
    std::ofstream t(c.text_out);
    if (!t) throw Error("cannot write " + c.text_out);
    model.export_text(t);
  }
  log.info("event=train_skipgram dim={} d1={} d2={} epochs={} seed={} out={}", c.dim, c.d1, c.d2,
           c.epochs, c.seed, c.out);
  return kOk;
}

int cmd_score(const RunConfig& c, std::ostream& stdout_stream, spdlog::logger& log) {
  const auto bundle = load_any_corpus(c);
  const auto lm = NGramModel::load(c.lm, bundle.vocab);
  std::optional<SkipGramModel> sg;
  if (!c.skipgram.empty()) sg = SkipGramModel::load(c.skipgram, bundle.vocab);

  std::ifstream file;
  std::istream* in = &std::cin;
  if (!c.input.empty()) {
    file.open(c.input);
    if (!file) throw Error("cannot open " + c.input);
    in = &file;
  }
  Output out(c.out, stdout_stream);
  SurprisalOptions so;
  so.window = c.window;
  std::string line;
  std::size_t record = 0, failed = 0;
  while (std::getline(*in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++record;
    Json result;
    result["record"] = record;
    try {
      const auto j = Json::parse(line);
      const PunPair pair(j.at("pun_word").get<std::string>(), j.at("alt_word").get<std::string>());
      Sentence s;
      for (auto& w : tokenize(j.at("sentence").get<std::string>())) {
        s.tokens.push_back(Token{std::move(w), PosTag::Unknown});
      }
      std::optional<std::size_t> position;
      if (j.contains("pun_position") && !j["pun_position"].is_null()) {
        position = j["pun_position"].get<std::size_t>();
      }
      const auto occ = locate_pun(s, pair, position);
      result["pun_position"] = occ.position;
      result.update(report_json(score(lm, occ, pair, so)));
      if (sg) {
        const auto post = posterior(lm, *sg, s, pair, occ.position);
        result["ambiguity"] = ambiguity(post);
        result["distinctiveness"] =
            post.f_pun.empty() ? Json(nullptr) : Json(distinctiveness(post));
      }
    } catch (const std::exception& e) {
      ++failed;
      result = Json{{"record", record}, {"error", e.what()}};
    }
    *out << result.dump() << '\n';
  }
  log.info("event=score records={} failed={}", record, failed);
  return kOk;
}

int cmd_generate(const RunConfig& c, std::ostream& stdout_stream, spdlog::logger& log) {
  auto bundle = load_any_corpus(c);
  const auto lm = NGramModel::load(c.lm, bundle.vocab);
  const bool topic_stage = !c.swap_only;

  std::optional<SkipGramModel> sg;
  std::optional<SynsetGraph> wn;
  TagLexicon lexicon;
  const auto wn_dir = wordnet_dir(c);
  if (topic_stage && c.skipgram.empty()) throw UsageError("--skipgram is required for topic insertion");
  if (topic_stage && wn_dir.empty()) throw UsageError("--wordnet (or PUNGEN_WORDNET) is required");
  if (!c.skipgram.empty()) sg = SkipGramModel::load(c.skipgram, bundle.vocab);
  if (!wn_dir.empty()) {
    wn = SynsetGraph::load(wn_dir);
    lexicon = wn->lexicon();
  }
  resolve_unknown_tags(bundle.sentences, lexicon);

  const auto pix = bundle.extra.find("PGIX");
  const auto index = pix != bundle.extra.end()
                         ? InvertedIndex::deserialize(pix->second, *bundle.vocab)
                         : InvertedIndex::build(bundle.sentences, *bundle.vocab);

  GenerationResources res;
  res.sentences = bundle.sentences;
  res.vocab = bundle.vocab.get();
  res.index = &index;
  res.lm = &lm;
  res.skipgram = sg ? &*sg : nullptr;
  res.wordnet = wn ? &*wn : nullptr;
  res.lexicon = &lexicon;

  GeneratorConfig gc;
  gc.retrieval.pool = c.pool;
  gc.retrieval.keep = c.keep;
  gc.retrieval.absolute_position = c.absolute_position;
  gc.topic_k = c.topic_k;
  gc.threshold = c.threshold;
  gc.max_outputs = c.max_outputs;
  gc.topic_stage = topic_stage;
  gc.rerank_surprisal = c.rerank_surprisal;
  gc.surprisal.window = c.window;

  const std::string wn_version = wn ? wn->version() : "none";
  std::ifstream pairs(c.pairs);
  if (!pairs) throw Error("cannot open " + c.pairs);
  Output out(c.out, stdout_stream);
  std::string line;
  std::size_t lineno = 0, emitted = 0, failures = 0;
  while (std::getline(pairs, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    Json base;
    base["line"] = lineno;
    try {
      if (tab == std::string::npos) throw InvalidArgument("expected pun_word<TAB>alt_word");
      const PunPair pair(line.substr(0, tab), line.substr(tab + 1));
      base["pun_word"] = pair.pun_word;
      base["alt_word"] = pair.alt_word;
      const auto result = generate(pair, res, gc);
      if (result.failure) {
        ++failures;
        Json j = base;
        j["error"] = std::string(to_string(*result.failure));
        j["wordnet_version"] = wn_version;
        *out << j.dump() << '\n';
        continue;
      }
      for (std::size_t rank = 0; rank < result.candidates.size(); ++rank) {
        const auto& cand = result.candidates[rank];
        Json j = base;
        j["rank"] = rank;
        j["stage"] = std::string(to_string(cand.stage));
        j["seed_id"] = cand.seed_id;
        j["seed_rank"] = cand.seed_rank;
        j["pun_position"] = cand.pun_position;
        j["deleted_position"] = cand.deleted_position ? Json(*cand.deleted_position) : Json(nullptr);
        j["deleted_word"] = cand.deleted_word ? token_json(*cand.deleted_word) : Json(nullptr);
        j["topic_word"] = cand.topic_word ? Json{{"word", cand.topic_word->word},
                                                 {"score", cand.topic_word->score}}
                                          : Json(nullptr);
        Json tokens = Json::array();
        for (const auto& t : cand.final_tokens) tokens.push_back(t.surface);
        j["tokens"] = tokens;
        j["text"] = cand.text();
        if (cand.scores) {
          j.update(report_json(*cand.scores));
        }
        j["warnings"] = cand.warnings;
        j["wordnet_version"] = wn_version;
        *out << j.dump() << '\n';
        ++emitted;
      }
    } catch (const InvalidArgument& e) {
      ++failures;
      Json j = base;
      j["error"] = e.what();
      *out << j.dump() << '\n';
    }
  }
  log.info("event=generate candidates={} failed_pairs={}", emitted, failures);
  return kOk;
}

int cmd_correlate(const RunConfig& c, std::ostream& stdout_stream, spdlog::logger& log) {
  std::ifstream rin(c.ratings);
  if (!rin) throw Error("cannot open " + c.ratings);
  const auto ratings = read_ratings_csv(rin);
  const auto z = zscore_raters(ratings);
  for (const auto& r : z.dropped) log.warn("event=rater_dropped reason=zero_variance rater={}", r);
  const auto filtered = filter_raters(z.table, c.min_corr);
  for (const auto& r : filtered.dropped) log.warn("event=rater_dropped reason=low_agreement rater={}", r);
  for (const auto& r : filtered.uncheckable) log.warn("event=rater_uncheckable rater={}", r);
  const auto funniness = item_means(filtered.table);

  std::ifstream sin(c.scores);
  if (!sin) throw Error("cannot open " + c.scores);
  std::string line;
  if (!std::getline(sin, line)) throw FormatError(c.scores + ": empty scores file");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2) throw FormatError(c.scores + ": expected item_id plus metric columns");
  std::vector<std::map<std::string, double>> metrics(header.size() - 1);
  std::size_t lineno = 1;
  while (std::getline(sin, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw FormatError(c.scores + ":" + std::to_string(lineno) + ": wrong number of columns");
    }
    for (std::size_t k = 1; k < cells.size(); ++k) {
      if (cells[k] == "NA" || cells[k].empty()) continue;
      try {
        metrics[k - 1][cells[0]] = std::stod(cells[k]);
      } catch (const std::exception&) {
        throw FormatError(c.scores + ":" + std::to_string(lineno) + ": bad value '" + cells[k] + "'");
      }
    }
  }

  Output out(c.out, stdout_stream);
  *out << "metric\tn\tspearman\tp_value\n";
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    std::vector<double> x, y;
    for (const auto& [item, v] : metrics[k]) {
      auto it = funniness.find(item);
      if (it == funniness.end()) continue;
      x.push_back(v);
      y.push_back(it->second);
    }
    *out << header[k + 1] << '\t' << x.size() << '\t';
    try {
      const auto clipped = clip_standardize(x);
      const double rho = spearman(clipped, y);
      const double p = permutation_p_value(clipped, y, c.permutations, c.seed);
      *out << rho << '\t' << p << '\n';
    } catch (const InvalidArgument& e) {
      *out << "NA\tNA\n";
      log.warn("event=metric_skipped metric={} reason=\"{}\"", header[k + 1], e.what());
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"punforge: pun scoring and generation", "punforge"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, std::pair<CLI::App*, const Subcommand*>> subs;

  for (const auto& sc : subcommands()) {
    auto* sub = app.add_subcommand(sc.name, sc.description);
    subs[sc.name] = {sub, &sc};
    sub->add_option("--config", config_path, "JSON config file (RunConfig field names)");
    auto fields = sc.fields;
    fields.push_back("verbosity");
    for (const auto& name : fields) {
      const auto* field = find_field(name);
      const auto key = sc.name + "/" + name;
      const std::string flag = flag_name(name);
      const std::string help = "env " + env_name(name);
      if (field->is_flag) {
        options[key] = sub->add_flag(flag, help);
      } else {
        options[key] = sub->add_option(flag, values[key], help);
      }
    }
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return kUsage;
  }
  const auto& [sub, spec] = subs.at(chosen.front()->get_name());

  RunConfig config;
  config.subcommand = spec->name;
  try {
    apply_env(config, [](const char* n) { return std::getenv(n); });
    if (!config_path.empty()) {
      std::ifstream cin(config_path);
      if (!cin) throw ConfigError("cannot open config file " + config_path);
      apply_json(config, nlohmann::json::parse(cin));
    }
    for (const auto& [key, opt] : options) {
      if (key.rfind(spec->name + "/", 0) != 0 || opt->count() == 0) continue;
      const auto name = key.substr(spec->name.size() + 1);
      const auto* field = find_field(name);
      field->set_text(config, field->is_flag ? "true" : values[key]);
    }
    for (const auto& r : spec->required) {
      if (get_field_text(config, r).empty()) throw UsageError(flag_name(r) + " is required");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kUsage;
  }

  auto log = make_logger(err, config.verbosity);
  try {
    if (spec->name == "index") return cmd_index(config, out, *log);
    if (spec->name == "train-lm") return cmd_train_lm(config, out, *log);
    if (spec->name == "train-skipgram") return cmd_train_skipgram(config, out, *log);
    if (spec->name == "score") return cmd_score(config, out, *log);
    if (spec->name == "generate") return cmd_generate(config, out, *log);
    if (spec->name == "correlate") return cmd_correlate(config, out, *log);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kUsage;
  } catch (const std::exception& e) {
    log->error("event=failed subcommand={} reason=\"{}\"", spec->name, e.what());
    return kDataError;
  }
  return kUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace punforge::cli
