#include "nanoie/cli.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nanoie/bootstrap.hpp"
#include "nanoie/condense.hpp"
#include "nanoie/consistency.hpp"
#include "nanoie/embedding.hpp"
#include "nanoie/error.hpp"
#include "nanoie/lexicon.hpp"
#include "nanoie/metrics.hpp"
#include "nanoie/pipeline.hpp"
#include "nanoie/reannotate.hpp"
#include "nanoie/version.hpp"

namespace nanoie::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string env_key(const std::string& key) {
  std::string out = "NANOIE_";
  for (char c : key) out.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

bool is_secret(const std::string& key) { return key.find("key") != std::string::npos; }

}  // namespace

RunConfig::RunConfig(std::string command, std::map<std::string, std::string> flags, ordered_json file_config)
    : command_(std::move(command)), flags_(std::move(flags)), file_(std::move(file_config)) {
  if (!file_.is_null() && !file_.is_object()) throw ConfigError("config file must hold a JSON object");
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
  if (const auto it = flags_.find(key); it != flags_.end()) return it->second;
  if (const char* v = std::getenv(env_key(key).c_str()); v && *v) return std::string(v);
  if (file_.is_object() && file_.contains(key) && !file_.at(key).is_null()) {
    const auto& v = file_.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  return std::nullopt;
}

std::string RunConfig::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw ConfigError("missing required setting '" + key + "' (flag --" + key + ", env " + env_key(key) + ")");
  return *v;
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

std::optional<std::size_t> RunConfig::get_size(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::size_t value = 0;
  const auto res = std::from_chars(v->data(), v->data() + v->size(), value);
  if (res.ec != std::errc{} || res.ptr != v->data() + v->size()) {
    throw ConfigError("setting '" + key + "' must be a non-negative integer, got '" + *v + "'");
  }
  return value;
}

std::optional<double> RunConfig::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    const double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "' must be a number, got '" + *v + "'");
  }
}

ordered_json RunConfig::to_json(const std::vector<std::string>& keys) const {
  ordered_json j = ordered_json::object();
  for (const auto& k : keys) {
    if (k == "out") continue;  // output location does not affect results
    if (auto v = get(k)) j[k] = is_secret(k) ? std::string("***") : *v;
  }
  return j;
}

std::vector<Document> load_documents(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      files.emplace_back(p);
    } else {
      throw Error("input path does not exist: " + p);
    }
  }
  std::vector<Document> docs;
  for (const auto& f : files) docs.emplace_back(f.stem().string(), read_file(f));
  return docs;
}

std::map<std::string, PredictionParse> load_prediction_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("prediction directory does not exist: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".json" || ext == ".txt")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, PredictionParse> out;
  for (const auto& f : files) {
    const auto id = f.stem().string();
    if (out.contains(id)) throw Error("two prediction files for document '" + id + "'");
    out.emplace(id, parse_prediction_output(read_file(f), id));
  }
  return out;
}

namespace {

struct Context {
  RunConfig config;
  std::vector<std::string> inputs;
  std::vector<std::string> keys;
  std::ostream& out;
  std::ostream& err;
  fs::path out_dir() const { return config.require("out"); }
  void warn(const std::string& message) const { err << "warning: " << message << "\n"; }
};

void write_manifest(const Context& ctx, ordered_json extra, std::chrono::steady_clock::time_point start) {
  ordered_json m{{"tool", "nanoie"}, {"version", kVersion}, {"command", ctx.config.command()},
                 {"config", ctx.config.to_json(ctx.keys)}};
  if (!ctx.inputs.empty()) {
    std::vector<std::string> names;
    for (const auto& p : ctx.inputs) names.push_back(fs::path(p).filename().string());
    m["inputs"] = names;
  }
  for (auto& [k, v] : extra.items()) m[k] = v;
  m["timings"] = {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  write_file(ctx.out_dir() / "manifest.json", m.dump(2) + "\n");
}

CanonicalLexicon load_lexicon(const Context& ctx) {
  const auto path = ctx.config.get("lexicon");
  if (!path) throw ConfigError("a lexicon file is required (--lexicon or NANOIE_LEXICON)");
  return CanonicalLexicon::load(*path);
}

std::vector<SampleList> load_gold(const Context& ctx, const CanonicalLexicon& lexicon) {
  auto gold = parse_gold_file(read_file(ctx.config.require("gold")));
  for (auto& g : gold) {
    auto r = standardize_list(g, lexicon);
    for (const auto& d : r.diagnostics) ctx.warn("gold " + g.doc_id + ": " + d);
    g = std::move(r.list);
  }
  return gold;
}

struct StandardizedPredictions {
  SampleList raw;
  SampleList standardized;
};

std::map<std::string, StandardizedPredictions> load_predictions(const Context& ctx, const CanonicalLexicon& lexicon,
                                                                ordered_json& diagnostics) {
  std::map<std::string, StandardizedPredictions> out;
  for (auto& [id, parsed] : load_prediction_dir(ctx.config.require("predictions"))) {
    auto std_list = standardize_list(parsed.samples, lexicon);
    std::vector<std::string> notes = parsed.diagnostics;
    if (!parsed.samples.samples.empty()) {
      notes.erase(std::remove(notes.begin(), notes.end(), "no record object recovered"), notes.end());
    }
    notes.insert(notes.end(), std_list.diagnostics.begin(), std_list.diagnostics.end());
    if (!notes.empty()) diagnostics[id] = notes;
    out.emplace(id, StandardizedPredictions{std::move(parsed.samples), std::move(std_list.list)});
  }
  return out;
}

int cmd_evaluate(const Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto lexicon = load_lexicon(ctx);
  const auto gold = load_gold(ctx, lexicon);
  ordered_json diagnostics = ordered_json::object();
  auto preds = load_predictions(ctx, lexicon, diagnostics);

  std::vector<std::string> warnings;
  for (const auto& [id, _] : preds) {
    const bool known = std::any_of(gold.begin(), gold.end(), [&](const SampleList& g) { return g.doc_id == id; });
    if (!known) {
      warnings.push_back("predictions for unknown document '" + id + "' skipped");
      ctx.warn(warnings.back());
    }
  }

  std::vector<MetricsReport> reports;
  std::vector<DocumentScore> scored;
  ordered_json per_doc = ordered_json::object();
  for (const auto& g : gold) {
    const auto it = preds.find(g.doc_id);
    const std::vector<Sample> empty;
    const auto& p = it == preds.end() ? empty : it->second.standardized.samples;
    reports.push_back(evaluate_document(p, g.samples));
    per_doc[g.doc_id] = to_json(reports.back());
    scored.push_back({g.doc_id, 0, reports.back()});
  }
  if (reports.empty()) throw Error("gold file holds no documents");
  const auto corpus = corpus_metrics(reports);

  ordered_json report{{"corpus", to_json(corpus)}, {"documents", per_doc}, {"warnings", warnings},
                      {"diagnostics", diagnostics}};

  const auto resamples = ctx.config.get_size("bootstrap").value_or(0);
  if (resamples > 0) {
    const auto docs_path = ctx.config.require("documents");
    std::map<std::string, std::size_t> lengths;
    for (const auto& d : load_documents({docs_path})) lengths[d.doc_id()] = d.token_count();
    for (auto& s : scored) {
      const auto it = lengths.find(s.doc_id);
      if (it == lengths.end()) throw Error("no document text for '" + s.doc_id + "', needed for bootstrap strata");
      s.token_count = it->second;
    }
    BootstrapOptions options;
    options.resamples = resamples;
    options.seed = ctx.config.get_size("seed").value_or(0);
    options.regime = ctx.config.get_or("regime", "strict") == "partial" ? Regime::partial : Regime::strict;
    const auto boot = bootstrap_f1(scored, options);
    ordered_json strata = ordered_json::array();
    for (const auto& s : boot.strata) {
      strata.push_back({{"interval", {s.stratum.lo, s.stratum.hi}},
                        {"documents", s.documents},
                        {"mean_f1", s.mean_f1},
                        {"sd", s.sd},
                        {"ci_low", s.ci_low},
                        {"ci_high", s.ci_high}});
    }
    report["bootstrap"] = {{"resamples", resamples}, {"seed", options.seed}, {"strata", strata},
                           {"diagnostics", boot.diagnostics}};
  }

  const auto dir = ctx.out_dir();
  write_file(dir / "report.json", report.dump(2) + "\n");
  const auto table = render_summary_table(corpus, "corpus");
  write_file(dir / "report.txt", table);
  write_file(dir / "attributes.txt", render_attribute_table(corpus));
  write_manifest(ctx, {{"documents", gold.size()}, {"warnings", warnings.size()}}, start);
  ctx.out << table;
  return 0;
}

PipelineConfig pipeline_config(const RunConfig& c) {
  PipelineConfig p;
  p.strategy = parse_strategy(c.get_or("strategy", "e2e"));
  p.condense_k = c.get_size("k");
  const auto runs = c.get_size("sc-runs");
  const auto alpha = c.get_size("alpha");
  if (runs || alpha) p.self_consistency = SelfConsistency{runs.value_or(8), alpha.value_or(3)};
  p.segment_tokens = c.get_size("segment-tokens").value_or(kDefaultSegmentTokens);
  p.parallelism = c.get_size("parallelism").value_or(1);
  p.seed = c.get_size("seed").value_or(0);
  p.max_output = c.get_size("max-output").value_or(4096);
  p.candidate_cap = c.get_size("candidate-cap").value_or(1000);
  p.retry.attempts = c.get_size("retries").value_or(3);
  p.retry.initial_backoff = std::chrono::milliseconds(c.get_size("backoff-ms").value_or(500));
  return p;
}

ProviderSettings provider_settings(const RunConfig& c) {
  ProviderSettings s;
  s.kind = c.get_or("provider", "mock");
  if (auto f = c.get("provider-fixture")) s.fixture = *f;
  s.chat.url = c.get_or("api-url", "");
  s.chat.api_key = c.get_or("api-key", "");
  s.chat.model = c.get_or("model", "");
  s.chat.context_limit = c.get_size("context-limit").value_or(128000);
  s.chat.requests_per_minute = c.get_double("rate-limit").value_or(0.0);
  s.chat.concurrency = c.get_size("provider-concurrency").value_or(4);
  return s;
}

int cmd_extract(const Context& ctx) {
  const auto config = pipeline_config(ctx.config);
  validate(config);
  const auto lexicon = load_lexicon(ctx);
  auto provider = make_provider(provider_settings(ctx.config));
  std::unique_ptr<SimilarityBackend> backend;
  if (config.condense_k) backend = make_backend(ctx.config.get_or("backend", "lexical"));
  if (ctx.inputs.empty()) throw ConfigError("extract needs at least one --input");
  const auto docs = load_documents(ctx.inputs);

  auto result = run_pipeline(docs, config, *provider, lexicon, backend.get());
  result.manifest["run_config"] = ctx.config.to_json(ctx.keys);
  write_pipeline_outputs(result, ctx.out_dir());
  std::size_t failed = 0;
  for (const auto& o : result.outcomes) {
    if (!o.ok) {
      ++failed;
      ctx.warn("document '" + o.doc_id + "' failed: " + o.error);
    }
  }
  ctx.out << fmt::format("extracted {} document(s), {} failed, {} provider call(s)\n", docs.size(), failed,
                         result.calls.size());
  return 0;
}

int cmd_condense(const Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto k = ctx.config.get_size("k").value_or(5);
  const auto target = ctx.config.get_size("segment-tokens").value_or(kDefaultSegmentTokens);
  const auto queries =
      ctx.config.get("queries") ? QuerySet::from_lines(read_file(*ctx.config.get("queries"))) : QuerySet::defaults();
  const auto backend = make_backend(ctx.config.get_or("backend", "lexical"));
  if (ctx.inputs.empty()) throw ConfigError("condense needs at least one --input");
  const auto docs = load_documents(ctx.inputs);
  ordered_json selections = ordered_json::object();
  for (const auto& d : docs) {
    const auto c = condense(d, queries, k, *backend, target);
    write_file(ctx.out_dir() / (d.doc_id() + ".txt"), c.document.body() + "\n");
    selections[d.doc_id()] = {{"segments", c.segment_count},
                              {"selected", c.selected},
                              {"original_tokens", d.token_count()},
                              {"condensed_tokens", c.document.token_count()}};
    ctx.out << fmt::format("{}: {} -> {} tokens ({} of {} segments)\n", d.doc_id(), d.token_count(),
                           c.document.token_count(), c.selected.size(), c.segment_count);
  }
  write_manifest(ctx, {{"queries", queries.queries}, {"documents", selections}}, start);
  return 0;
}

int cmd_vote(const Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto lexicon = load_lexicon(ctx);
  const fs::path runs_dir = ctx.config.require("runs");
  if (!fs::is_directory(runs_dir)) throw Error("runs directory does not exist: " + runs_dir.string());
  std::vector<fs::path> run_dirs;
  for (const auto& e : fs::directory_iterator(runs_dir)) {
    if (e.is_directory()) run_dirs.push_back(e.path());
  }
  std::sort(run_dirs.begin(), run_dirs.end());
  if (run_dirs.empty()) throw Error("no run subdirectories under " + runs_dir.string());
  const auto alpha = ctx.config.get_size("alpha").value_or(3);

  std::vector<std::map<std::string, PredictionParse>> runs;
  std::set<std::string> doc_ids;
  for (const auto& d : run_dirs) {
    runs.push_back(load_prediction_dir(d));
    for (const auto& [id, _] : runs.back()) doc_ids.insert(id);
  }
  std::vector<SampleList> retained;
  for (const auto& id : doc_ids) {
    PredictionRun run{id, {}, kSelfConsistencyTemperature};
    for (const auto& r : runs) {
      const auto it = r.find(id);
      run.lists.push_back(it == r.end() ? SampleList{id, {}} : standardize_list(it->second.samples, lexicon).list);
    }
    const auto votes = vote(run);
    auto kept = filter(votes, alpha);
    write_file(ctx.out_dir() / "votes" / (id + ".json"), vote_audit(votes, alpha).dump(2) + "\n");
    write_file(ctx.out_dir() / (id + ".json"), serialize_sample_lists(std::span(&kept, 1)) + "\n");
    ctx.out << fmt::format("{}: {} distinct, {} retained (alpha {} of {})\n", id, votes.samples.size(),
                           kept.samples.size(), alpha, run.lists.size());
    retained.push_back(std::move(kept));
  }
  std::vector<std::string> run_names;
  for (const auto& d : run_dirs) run_names.push_back(d.filename().string());
  write_manifest(ctx, {{"runs", run_names}, {"alpha", alpha}, {"documents", doc_ids.size()}}, start);
  return 0;
}

int cmd_triage(const Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto lexicon = load_lexicon(ctx);
  const auto gold = load_gold(ctx, lexicon);
  ordered_json diagnostics = ordered_json::object();
  const auto preds = load_predictions(ctx, lexicon, diagnostics);
  for (const auto& g : gold) {
    const auto it = preds.find(g.doc_id);
    const std::vector<Sample> empty;
    const auto& raw = it == preds.end() ? empty : it->second.raw.samples;
    const auto& standardized = it == preds.end() ? empty : it->second.standardized.samples;
    const auto entries = triage(g.samples, raw, standardized);
    write_file(ctx.out_dir() / (g.doc_id + ".txt"), render_report(entries, g.doc_id));
  }
  ctx.out << fmt::format("wrote {} triage report(s)\n", gold.size());
  write_manifest(ctx, {{"documents", gold.size()}, {"diagnostics", diagnostics}}, start);
  return 0;
}

int cmd_stats(const Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  if (ctx.inputs.empty()) throw ConfigError("stats needs --input documents");
  const auto docs = load_documents(ctx.inputs);
  const auto gold = parse_gold_file(read_file(ctx.config.require("gold")));
  const auto s = corpus_stats(docs, gold);
  auto summary = [](const Summary& x) {
    return ordered_json{{"mean", x.mean}, {"median", x.median}, {"min", x.min}, {"max", x.max}};
  };
  const ordered_json j{{"documents", s.documents},
                       {"paper_length", summary(s.length)},
                       {"samples_per_doc", summary(s.samples_per_doc)}};
  write_file(ctx.out_dir() / "stats.json", j.dump(2) + "\n");
  ctx.out << fmt::format("{:<10} {:>12} {:>14}\n", "", "Length", "#Samples/Doc");
  ctx.out << fmt::format("{:<10} {:>12.1f} {:>14.1f}\n", "Avg.", s.length.mean, s.samples_per_doc.mean);
  ctx.out << fmt::format("{:<10} {:>12} {:>14}\n", "Med.", s.length.median, s.samples_per_doc.median);
  ctx.out << fmt::format("{:<10} {:>12} {:>14}\n", "Min.", s.length.min, s.samples_per_doc.min);
  ctx.out << fmt::format("{:<10} {:>12} {:>14}\n", "Max.", s.length.max, s.samples_per_doc.max);
  write_manifest(ctx, {{"documents", s.documents}}, start);
  return 0;
}

struct OptionSpec {
  const char* key;
  const char* help;
};

struct CommandSpec {
  const char* name;
  const char* help;
  bool takes_inputs;
  std::vector<OptionSpec> options;
  std::function<int(const Context&)> handler;
};

std::vector<CommandSpec> commands() {
  const OptionSpec out{"out", "output directory"};
  const OptionSpec lexicon{"lexicon", "lexicon JSON file"};
  const OptionSpec gold{"gold", "gold JSON file"};
  const OptionSpec predictions{"predictions", "directory of per-document prediction files"};
  const OptionSpec seed{"seed", "random seed"};
  const OptionSpec backend{"backend", "similarity backend: lexical | embedding-api"};
  const OptionSpec k{"k", "segments kept per query"};
  const OptionSpec segment_tokens{"segment-tokens", "target segment length in tokens (60)"};
  return {
      {"evaluate",
       "score predictions against gold (strict and partial micro P/R/F1)",
       false,
       {predictions, gold, lexicon, out, {"bootstrap", "bootstrap resamples per length stratum (0 = off)"},
        {"documents", "document text directory, needed for bootstrap strata"}, seed,
        {"regime", "bootstrap regime: strict | partial"}},
       cmd_evaluate},
      {"extract",
       "run an LLM extraction pipeline over documents",
       true,
       {{"strategy", "e2e | nerre"}, k, {"sc-runs", "self-consistency predictions t"},
        {"alpha", "self-consistency threshold"}, {"provider", "mock | chat"},
        {"provider-fixture", "mock provider fixture JSON"}, {"api-url", "chat completions endpoint"},
        {"api-key", "API key"}, {"model", "model id"}, {"context-limit", "provider context limit in tokens"},
        {"rate-limit", "requests per minute (0 = unlimited)"}, {"provider-concurrency", "concurrent requests"},
        {"max-output", "max output tokens"}, {"candidate-cap", "NER+RE candidate cap"},
        {"retries", "attempts per provider call"}, {"backoff-ms", "initial retry backoff"}, lexicon, backend,
        segment_tokens, seed, {"parallelism", "documents processed concurrently"}, out},
       cmd_extract},
      {"condense",
       "shrink documents to the union of per-query top-k segments",
       true,
       {k, {"queries", "file with one query per line"}, backend, segment_tokens, out},
       cmd_condense},
      {"vote",
       "self-consistency vote over several prediction runs",
       false,
       {{"runs", "directory holding one subdirectory per run"}, {"alpha", "minimum number of runs"}, lexicon, out},
       cmd_vote},
      {"triage", "write re-annotation triage reports", false, {predictions, gold, lexicon, out}, cmd_triage},
      {"stats", "corpus length and samples-per-document summary", true, {gold, out}, cmd_stats},
  };
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nanoie: material-sample extraction and evaluation toolkit", "nanoie"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags > env > config)");

  const auto specs = commands();
  struct Bound {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::vector<std::string> inputs;
  };
  std::vector<Bound> bound(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto& b = bound[i];
    b.app = app.add_subcommand(specs[i].name, specs[i].help);
    b.app->add_option("--config", config_path, "JSON config file");
    if (specs[i].takes_inputs) b.app->add_option("--input,-i", b.inputs, "document files or directories");
    for (const auto& o : specs[i].options) {
      b.options.emplace_back(o.key, b.app->add_option(std::string("--") + o.key, b.values[o.key], o.help));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto& b = bound[i];
    if (!b.app->parsed()) continue;
    try {
      std::map<std::string, std::string> flags;
      for (const auto& [key, opt] : b.options) {
        if (opt->count() > 0) flags[key] = b.values[key];
      }
      if (config_path.empty()) {
        if (const char* c = std::getenv("NANOIE_CONFIG")) config_path = c;
      }
      ordered_json file_config;
      if (!config_path.empty()) {
        file_config = ordered_json::parse(read_file(config_path), nullptr, false);
        if (file_config.is_discarded()) throw ConfigError("config file is not JSON: " + config_path);
      }
      std::vector<std::string> keys;
      for (const auto& o : specs[i].options) keys.emplace_back(o.key);
      RunConfig config(specs[i].name, std::move(flags), std::move(file_config));
      auto inputs = b.inputs;
      if (inputs.empty() && specs[i].takes_inputs) {
        if (auto v = config.get("input")) inputs.push_back(*v);
      }
      Context ctx{std::move(config), std::move(inputs), std::move(keys), out, err};
      return specs[i].handler(ctx);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace nanoie::cli
