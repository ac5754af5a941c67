#include "nanoie/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "nanoie/consistency.hpp"
#include "nanoie/error.hpp"
#include "nanoie/prompts.hpp"
#include "nanoie/version.hpp"
#include "parallel.hpp"

namespace nanoie {

Strategy parse_strategy(std::string_view name) {
  if (name == "e2e") return Strategy::e2e;
  if (name == "nerre" || name == "ner+re") return Strategy::nerre;
  throw ConfigError("unknown strategy '" + std::string(name) + "' (expected e2e or nerre)");
}

const char* strategy_name(Strategy s) { return s == Strategy::e2e ? "e2e" : "nerre"; }

void validate(const PipelineConfig& c) {
  if (c.condense_k && *c.condense_k == 0) throw ConfigError("condensation k must be at least 1");
  if (c.self_consistency) {
    if (c.strategy != Strategy::e2e) throw ConfigError("self-consistency is only available with the e2e strategy");
    const auto& sc = *c.self_consistency;
    if (sc.runs == 0) throw ConfigError("self-consistency needs at least one run");
    if (sc.alpha < 1 || sc.alpha > sc.runs) {
      throw ConfigError("alpha must lie in [1, " + std::to_string(sc.runs) + "]");
    }
  }
  if (c.segment_tokens == 0) throw ConfigError("segment size must be positive");
  if (c.parallelism == 0) throw ConfigError("parallelism must be at least 1");
}

ordered_json to_json(const PipelineConfig& c) {
  ordered_json j{{"strategy", strategy_name(c.strategy)},
                 {"condense_k", c.condense_k ? ordered_json(*c.condense_k) : ordered_json(nullptr)},
                 {"segment_tokens", c.segment_tokens}};
  if (c.self_consistency) {
    j["self_consistency"] = {{"runs", c.self_consistency->runs}, {"alpha", c.self_consistency->alpha}};
  } else {
    j["self_consistency"] = nullptr;
  }
  j["temperature"] = c.self_consistency ? kSelfConsistencyTemperature : 0.0;
  j["seed"] = c.seed;
  j["max_output"] = c.max_output;
  j["candidate_cap"] = c.candidate_cap;
  j["retry_attempts"] = c.retry.attempts;
  return j;
}

namespace {

struct DocumentWork {
  DocumentOutcome outcome;
  std::optional<SampleList> prediction;
  ordered_json vote_audit;
  double seconds = 0;
};

DocumentWork process(const Document& doc, const PipelineConfig& config, CompletionProvider& provider,
                     const CanonicalLexicon& lexicon, const SimilarityBackend* backend, CallLog& log) {
  const auto start = std::chrono::steady_clock::now();
  DocumentWork work;
  auto& outcome = work.outcome;
  outcome.doc_id = doc.doc_id();

  try {
    Document input = doc;
    if (config.condense_k) {
      if (!backend) throw ConfigError("condensation requested without a similarity backend");
      input = condense(doc, QuerySet::defaults(), *config.condense_k, *backend, config.segment_tokens).document;
    }
    outcome.input_tokens = input.token_count();

    ExtractOptions options;
    options.max_output = config.max_output;
    options.seed = config.seed;
    options.retry = config.retry;
    options.candidate_cap = config.candidate_cap;
    options.parallelism = config.parallelism;
    options.log = &log;

    auto standardize = [&](const SampleList& raw) {
      auto std_list = standardize_list(raw, lexicon);
      outcome.diagnostics.insert(outcome.diagnostics.end(), std_list.diagnostics.begin(), std_list.diagnostics.end());
      return std::move(std_list.list);
    };

    SampleList final_list;
    if (config.strategy == Strategy::nerre) {
      auto r = extract_nerre(input, provider, options);
      outcome.diagnostics.insert(outcome.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
      final_list = standardize(r.samples);
    } else if (!config.self_consistency) {
      auto r = extract_e2e(input, provider, options);
      outcome.diagnostics.insert(outcome.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
      final_list = standardize(r.samples);
    } else {
      const auto& sc = *config.self_consistency;
      PredictionRun run{doc.doc_id(), {}, kSelfConsistencyTemperature};
      options.temperature = kSelfConsistencyTemperature;
      for (std::size_t i = 0; i < sc.runs; ++i) {
        options.sample_index = i;
        options.sequence_base = i;
        auto r = extract_e2e(input, provider, options);
        for (auto& d : r.diagnostics) outcome.diagnostics.push_back("run " + std::to_string(i) + ": " + d);
        run.lists.push_back(standardize(r.samples));
      }
      const auto votes = vote(run);
      work.vote_audit = vote_audit(votes, sc.alpha);
      final_list = filter(votes, sc.alpha);
    }
    final_list.doc_id = doc.doc_id();
    outcome.samples = final_list.samples.size();
    outcome.ok = true;
    work.prediction = std::move(final_list);
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.error = e.what();
  }
  work.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return work;
}

ordered_json outcome_json(const DocumentOutcome& o) {
  ordered_json j{{"doc_id", o.doc_id}, {"ok", o.ok}, {"input_tokens", o.input_tokens}, {"samples", o.samples}};
  if (!o.error.empty()) j["error"] = o.error;
  j["diagnostics"] = o.diagnostics;
  return j;
}

}  // namespace

PipelineResult run_pipeline(std::span<const Document> corpus, const PipelineConfig& config,
                            CompletionProvider& provider, const CanonicalLexicon& lexicon,
                            const SimilarityBackend* backend) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  CallLog log;
  std::vector<DocumentWork> work(corpus.size());
  const std::size_t workers = std::min(config.parallelism, provider.max_concurrency());
  detail::parallel_for(corpus.size(), workers, [&](std::size_t i) {
    work[i] = process(corpus[i], config, provider, lexicon, backend, log);
  });

  PipelineResult result;
  ordered_json docs = ordered_json::array();
  ordered_json per_doc_seconds = ordered_json::object();
  std::size_t failed = 0;
  for (auto& w : work) {
    if (w.prediction) result.predictions.push_back(std::move(*w.prediction));
    if (!w.vote_audit.is_null()) result.vote_audits.push_back(std::move(w.vote_audit));
    if (!w.outcome.ok) ++failed;
    docs.push_back(outcome_json(w.outcome));
    per_doc_seconds[w.outcome.doc_id] = w.seconds;
    result.outcomes.push_back(std::move(w.outcome));
  }
  result.calls = log.sorted();

  result.manifest = {{"tool", "nanoie"},
                     {"version", kVersion},
                     {"command", "extract"},
                     {"prompt_version", prompts::kVersion},
                     {"model_id", provider.model_id()},
                     {"config", to_json(config)},
                     {"documents", std::move(docs)},
                     {"failed_documents", failed},
                     {"provider_calls", result.calls.size()}};
  result.manifest["timings"] = {
      {"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
      {"per_document_seconds", std::move(per_doc_seconds)}};
  return result;
}

void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "predictions");
  auto write = [](const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
  };
  for (const auto& list : result.predictions) {
    write(out_dir / "predictions" / (list.doc_id + ".json"), serialize_sample_lists(std::span(&list, 1)) + "\n");
  }
  if (!result.vote_audits.empty()) {
    fs::create_directories(out_dir / "votes");
    for (const auto& audit : result.vote_audits) {
      write(out_dir / "votes" / (audit.at("doc_id").get<std::string>() + ".json"), audit.dump(2) + "\n");
    }
  }
  std::string calls;
  for (const auto& c : result.calls) calls += to_json(c).dump() + "\n";
  write(out_dir / "calls.jsonl", calls);
  write(out_dir / "manifest.json", result.manifest.dump(2) + "\n");
}

}  // namespace nanoie
