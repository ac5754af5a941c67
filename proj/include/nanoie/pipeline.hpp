#pragma once

// End-to-end extraction runs over a corpus:
// condense -> extract -> standardize -> (vote + filter) -> persist.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nanoie/condense.hpp"
#include "nanoie/extract.hpp"
#include "nanoie/lexicon.hpp"
#include "nanoie/model.hpp"
#include "nanoie/provider.hpp"

namespace nanoie {

enum class Strategy { e2e, nerre };

Strategy parse_strategy(std::string_view name);
const char* strategy_name(Strategy s);

struct SelfConsistency {
  std::size_t runs = 8;
  std::size_t alpha = 3;
};

inline constexpr double kSelfConsistencyTemperature = 0.7;

struct PipelineConfig {
  Strategy strategy = Strategy::e2e;
  std::optional<std::size_t> condense_k;   // off when empty
  std::optional<SelfConsistency> self_consistency;  // e2e only
  std::size_t segment_tokens = kDefaultSegmentTokens;
  std::size_t parallelism = 1;
  std::uint64_t seed = 0;
  std::size_t max_output = 4096;
  std::size_t candidate_cap = 1000;
  RetryPolicy retry;
};

/// Throws ConfigError for inconsistent settings.
void validate(const PipelineConfig& config);

ordered_json to_json(const PipelineConfig& config);

struct DocumentOutcome {
  std::string doc_id;
  bool ok = false;
  std::string error;
  std::size_t input_tokens = 0;  // after condensation
  std::size_t samples = 0;
  std::vector<std::string> diagnostics;
};

struct PipelineResult {
  std::vector<SampleList> predictions;   // standardized, one per successful document
  std::vector<DocumentOutcome> outcomes;  // one per input document, input order
  std::vector<ordered_json> vote_audits;  // self-consistency only
  std::vector<CallRecord> calls;
  ordered_json manifest;  // everything except wall-clock data lives outside "timings"
};

/// Runs the configured pipeline. A failing document is recorded in its
/// outcome and does not stop the others. `backend` is only needed when
/// condensation is on.
PipelineResult run_pipeline(std::span<const Document> corpus, const PipelineConfig& config,
                            CompletionProvider& provider, const CanonicalLexicon& lexicon,
                            const SimilarityBackend* backend);

/// Writes predictions/<doc_id>.json, votes/<doc_id>.json (self-consistency),
/// calls.jsonl and manifest.json under `out_dir`.
void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& out_dir);

}  // namespace nanoie
