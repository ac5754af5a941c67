#pragma once

// LLM extraction strategies: one-shot E2E and the two-stage NER+RE.

#include <chrono>
#include <mutex>
#include <string>
#include <vector>

#include "nanoie/model.hpp"
#include "nanoie/provider.hpp"

namespace nanoie {

struct RetryPolicy {
  std::size_t attempts = 3;
  std::chrono::milliseconds initial_backoff{500};  // doubled after each failure
};

struct CallRecord {
  std::string doc_id;
  std::string strategy;  // e2e | nerre
  std::string stage;     // e2e | ner | re
  std::size_t sequence = 0;  // position within the document's calls
  std::size_t prompt_tokens = 0;
  std::size_t output_tokens = 0;
  std::size_t attempts = 0;
  bool ok = false;
  std::string error;
};

/// Thread-safe sink for provider calls.
class CallLog {
 public:
  void add(CallRecord record);
  /// Records sorted by (doc_id, sequence), independent of scheduling.
  std::vector<CallRecord> sorted() const;

 private:
  mutable std::mutex mutex_;
  std::vector<CallRecord> records_;
};

ordered_json to_json(const CallRecord& record);

struct ExtractOptions {
  double temperature = 0.0;
  std::size_t max_output = 4096;
  std::uint64_t seed = 0;
  std::size_t sample_index = 0;
  RetryPolicy retry;
  std::size_t candidate_cap = 1000;
  std::size_t parallelism = 1;  // concurrent RE calls per document
  std::size_t sequence_base = 0;
  CallLog* log = nullptr;
};

struct ExtractionResult {
  SampleList samples;  // raw-flagged
  std::vector<std::string> diagnostics;
  std::size_t provider_calls = 0;
};

/// Single prompt returning the whole sample list. Throws ContextOverflow
/// before calling the provider when the prompt cannot fit, and
/// RetriesExhausted when every attempt failed.
ExtractionResult extract_e2e(const Document& doc, CompletionProvider& provider, const ExtractOptions& options = {});

struct EntityCandidates {
  std::vector<std::string> matrix_names;
  std::vector<std::string> matrix_abbrevs;
  std::vector<std::string> filler_names;
  std::vector<std::string> filler_abbrevs;
  std::vector<std::string> fractions;
};

struct NerResult {
  EntityCandidates candidates;
  std::vector<std::string> diagnostics;
};

/// Reads the entity lists from a NER response; missing keys give empty lists.
NerResult parse_ner_output(std::string_view text);

NerResult extract_ner(const Document& doc, CompletionProvider& provider, const ExtractOptions& options = {});

/// matrix x filler x fraction, in input order. Abbreviations pair with names
/// by position; fractions go to the volume slot only when marked "vol",
/// otherwise mass. With no fractions, one composition-less candidate per pair.
/// Throws CandidateCapExceeded when the product exceeds `cap`.
std::vector<Sample> enumerate_candidates(const EntityCandidates& entities, std::size_t cap = 1000);

/// Leading "yes" token, case-insensitive.
bool is_affirmative(std::string_view response);

struct NerReResult {
  SampleList samples;
  std::vector<Sample> candidates;
  std::vector<std::string> diagnostics;
  std::size_t provider_calls = 0;
};

/// NER, candidate enumeration, then one yes/no prompt per candidate. A
/// candidate whose RE call keeps failing is skipped and noted.
NerReResult extract_nerre(const Document& doc, CompletionProvider& provider, const ExtractOptions& options = {});

/// The record layout used inside relation prompts.
std::string candidate_json(const Sample& candidate);

}  // namespace nanoie
