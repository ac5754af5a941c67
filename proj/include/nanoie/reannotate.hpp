#pragma once

// Re-annotation triage: align predictions with gold and list the pairs that
// disagree most first, so annotators review those before anything else.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nanoie/metrics.hpp"
#include "nanoie/model.hpp"

namespace nanoie {

enum class TriageKind { unmatched_gold, unmatched_pred, partial, exact };

struct TriageEntry {
  TriageKind kind;
  std::optional<std::size_t> gold_index;
  std::optional<std::size_t> pred_index;
  int matched_slots = 0;  // score = matched_slots / 3
  std::vector<Attribute> discrepant_slots;
  std::optional<Sample> gold;
  std::optional<Sample> pred;               // as the model produced it
  std::optional<Sample> standardized_pred;

  double score() const { return matched_slots / 3.0; }
};

/// Entries ordered by (unmatched gold, unmatched prediction, partial, exact),
/// then ascending score, then gold index, then prediction index. Every gold
/// and prediction index appears in exactly one entry.
///
/// `golds` and `standardized_preds` must be standardized; `raw_preds` is
/// shown in the report and must have the same length.
std::vector<TriageEntry> triage(std::span<const Sample> golds, std::span<const Sample> raw_preds,
                                std::span<const Sample> standardized_preds);

/// Same, using the standardized predictions for display.
std::vector<TriageEntry> triage(std::span<const Sample> golds, std::span<const Sample> standardized_preds);

/// Plain-text review report, one block per entry.
std::string render_report(std::span<const TriageEntry> entries, const std::string& doc_id);

/// Record rendered as a Python-style dict, e.g. {'Matrix Chemical Name': 'PS', ...: None}.
std::string render_record(const Sample& sample);

}  // namespace nanoie
