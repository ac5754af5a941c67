#pragma once

// Partial and strict micro-averaged metrics over sample lists.
//
// Samples are compared on the <matrix, filler, composition> trio. A trio
// slot matches when either alternative field agrees: name or abbreviation
// for matrix and filler, mass or volume fraction for composition.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nanoie/model.hpp"

namespace nanoie {

enum class Attribute { matrix = 0, filler = 1, composition = 2 };
inline constexpr std::array<Attribute, 3> kAttributes = {Attribute::matrix, Attribute::filler,
                                                         Attribute::composition};
const char* attribute_name(Attribute a);

/// Relative tolerance for composition equality, with an absolute floor.
inline constexpr double kCompositionRelTol = 1e-3;
inline constexpr double kCompositionAbsTol = 1e-6;

bool compositions_equal(double a, double b);

struct AggregatedSample {
  struct Names {
    std::optional<std::string> name;
    std::optional<std::string> abbrev;
    bool present() const { return name || abbrev; }
  };
  struct Composition {
    std::optional<double> mass;
    std::optional<double> volume;
    bool present() const { return mass || volume; }
  };

  Names matrix;
  Names filler;
  Composition composition;

  /// Throws NotStandardized for raw samples.
  static AggregatedSample from(const Sample& sample);

  bool present(Attribute a) const;
};

/// Which trio slots agree between a prediction and a gold sample.
std::array<bool, 3> slot_matches(const AggregatedSample& pred, const AggregatedSample& gold);
int matched_slots(const AggregatedSample& pred, const AggregatedSample& gold);

/// Fraction of matching trio slots: 0, 1/3, 2/3 or 1.
double pair_score(const AggregatedSample& pred, const AggregatedSample& gold);
double pair_score(const Sample& pred, const Sample& gold);

/// All three trio slots match.
bool same_sample(const AggregatedSample& a, const AggregatedSample& b);

struct Assignment {
  struct Pair {
    std::size_t pred;
    std::size_t gold;
    int matched_slots;  // 1..3; zero-score pairings are reported as unmatched
    double score() const { return matched_slots / 3.0; }
  };
  std::vector<Pair> pairs;  // ordered by gold index
  std::vector<std::size_t> unmatched_pred;
  std::vector<std::size_t> unmatched_gold;

  int total_matched_slots() const;
  double total_score() const { return total_matched_slots() / 3.0; }
};

/// One-to-one pairing maximizing the summed pair score. The result depends
/// only on the content of the lists, not their order.
Assignment optimal_assignment(std::span<const AggregatedSample> preds, std::span<const AggregatedSample> golds);
Assignment optimal_assignment(std::span<const Sample> preds, std::span<const Sample> golds);

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Scores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Precision is 0 when tp + fp = 0, recall likewise; F1 is 0 when tp = 0.
Scores score(const Counts& c);

struct PartialResult {
  Counts total;
  std::array<Counts, 3> per_attribute;
  Assignment assignment;
};

PartialResult partial_metrics(std::span<const Sample> preds, std::span<const Sample> golds);

/// Sample-level counts. Each gold is consumed by at most one exactly
/// matching prediction; the number of such pairs is maximized.
Counts strict_metrics(std::span<const Sample> preds, std::span<const Sample> golds);

struct MetricsReport {
  Counts partial;
  Counts strict;
  std::array<Counts, 3> per_attribute;

  Scores partial_scores() const { return score(partial); }
  Scores strict_scores() const { return score(strict); }
  Scores attribute_scores(Attribute a) const { return score(per_attribute[static_cast<int>(a)]); }
};

MetricsReport evaluate_document(std::span<const Sample> preds, std::span<const Sample> golds);

/// Micro average: counts are summed before ratios are taken.
MetricsReport corpus_metrics(std::span<const MetricsReport> documents);

ordered_json to_json(const MetricsReport& report);

/// Strict P/R/F1 and Partial P/R/F1 as percentages, one row.
std::string render_summary_table(const MetricsReport& report, const std::string& label);
/// Per-attribute P/R/F1 as percentages.
std::string render_attribute_table(const MetricsReport& report);

}  // namespace nanoie
