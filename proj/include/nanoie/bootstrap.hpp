#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nanoie/metrics.hpp"

namespace nanoie {

enum class Regime { strict, partial };

/// Documents with lo <= token_count < hi.
struct LengthStratum {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct DocumentScore {
  std::string doc_id;
  std::size_t token_count = 0;
  MetricsReport report;
};

struct BootstrapOptions {
  std::size_t resamples = 1000;
  double confidence = 0.95;
  std::uint64_t seed = 0;
  Regime regime = Regime::strict;
  std::vector<LengthStratum> strata = {{0, 8000}, {8000, 20000}};
};

struct StratumSummary {
  LengthStratum stratum;
  std::size_t documents = 0;
  double mean_f1 = 0;
  double sd = 0;  // sample standard deviation over resamples
  double ci_low = 0;
  double ci_high = 0;
};

struct BootstrapResult {
  std::vector<StratumSummary> strata;  // empty strata are omitted
  std::vector<std::string> diagnostics;
};

/// Resamples documents with replacement inside each length stratum and
/// recomputes micro F1 per resample. Percentile interval; documents are
/// visited in doc_id order so the result depends only on the seed.
BootstrapResult bootstrap_f1(std::span<const DocumentScore> documents, const BootstrapOptions& options);

/// Linear-interpolated percentile of sorted values, q in [0,1].
double percentile(std::span<const double> sorted, double q);

}  // namespace nanoie
