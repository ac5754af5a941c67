#include "nanoie/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nanoie/error.hpp"

namespace nanoie {

double percentile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("percentile of an empty sample");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  if (sorted[lo] == sorted[hi]) return sorted[lo];
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BootstrapResult bootstrap_f1(std::span<const DocumentScore> documents, const BootstrapOptions& options) {
  if (options.resamples < 1) throw InvalidArgument("bootstrap needs at least one resample");
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw InvalidArgument("confidence must lie strictly between 0 and 1");
  }
  BootstrapResult result;

  for (std::size_t s = 0; s < options.strata.size(); ++s) {
    const auto& stratum = options.strata[s];
    std::vector<const DocumentScore*> members;
    for (const auto& d : documents) {
      if (d.token_count >= stratum.lo && d.token_count < stratum.hi) members.push_back(&d);
    }
    if (members.empty()) {
      result.diagnostics.push_back("stratum [" + std::to_string(stratum.lo) + ", " + std::to_string(stratum.hi) +
                                   ") has no documents, omitted");
      continue;
    }
    std::stable_sort(members.begin(), members.end(),
                     [](const DocumentScore* a, const DocumentScore* b) { return a->doc_id < b->doc_id; });

    // One generator per stratum so adding a stratum does not shift the others.
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);

    std::vector<double> f1s;
    f1s.reserve(options.resamples);
    double mean = 0;
    double m2 = 0;
    for (std::size_t r = 0; r < options.resamples; ++r) {
      Counts total;
      for (std::size_t k = 0; k < members.size(); ++k) {
        const auto& rep = members[pick(rng)]->report;
        total += options.regime == Regime::strict ? rep.strict : rep.partial;
      }
      const double f1 = score(total).f1;
      f1s.push_back(f1);
      // Welford keeps identical resamples at exactly zero spread.
      const double delta = f1 - mean;
      mean += delta / static_cast<double>(r + 1);
      m2 += delta * (f1 - mean);
    }
    std::sort(f1s.begin(), f1s.end());
    StratumSummary summary;
    summary.stratum = stratum;
    summary.documents = members.size();
    summary.mean_f1 = mean;
    summary.sd = options.resamples > 1 ? std::sqrt(m2 / static_cast<double>(options.resamples - 1)) : 0.0;
    const double tail = (1.0 - options.confidence) / 2.0;
    summary.ci_low = percentile(f1s, tail);
    summary.ci_high = percentile(f1s, 1.0 - tail);
    result.strata.push_back(summary);
  }
  return result;
}

}  // namespace nanoie
