#include "nanoie/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "nanoie/assignment.hpp"
#include "nanoie/error.hpp"
#include "nanoie/text.hpp"

namespace nanoie {

namespace {

bool names_match(const AggregatedSample::Names& p, const AggregatedSample::Names& g) {
  return (p.name && g.name && text::iequals(*p.name, *g.name)) ||
         (p.abbrev && g.abbrev && text::iequals(*p.abbrev, *g.abbrev));
}

bool composition_match(const AggregatedSample::Composition& p, const AggregatedSample::Composition& g) {
  return (p.mass && g.mass && compositions_equal(*p.mass, *g.mass)) ||
         (p.volume && g.volume && compositions_equal(*p.volume, *g.volume));
}

std::vector<AggregatedSample> aggregate(std::span<const Sample> samples) {
  std::vector<AggregatedSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(AggregatedSample::from(s));
  return out;
}

// Content key used to fix the order the solver sees, so that results do not
// depend on how the caller ordered its lists. Equal keys score identically.
using SortKey = std::tuple<std::string, std::string, std::string, std::string, int, double, int, double>;

SortKey sort_key(const AggregatedSample& s) {
  auto low = [](const std::optional<std::string>& v) { return v ? text::to_lower(*v) : std::string(); };
  return {low(s.matrix.name),
          low(s.matrix.abbrev),
          low(s.filler.name),
          low(s.filler.abbrev),
          s.composition.mass ? 1 : 0,
          s.composition.mass.value_or(0.0),
          s.composition.volume ? 1 : 0,
          s.composition.volume.value_or(0.0)};
}

std::vector<std::size_t> canonical_order(std::span<const AggregatedSample> samples) {
  std::vector<SortKey> keys;
  keys.reserve(samples.size());
  for (const auto& s : samples) keys.push_back(sort_key(s));
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  return order;
}

// Solves on canonically ordered inputs and maps back to caller indices.
template <typename WeightFn>
std::vector<std::pair<std::size_t, std::size_t>> solve(std::span<const AggregatedSample> preds,
                                                       std::span<const AggregatedSample> golds, WeightFn weight) {
  const auto pred_order = canonical_order(preds);
  const auto gold_order = canonical_order(golds);
  std::vector<std::vector<std::int64_t>> w(preds.size(), std::vector<std::int64_t>(golds.size()));
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < golds.size(); ++j) w[i][j] = weight(preds[pred_order[i]], golds[gold_order[j]]);
  }
  const auto rows = max_weight_assignment(w);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] && w[i][*rows[i]] > 0) out.emplace_back(pred_order[i], gold_order[*rows[i]]);
  }
  return out;
}

}  // namespace

const char* attribute_name(Attribute a) {
  switch (a) {
    case Attribute::matrix: return "Matrix";
    case Attribute::filler: return "Filler";
    case Attribute::composition: return "Composition";
  }
  return "?";
}

bool compositions_equal(double a, double b) {
  const double tol = std::max(kCompositionAbsTol, kCompositionRelTol * std::max(std::fabs(a), std::fabs(b)));
  return std::fabs(a - b) <= tol;
}

AggregatedSample AggregatedSample::from(const Sample& s) {
  if (!s.standardized()) throw NotStandardized("metrics require standardized samples");
  auto frac = [](const std::optional<Fraction>& f) -> std::optional<double> {
    if (!f) return std::nullopt;
    const auto v = fraction_value(*f);
    if (!v) throw NotStandardized("standardized sample still holds composition text '" + fraction_text(*f) + "'");
    return v;
  };
  AggregatedSample a;
  a.matrix = {s.matrix_name, s.matrix_abbrev};
  a.filler = {s.filler_name, s.filler_abbrev};
  a.composition = {frac(s.mass_fraction), frac(s.volume_fraction)};
  return a;
}

bool AggregatedSample::present(Attribute a) const {
  switch (a) {
    case Attribute::matrix: return matrix.present();
    case Attribute::filler: return filler.present();
    case Attribute::composition: return composition.present();
  }
  return false;
}

std::array<bool, 3> slot_matches(const AggregatedSample& pred, const AggregatedSample& gold) {
  return {names_match(pred.matrix, gold.matrix), names_match(pred.filler, gold.filler),
          composition_match(pred.composition, gold.composition)};
}

int matched_slots(const AggregatedSample& pred, const AggregatedSample& gold) {
  const auto m = slot_matches(pred, gold);
  return static_cast<int>(m[0]) + static_cast<int>(m[1]) + static_cast<int>(m[2]);
}

double pair_score(const AggregatedSample& pred, const AggregatedSample& gold) {
  return matched_slots(pred, gold) / 3.0;
}

double pair_score(const Sample& pred, const Sample& gold) {
  return pair_score(AggregatedSample::from(pred), AggregatedSample::from(gold));
}

bool same_sample(const AggregatedSample& a, const AggregatedSample& b) { return matched_slots(a, b) == 3; }

int Assignment::total_matched_slots() const {
  int total = 0;
  for (const auto& p : pairs) total += p.matched_slots;
  return total;
}

Assignment optimal_assignment(std::span<const AggregatedSample> preds, std::span<const AggregatedSample> golds) {
  const auto matched = solve(preds, golds, [](const AggregatedSample& p, const AggregatedSample& g) {
    return static_cast<std::int64_t>(matched_slots(p, g));
  });
  Assignment a;
  std::vector<char> pred_used(preds.size()), gold_used(golds.size());
  for (const auto& [p, g] : matched) {
    a.pairs.push_back({p, g, matched_slots(preds[p], golds[g])});
    pred_used[p] = gold_used[g] = 1;
  }
  std::sort(a.pairs.begin(), a.pairs.end(), [](const auto& x, const auto& y) { return x.gold < y.gold; });
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!pred_used[i]) a.unmatched_pred.push_back(i);
  }
  for (std::size_t j = 0; j < golds.size(); ++j) {
    if (!gold_used[j]) a.unmatched_gold.push_back(j);
  }
  return a;
}

Assignment optimal_assignment(std::span<const Sample> preds, std::span<const Sample> golds) {
  const auto p = aggregate(preds);
  const auto g = aggregate(golds);
  return optimal_assignment(p, g);
}

Scores score(const Counts& c) {
  Scores s;
  if (c.tp + c.fp > 0) s.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) s.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (c.tp > 0) s.f1 = 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
  return s;
}

PartialResult partial_metrics(std::span<const Sample> preds, std::span<const Sample> golds) {
  const auto p = aggregate(preds);
  const auto g = aggregate(golds);
  PartialResult r;
  r.assignment = optimal_assignment(p, g);

  for (const auto& pair : r.assignment.pairs) {
    const auto& ps = p[pair.pred];
    const auto& gs = g[pair.gold];
    const auto matches = slot_matches(ps, gs);
    for (auto attr : kAttributes) {
      auto& c = r.per_attribute[static_cast<int>(attr)];
      if (matches[static_cast<int>(attr)]) {
        ++c.tp;
        continue;
      }
      if (gs.present(attr)) ++c.fn;
      if (ps.present(attr)) ++c.fp;
    }
  }
  for (auto i : r.assignment.unmatched_pred) {
    for (auto attr : kAttributes) {
      if (p[i].present(attr)) ++r.per_attribute[static_cast<int>(attr)].fp;
    }
  }
  for (auto j : r.assignment.unmatched_gold) {
    for (auto attr : kAttributes) {
      if (g[j].present(attr)) ++r.per_attribute[static_cast<int>(attr)].fn;
    }
  }
  for (const auto& c : r.per_attribute) r.total += c;
  return r;
}

Counts strict_metrics(std::span<const Sample> preds, std::span<const Sample> golds) {
  const auto p = aggregate(preds);
  const auto g = aggregate(golds);
  const auto matched = solve(p, g, [](const AggregatedSample& a, const AggregatedSample& b) {
    return static_cast<std::int64_t>(same_sample(a, b) ? 1 : 0);
  });
  Counts c;
  c.tp = matched.size();
  c.fp = p.size() - matched.size();
  c.fn = g.size() - matched.size();
  return c;
}

MetricsReport evaluate_document(std::span<const Sample> preds, std::span<const Sample> golds) {
  MetricsReport r;
  const auto partial = partial_metrics(preds, golds);
  r.partial = partial.total;
  r.per_attribute = partial.per_attribute;
  r.strict = strict_metrics(preds, golds);
  return r;
}

MetricsReport corpus_metrics(std::span<const MetricsReport> documents) {
  if (documents.empty()) throw InvalidArgument("corpus_metrics needs at least one document");
  MetricsReport total;
  for (const auto& d : documents) {
    total.partial += d.partial;
    total.strict += d.strict;
    for (std::size_t i = 0; i < 3; ++i) total.per_attribute[i] += d.per_attribute[i];
  }
  return total;
}

namespace {
ordered_json regime_json(const Counts& c) {
  const auto s = score(c);
  return ordered_json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},
                      {"tp", c.tp},               {"fp", c.fp},         {"fn", c.fn}};
}
}  // namespace

ordered_json to_json(const MetricsReport& report) {
  ordered_json j;
  j["strict"] = regime_json(report.strict);
  j["partial"] = regime_json(report.partial);
  ordered_json attrs = ordered_json::object();
  for (auto a : kAttributes) attrs[attribute_name(a)] = regime_json(report.per_attribute[static_cast<int>(a)]);
  j["per_attribute"] = std::move(attrs);
  return j;
}

std::string render_summary_table(const MetricsReport& report, const std::string& label) {
  const auto s = report.strict_scores();
  const auto p = report.partial_scores();
  std::string out = fmt::format("{:<16} {:>6} {:>6} {:>6}   {:>6} {:>6} {:>6}\n", "", "Strict", "", "", "Partial", "",
                                "");
  out += fmt::format("{:<16} {:>6} {:>6} {:>6}   {:>6} {:>6} {:>6}\n", "", "P", "R", "F1", "P", "R", "F1");
  out += fmt::format("{:<16} {:>6.1f} {:>6.1f} {:>6.1f}   {:>6.1f} {:>6.1f} {:>6.1f}\n", label, 100 * s.precision,
                     100 * s.recall, 100 * s.f1, 100 * p.precision, 100 * p.recall, 100 * p.f1);
  return out;
}

std::string render_attribute_table(const MetricsReport& report) {
  std::string out = fmt::format("{:<12} {:>6} {:>6} {:>6}\n", "Attributes", "P", "R", "F1");
  for (auto a : kAttributes) {
    const auto s = report.attribute_scores(a);
    out += fmt::format("{:<12} {:>6.1f} {:>6.1f} {:>6.1f}\n", attribute_name(a), 100 * s.precision, 100 * s.recall,
                       100 * s.f1);
  }
  return out;
}

}  // namespace nanoie
