#include <doctest.h>

#include <algorithm>

#include "nanoie/assignment.hpp"
#include "nanoie/error.hpp"
#include "nanoie/metrics.hpp"
#include "support/generators.hpp"

using namespace nanoie;

namespace {

Sample make(std::optional<std::string> m, std::optional<std::string> f, std::optional<double> mass,
            std::optional<std::string> ma = std::nullopt, std::optional<std::string> fa = std::nullopt,
            std::optional<double> vol = std::nullopt) {
  Sample s;
  s.normalization = Normalization::standardized;
  s.matrix_name = std::move(m);
  s.filler_name = std::move(f);
  s.matrix_abbrev = std::move(ma);
  s.filler_abbrev = std::move(fa);
  if (mass) s.mass_fraction = *mass;
  if (vol) s.volume_fraction = *vol;
  return s;
}

}  // namespace

TEST_CASE("max weight assignment on small matrices") {
  CHECK(max_weight_assignment({}).empty());
  const auto a = max_weight_assignment({{3, 1}, {3, 0}});
  REQUIRE(a.size() == 2);
  CHECK(a[0] == 1u);
  CHECK(a[1] == 0u);
  const auto rect = max_weight_assignment({{0, 2, 1}});
  CHECK(rect[0] == 1u);
  const auto tall = max_weight_assignment({{1}, {2}, {0}});
  CHECK_FALSE(tall[0]);
  CHECK(tall[1] == 0u);
  CHECK_FALSE(tall[2]);
}

TEST_CASE("composition tolerance") {
  CHECK(compositions_equal(0.05, 0.05));
  CHECK(compositions_equal(0.05, 0.05 * (1 + 5e-4)));
  CHECK_FALSE(compositions_equal(0.05, 0.0502));
  CHECK(compositions_equal(0.0, 5e-7));
  CHECK_FALSE(compositions_equal(0.0, 1e-5));
}

TEST_CASE("aggregated slot matching") {
  const auto gold = AggregatedSample::from(make("Polystyrene", "Silica", 0.05, "PS", std::nullopt));
  CHECK(matched_slots(AggregatedSample::from(make(std::nullopt, "silica", 0.05, "ps")), gold) == 3);
  CHECK(matched_slots(AggregatedSample::from(make("Epoxy", "Silica", 0.05, "PS")), gold) == 3);
  CHECK(matched_slots(AggregatedSample::from(make("Epoxy", "Silica", 0.1)), gold) == 1);
  const auto vol = AggregatedSample::from(make("A", "B", 0.1, std::nullopt, std::nullopt, 0.02));
  CHECK(slot_matches(AggregatedSample::from(make("A", "B", std::nullopt, std::nullopt, std::nullopt, 0.02)), vol)[2]);
  CHECK(pair_score(make("A", "B", 0.1), make("A", "C", 0.2)) == doctest::Approx(1.0 / 3));
}

TEST_CASE("absent slots never match") {
  const auto a = AggregatedSample::from(make("A", "B", std::nullopt));
  CHECK_FALSE(slot_matches(a, a)[2]);
  CHECK(matched_slots(a, a) == 2);
}

TEST_CASE("unstandardized input is rejected") {
  Sample raw;
  raw.matrix_name = "x";
  CHECK_THROWS_AS(AggregatedSample::from(raw), NotStandardized);
  auto s = make("A", "B", std::nullopt);
  s.mass_fraction = Fraction{std::string("5%")};
  CHECK_THROWS_AS(AggregatedSample::from(s), NotStandardized);
}

TEST_CASE("partial counts follow the worked example") {
  // Gold has two samples; the prediction gets one fully right and misses the
  // filler of the second, adds a third sample that matches nothing.
  const std::vector<Sample> gold = {make("PS", "Silica", 0.05), make("PS", "Silica", 0.10)};
  const std::vector<Sample> pred = {make("PS", "Silica", 0.05), make("PS", "Alumina", 0.10),
                                    make("Epoxy", "GO", 0.3)};
  const auto p = partial_metrics(pred, gold);
  CHECK(p.total == Counts{5, 4, 1});
  CHECK(p.per_attribute[0] == Counts{2, 1, 0});
  CHECK(p.per_attribute[1] == Counts{1, 2, 1});
  CHECK(p.per_attribute[2] == Counts{2, 1, 0});
  CHECK(strict_metrics(pred, gold) == Counts{1, 2, 1});
}

TEST_CASE("scores handle zero denominators") {
  const auto z = score({0, 0, 0});
  CHECK(z.precision == 0.0);
  CHECK(z.recall == 0.0);
  CHECK(z.f1 == 0.0);
  const auto s = score({3, 1, 2});
  CHECK(s.precision == 0.75);
  CHECK(s.recall == 0.6);
  CHECK(s.f1 == doctest::Approx(2.0 * 3 / (2 * 3 + 1 + 2)));
}

TEST_CASE("strict matching is maximum cardinality") {
  // p0 equals both golds (via name or abbreviation); p1 only equals g0. A
  // greedy pass taking p0-g0 first would find one pair.
  const auto g0 = make("A", "B", 0.1, "X");
  const auto g1 = make("Z", "B", 0.1, "Y");
  const auto p0 = make("Z", "B", 0.1, "X");
  const auto p1 = make("A", "B", 0.1);
  CHECK(strict_metrics(std::vector{p0, p1}, std::vector{g0, g1}) == Counts{2, 0, 0});
}

TEST_CASE("corpus metrics sum counts") {
  const std::vector<Sample> g = {make("A", "B", 0.1)};
  const auto r1 = evaluate_document(g, g);
  const auto r2 = evaluate_document({}, g);
  const auto c = corpus_metrics(std::vector{r1, r2});
  CHECK(c.strict == Counts{1, 0, 1});
  CHECK(c.partial == Counts{3, 0, 3});
  CHECK_THROWS_AS(corpus_metrics(std::vector<MetricsReport>{}), InvalidArgument);
  const auto j = to_json(c);
  CHECK(j.at("strict").at("tp") == 1);
  const auto table = render_summary_table(c, "corpus");
  CHECK(table.find("corpus") != std::string::npos);
  CHECK(render_attribute_table(c).find("Composition") != std::string::npos);
}

TEST_CASE("optimal assignment agrees with enumeration") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto preds = testing::random_samples(rng, 5);
    const auto golds = testing::random_samples(rng, 5);
    const auto a = optimal_assignment(preds, golds);
    CHECK(a.total_matched_slots() == testing::brute_force_max_slots(preds, golds));
    CHECK(a.pairs.size() + a.unmatched_pred.size() == preds.size());
    CHECK(a.pairs.size() + a.unmatched_gold.size() == golds.size());
    CHECK(strict_metrics(preds, golds).tp == testing::brute_force_exact_pairs(preds, golds));
  }
}

TEST_CASE("count conservation") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto preds = testing::random_samples(rng, 6);
    const auto golds = testing::random_samples(rng, 6);
    const auto r = evaluate_document(preds, golds);
    CHECK(r.strict.tp + r.strict.fp == preds.size());
    CHECK(r.strict.tp + r.strict.fn == golds.size());
    Counts sum;
    for (const auto& c : r.per_attribute) sum += c;
    CHECK(sum == r.partial);
  }
}

TEST_CASE("removing a gold sample cannot add true positives") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto preds = testing::random_samples(rng, 5);
    auto golds = testing::random_samples(rng, 5);
    if (golds.empty()) continue;
    const auto before = strict_metrics(preds, golds);
    golds.erase(golds.begin() + static_cast<long>(testing::uniform(rng, 0, golds.size() - 1)));
    const auto after = strict_metrics(preds, golds);
    CHECK(after.tp <= before.tp);
    CHECK(after.fp >= before.fp);
  }
}
