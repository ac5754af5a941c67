#include <doctest.h>

#include "nanoie/consistency.hpp"
#include "nanoie/error.hpp"
#include "support/generators.hpp"

using namespace nanoie;

namespace {

Sample make(std::string m, std::string f, double mass) {
  Sample s;
  s.normalization = Normalization::standardized;
  s.matrix_name = std::move(m);
  s.filler_name = std::move(f);
  s.mass_fraction = mass;
  return s;
}

}  // namespace

TEST_CASE("votes count lists, not occurrences") {
  const auto a = make("PS", "Silica", 0.05);
  const auto b = make("PS", "Silica", 0.1);
  const auto c = make("Epoxy", "GO", 0.01);
  PredictionRun run{"d", {{"d", {a, a, b}}, {"d", {b}}, {"d", {c, a}}}};
  const auto v = vote(run);
  REQUIRE(v.samples.size() == 3);
  CHECK(v.runs == 3);
  CHECK(v.samples[0].sample == a);
  CHECK(v.samples[0].match_count == 2);
  CHECK(v.samples[1].match_count == 2);
  CHECK(v.samples[2].match_count == 1);
  CHECK(v.samples[2].first_list == 2);
  CHECK(filter(v, 2).samples.size() == 2);
  CHECK(filter(v, 3).samples.empty());
  CHECK(filter(v, 1).samples.size() == 3);
}

TEST_CASE("equality uses aggregated slots") {
  auto a = make("PS", "Silica", 0.05);
  auto b = a;
  b.matrix_name = "Polystyrene";
  a.matrix_abbrev = "PS";
  b.matrix_abbrev = "PS";
  const auto v = vote({"d", {{"d", {a}}, {"d", {b}}}});
  REQUIRE(v.samples.size() == 1);
  CHECK(v.samples[0].match_count == 2);
}

TEST_CASE("filter ranks by count then first appearance") {
  const auto a = make("A", "B", 0.1);
  const auto b = make("C", "D", 0.2);
  const auto v = vote({"d", {{"d", {a, b}}, {"d", {b}}}});
  const auto kept = filter(v, 1);
  REQUIRE(kept.samples.size() == 2);
  CHECK(kept.samples[0] == b);
  CHECK(kept.samples[1] == a);
}

TEST_CASE("vote argument checks") {
  CHECK_THROWS_AS(vote({"d", {}}), InvalidArgument);
  const auto v = vote({"d", {{"d", {}}, {"d", {}}}});
  CHECK_THROWS_AS(filter(v, 0), InvalidArgument);
  CHECK_THROWS_AS(filter(v, 3), InvalidArgument);
  CHECK(filter(v, 2).samples.empty());
}

TEST_CASE("audit records every candidate") {
  const auto a = make("A", "B", 0.1);
  const auto v = vote({"d", {{"d", {a}}, {"d", {}}}});
  const auto j = vote_audit(v, 2);
  CHECK(j.at("runs") == 2);
  CHECK(j.at("alpha") == 2);
  REQUIRE(j.at("votes").size() == 1);
  CHECK(j.at("votes")[0].at("retained") == false);
}

TEST_CASE("deduplicate within a list") {
  const auto a = make("A", "B", 0.1);
  auto a2 = a;
  a2.mass_fraction = 0.1 * (1 + 1e-5);
  CHECK(deduplicate({"d", {a, a2, a}}).samples.size() == 1);
}
