#include <doctest.h>

#include "nanoie/bootstrap.hpp"
#include "nanoie/error.hpp"

using namespace nanoie;

namespace {

DocumentScore doc(std::string id, std::size_t tokens, Counts strict) {
  DocumentScore d{std::move(id), tokens, {}};
  d.report.strict = strict;
  d.report.partial = strict;
  return d;
}

}  // namespace

TEST_CASE("percentile interpolates linearly") {
  const std::vector<double> v = {1, 2, 3, 4};
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK(percentile(v, 1.0) == 4.0);
  CHECK(percentile(v, 0.5) == 2.5);
  CHECK(percentile(std::vector<double>{7}, 0.3) == 7.0);
  CHECK_THROWS_AS(percentile(std::vector<double>{}, 0.5), InvalidArgument);
}

TEST_CASE("bootstrap stratifies by length and is seeded") {
  const std::vector<DocumentScore> docs = {doc("a", 100, {1, 1, 0}), doc("b", 5000, {0, 2, 2}),
                                           doc("c", 9000, {3, 0, 1}), doc("d", 12000, {1, 0, 0})};
  BootstrapOptions o;
  o.resamples = 300;
  o.seed = 42;
  const auto r1 = bootstrap_f1(docs, o);
  const auto r2 = bootstrap_f1(std::vector{docs[3], docs[1], docs[2], docs[0]}, o);
  REQUIRE(r1.strata.size() == 2);
  CHECK(r1.strata[0].documents == 2);
  CHECK(r1.strata[1].documents == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r1.strata[i].mean_f1 == r2.strata[i].mean_f1);
    CHECK(r1.strata[i].sd == r2.strata[i].sd);
    CHECK(r1.strata[i].ci_low <= r1.strata[i].mean_f1);
    CHECK(r1.strata[i].ci_high >= r1.strata[i].mean_f1);
    CHECK(r1.strata[i].sd > 0.0);
  }
  o.seed = 43;
  CHECK(bootstrap_f1(docs, o).strata[0].mean_f1 != r1.strata[0].mean_f1);
}

TEST_CASE("empty strata are reported, not fabricated") {
  BootstrapOptions o;
  o.resamples = 10;
  const auto r = bootstrap_f1(std::vector{doc("a", 10, {1, 0, 0})}, o);
  CHECK(r.strata.size() == 1);
  CHECK(r.diagnostics.size() == 1);
}

TEST_CASE("identical documents give zero spread") {
  std::vector<DocumentScore> docs;
  for (int i = 0; i < 6; ++i) docs.push_back(doc("d" + std::to_string(i), 50, {2, 1, 1}));
  BootstrapOptions o;
  o.resamples = 200;
  o.strata = {{0, 100}};
  const auto r = bootstrap_f1(docs, o);
  REQUIRE(r.strata.size() == 1);
  CHECK(r.strata[0].sd == 0.0);
  CHECK(r.strata[0].ci_low == r.strata[0].ci_high);
}

TEST_CASE("bootstrap argument checks") {
  BootstrapOptions o;
  o.resamples = 0;
  CHECK_THROWS_AS(bootstrap_f1({}, o), InvalidArgument);
  o.resamples = 5;
  o.confidence = 1.0;
  CHECK_THROWS_AS(bootstrap_f1({}, o), InvalidArgument);
}
