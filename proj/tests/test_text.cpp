#include <doctest.h>

#include <cmath>
#include <limits>

#include "nanoie/text.hpp"

using namespace nanoie::text;

TEST_CASE("trim and case helpers") {
  CHECK(trim("  a b \n") == "a b");
  CHECK(trim(" \t ").empty());
  CHECK(to_lower("PolyStyrene") == "polystyrene");
  CHECK(iequals("rGO", "RGO"));
  CHECK_FALSE(iequals("rGO", "rGOs"));
}

TEST_CASE("whitespace tokens") {
  CHECK(count_tokens("") == 0);
  CHECK(count_tokens("  one\ttwo\n\nthree ") == 3);
  const auto toks = whitespace_tokens("a  b");
  REQUIRE(toks.size() == 2);
  CHECK(toks[1] == "b");
}

TEST_CASE("folding for fuzzy matching") {
  CHECK(fold_for_matching("Poly(methyl methacrylate)") == "polymethyl methacrylate");
  CHECK(fold_for_matching("  Multi-walled   carbon  ") == "multiwalled carbon");
}

TEST_CASE("edit distance") {
  CHECK(edit_distance("", "") == 0);
  CHECK(edit_distance("kitten", "sitting") == 3);
  CHECK(edit_distance("abc", "") == 3);
  CHECK(edit_similarity("", "") == 1.0);
  CHECK(edit_similarity("abcd", "abcx") == doctest::Approx(0.75));
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.005) == "0.005");
  CHECK(format_double(1.0) == "1");
  for (double v : {0.1, 1e-7, 0.333333333333, 12345.678}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("number parsing") {
  CHECK(parse_number("0.5") == 0.5);
  CHECK(parse_number("-2") == -2.0);
  CHECK(parse_number(".25") == 0.25);
  CHECK_FALSE(parse_number("inf"));
  CHECK_FALSE(parse_number("nan"));
  CHECK_FALSE(parse_number("5%"));
  CHECK_FALSE(parse_number(""));
  CHECK_FALSE(parse_number("abc"));
}
