#include <doctest.h>

#include <cmath>
#include <limits>

#include "nanoie/condense.hpp"
#include "nanoie/error.hpp"
#include "nanoie/text.hpp"
#include "support/generators.hpp"

using namespace nanoie;

namespace {

// Scores segments by a fixed table, so selection logic is tested on its own.
class TableBackend final : public SimilarityBackend {
 public:
  explicit TableBackend(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {}
  std::vector<double> score(std::string_view query, std::span<const Segment>) const override {
    return rows_.at(std::stoul(std::string(query)));
  }
  std::string name() const override { return "table"; }

 private:
  std::vector<std::vector<double>> rows_;
};

Document numbered(std::size_t sentences) {
  std::string body;
  for (std::size_t i = 0; i < sentences; ++i) body += "Sentence number " + std::to_string(i) + " ends here. ";
  return {"doc", body};
}

}  // namespace

TEST_CASE("segments keep sentences whole") {
  const auto segs = segment_document(numbered(10), 10);
  // each sentence is 5 tokens, so two fit per segment
  REQUIRE(segs.size() == 5);
  CHECK(segs[0].text == "Sentence number 0 ends here. Sentence number 1 ends here.");
  CHECK(segs[4].index == 4);
  for (const auto& s : segs) CHECK(s.token_count <= 10);
}

TEST_CASE("abbreviations do not end sentences") {
  // Were "e.g." terminal, "X." and "A e.g." would pack into one segment.
  const auto segs = segment_document({"d", "X. A e.g. B C."}, 3);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].text == "X.");
  CHECK(segs[1].text == "A e.g. B");
  const auto wt = segment_document({"d", "X. at 5 wt. % here."}, 3);
  CHECK(wt[0].text == "X.");
}

TEST_CASE("long sentences are cut into windows") {
  std::string body;
  for (int i = 0; i < 25; ++i) body += "w" + std::to_string(i) + " ";
  const auto segs = segment_document({"d", body}, 10);
  REQUIRE(segs.size() == 3);
  CHECK(segs[2].token_count == 5);
}

TEST_CASE("segmentation errors") {
  CHECK_THROWS_AS(segment_document({"d", "   "}), InvalidArgument);
  CHECK_THROWS_AS(segment_document({"d", "text"}, 0), InvalidArgument);
}

TEST_CASE("segments cover every token in order") {
  const auto doc = numbered(37);
  std::string joined;
  for (const auto& s : segment_document(doc, 13)) joined += s.text + " ";
  std::string expected;
  for (auto t : nanoie::text::whitespace_tokens(doc.body())) expected += std::string(t) + " ";
  CHECK(joined == expected);
}

TEST_CASE("top_k ties and NaN") {
  const std::vector<double> s = {0.5, 0.9, 0.5, std::numeric_limits<double>::quiet_NaN(), 0.9};
  CHECK(top_k(s, 3) == std::vector<std::size_t>{1, 4, 0});
  CHECK(top_k(s, 10).size() == 5);
  CHECK(top_k(s, 10).back() == 3);
}

TEST_CASE("condensed body is the ordered union of per-query picks") {
  const auto doc = numbered(8);
  const auto segs = segment_document(doc, 5);
  REQUIRE(segs.size() == 8);
  TableBackend backend({{0, 0, 0, 0, 0, 0.9, 0.8, 0}, {0.7, 0, 0, 0, 0, 0.95, 0, 0}});
  const QuerySet q{{"0", "1"}};
  const auto c = condense_segments(doc, segs, q, 2, backend);
  CHECK(c.selected == std::vector<std::size_t>{0, 5, 6});
  CHECK(c.document.body() == segs[0].text + "\n" + segs[5].text + "\n" + segs[6].text);
  CHECK(c.document.doc_id() == "doc");
  CHECK_THROWS_AS(condense_segments(doc, segs, q, 0, backend), InvalidArgument);
  CHECK_THROWS_AS(condense_segments(doc, segs, QuerySet{}, 1, backend), InvalidArgument);
}

TEST_CASE("lexical backend prefers relevant segments") {
  const Document d{"d",
                   "The weather was pleasant during the conference. "
                   "Polystyrene served as the polymer matrix for all composites. "
                   "Silica nanoparticles were used as the filler at 5 wt% loading. "
                   "Results are discussed in the next section."};
  const auto c = condense(d, QuerySet{{"What chemical is used in the polymer matrix?"}}, 1, LexicalBackend{}, 12);
  REQUIRE(c.selected.size() == 1);
  CHECK(c.document.body().find("Polystyrene") != std::string::npos);
  const auto scores = LexicalBackend{}.score("zzz unmatched", segment_document(d, 12));
  for (double s : scores) CHECK(s == 0.0);
}

TEST_CASE("stemming and terms") {
  CHECK(stem("composites") == "composite");
  CHECK(stem("properties") == "property");
  CHECK(stem("glass") == "glass");
  CHECK(lexical_terms("Fillers, loaded!") == std::vector<std::string>{"filler", "load"});
}

TEST_CASE("query files") {
  const auto q = QuerySet::from_lines("first\n\n  second  \n");
  CHECK(q.queries == std::vector<std::string>{"first", "second"});
  CHECK(QuerySet::defaults().queries.size() == 4);
}
