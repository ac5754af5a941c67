#include <doctest.h>

#include "nanoie/cli.hpp"
#include "nanoie/error.hpp"
#include "nanoie/pipeline.hpp"
#include "nanoie/prompts.hpp"
#include "support/fixtures.hpp"

using namespace nanoie;
using nanoie::testing::kFixtures;

namespace {

const CanonicalLexicon& lexicon() {
  static const auto lex = CanonicalLexicon::load(nanoie::testing::kLexicon);
  return lex;
}

std::vector<Document> corpus() { return cli::load_documents({(kFixtures / "pipeline/docs").string()}); }

std::unique_ptr<MockProvider> mock() { return MockProvider::load(kFixtures / "pipeline/mock.json"); }

}  // namespace

TEST_CASE("config validation") {
  PipelineConfig c;
  CHECK_NOTHROW(validate(c));
  c.condense_k = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.condense_k = 3;
  c.self_consistency = SelfConsistency{8, 9};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.self_consistency = SelfConsistency{8, 0};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.self_consistency = SelfConsistency{8, 3};
  c.strategy = Strategy::nerre;
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK(parse_strategy("ner+re") == Strategy::nerre);
  CHECK_THROWS_AS(parse_strategy("zero-shot"), ConfigError);
}

TEST_CASE("e2e pipeline standardizes predictions") {
  auto p = mock();
  const auto docs = corpus();
  const auto r = run_pipeline(docs, PipelineConfig{}, *p, lexicon(), nullptr);
  REQUIRE(r.predictions.size() == 3);
  CHECK(r.calls.size() == 3);
  // documents load in file-name order: epoxy_go, ps_silica, pvdf_bt
  const auto& ps = r.predictions[1];
  CHECK(ps.doc_id == "ps_silica");
  REQUIRE(ps.samples.size() == 3);
  CHECK(ps.samples[0].matrix_name == "Polystyrene");
  CHECK(ps.samples[0].filler_name == "Silica");
  CHECK(std::get<double>(*ps.samples[1].mass_fraction) == 0.05);
  CHECK(r.manifest.at("config").at("temperature") == 0.0);
  CHECK(r.manifest.at("model_id") == "mock-fixture");
  CHECK(r.manifest.contains("timings"));
}

TEST_CASE("self-consistency pipeline votes at temperature 0.7") {
  auto p = mock();
  PipelineConfig c;
  c.self_consistency = SelfConsistency{8, 3};
  c.seed = 7;
  const auto docs = corpus();
  const auto r = run_pipeline(docs, c, *p, lexicon(), nullptr);
  CHECK(r.calls.size() == 24);
  CHECK(r.vote_audits.size() == 3);
  for (const auto& audit : r.vote_audits) {
    CHECK(audit.at("runs") == 8);
    for (const auto& v : audit.at("votes")) {
      CHECK(v.at("retained") == (v.at("match_count").get<int>() >= 3));
    }
  }
  CHECK(r.manifest.at("config").at("temperature") == 0.7);
}

TEST_CASE("NER+RE pipeline") {
  auto p = mock();
  PipelineConfig c;
  c.strategy = Strategy::nerre;
  c.parallelism = 4;
  const auto docs = corpus();
  const auto r = run_pipeline(docs, c, *p, lexicon(), nullptr);
  // ps_silica: 1 x 1 x 4 candidates, epoxy_go: 2, pvdf_bt: 2
  CHECK(r.calls.size() == 3 + 4 + 2 + 2);
  REQUIRE(r.predictions.size() == 3);
  CHECK(r.predictions[1].samples.size() == 3);
  CHECK(r.predictions[0].samples.size() == 2);
}

TEST_CASE("condensation feeds the shortened document") {
  auto p = mock();
  PipelineConfig c;
  c.condense_k = 1;
  c.segment_tokens = 12;
  LexicalBackend backend;
  const auto docs = corpus();
  const auto r = run_pipeline(docs, c, *p, lexicon(), &backend);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(r.outcomes[i].ok);
    CHECK(r.outcomes[i].input_tokens <= docs[i].token_count());
  }
  PipelineConfig missing = c;
  const auto failed = run_pipeline(docs, missing, *p, lexicon(), nullptr);
  CHECK_FALSE(failed.outcomes[0].ok);
}

TEST_CASE("one failing document does not stop the run") {
  ScriptedProvider p([](const CompletionRequest& r) -> std::string {
    if (r.prompt.find("boom") != std::string::npos) throw Error("provider rejected the request");
    return R"([{"Matrix Chemical Name": "PS", "Filler Chemical Name": "silica"}])";
  });
  const std::vector<Document> docs = {{"a", "fine text"}, {"b", "boom"}, {"c", "more text"}};
  PipelineConfig c;
  c.retry.initial_backoff = std::chrono::milliseconds(0);
  const auto r = run_pipeline(docs, c, p, lexicon(), nullptr);
  CHECK(r.predictions.size() == 2);
  CHECK_FALSE(r.outcomes[1].ok);
  CHECK(r.outcomes[1].error.find("rejected") != std::string::npos);
  CHECK(r.manifest.at("failed_documents") == 1);
}

TEST_CASE("pipeline outputs on disk") {
  auto p = mock();
  const auto docs = corpus();
  PipelineConfig c;
  c.self_consistency = SelfConsistency{4, 2};
  const auto r = run_pipeline(docs, c, *p, lexicon(), nullptr);
  nanoie::testing::TempDir dir("pipeline");
  write_pipeline_outputs(r, dir.path());
  CHECK(std::filesystem::exists(dir.path() / "predictions/ps_silica.json"));
  CHECK(std::filesystem::exists(dir.path() / "votes/ps_silica.json"));
  CHECK(std::filesystem::exists(dir.path() / "manifest.json"));
  const auto calls = nanoie::testing::slurp(dir.path() / "calls.jsonl");
  CHECK(std::count(calls.begin(), calls.end(), '\n') == 12);
  const auto back = parse_gold_file(nanoie::testing::slurp(dir.path() / "predictions/epoxy_go.json"));
  CHECK(back.at(0).doc_id == "epoxy_go");
}
