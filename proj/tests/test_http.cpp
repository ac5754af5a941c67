#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <thread>

#include "nanoie/embedding.hpp"
#include "nanoie/error.hpp"
#include "nanoie/provider.hpp"

using namespace nanoie;

namespace {

// Local HTTP server on an ephemeral port, torn down with the fixture.
class LocalServer {
 public:
  LocalServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// Two-dimensional embedding: (count of "silica", count of "matrix") + 1e-3.
std::vector<double> toy_embedding(const std::string& t) {
  auto count = [&](const std::string& w) {
    double n = 0;
    for (auto p = t.find(w); p != std::string::npos; p = t.find(w, p + 1)) ++n;
    return n;
  };
  return {count("silica") + 1e-3, count("matrix") + 1e-3};
}

}  // namespace

TEST_CASE("embedding backend talks to an embeddings endpoint") {
  LocalServer srv;
  std::atomic<int> requests{0};
  std::string seen_auth;
  srv.server().Post("/v1/embeddings", [&](const httplib::Request& req, httplib::Response& res) {
    ++requests;
    seen_auth = req.get_header_value("Authorization");
    const auto body = ordered_json::parse(req.body);
    ordered_json data = ordered_json::array();
    const auto& input = body.at("input");
    // reply in reverse order to exercise the index field
    for (std::size_t i = input.size(); i-- > 0;) {
      data.push_back({{"index", i}, {"embedding", toy_embedding(input[i].get<std::string>())}});
    }
    res.set_content(ordered_json{{"data", data}}.dump(), "application/json");
  });

  EmbeddingSettings s;
  s.url = srv.url("/v1/embeddings");
  s.api_key = "secret";
  s.model = "toy";
  s.batch_size = 2;
  EmbeddingBackend backend(s);
  const std::vector<Segment> segs = {{"d", 0, "the matrix was epoxy", 4}, {"d", 1, "silica silica filler", 3}};
  const auto scores = backend.score("which silica", segs);
  REQUIRE(scores.size() == 2);
  CHECK(scores[1] > scores[0]);
  CHECK(requests == 2);
  CHECK(seen_auth == "Bearer secret");
}

TEST_CASE("embedding endpoint failures surface as errors") {
  LocalServer srv;
  srv.server().Post("/busy", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  srv.server().Post("/bad", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"data": []})", "application/json");
  });
  EmbeddingSettings s;
  s.url = srv.url("/busy");
  CHECK_THROWS_AS(EmbeddingBackend(s).embed({"x"}), TransportError);
  s.url = srv.url("/bad");
  CHECK_THROWS_AS(EmbeddingBackend(s).embed({"x"}), Error);
  CHECK_THROWS_AS(EmbeddingBackend(EmbeddingSettings{}), ConfigError);
  CHECK_THROWS_AS(make_backend("nope"), ConfigError);
  CHECK(make_backend("lexical")->name() == "lexical");
}

TEST_CASE("chat provider posts chat completions") {
  LocalServer srv;
  ordered_json last;
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    last = ordered_json::parse(req.body);
    res.set_content(R"({"choices": [{"message": {"role": "assistant", "content": "Yes"}}]})", "application/json");
  });
  srv.server().Post("/empty", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"choices": []})", "application/json");
  });
  ChatApiSettings s;
  s.url = srv.url("/v1/chat/completions");
  s.model = "test-model";
  ChatApiProvider p(s);
  CHECK(p.complete({"hello", 0.7, 10, 3, 2}) == "Yes");
  CHECK(last.at("model") == "test-model");
  CHECK(last.at("messages")[0].at("content") == "hello");
  CHECK(last.at("max_tokens") == 10);
  CHECK(last.at("seed") == 5);
  s.url = srv.url("/empty");
  ChatApiProvider empty(s);
  CHECK_THROWS_AS(empty.complete({"hello"}), TransportError);
  CHECK_THROWS_AS(ChatApiProvider(ChatApiSettings{}), ConfigError);
}

TEST_CASE("unreachable endpoint is a transport error") {
  ChatApiSettings s;
  s.url = "http://127.0.0.1:1/v1/chat/completions";
  s.model = "m";
  s.timeout_seconds = 2;
  ChatApiProvider p(s);
  CHECK_THROWS_AS(p.complete({"hi"}), TransportError);
}
