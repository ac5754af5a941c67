#include "nanoie/provider.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include "http_util.hpp"
#include "nanoie/error.hpp"
#include "nanoie/prompts.hpp"

namespace nanoie {

std::uint64_t stable_hash(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

ScriptedProvider::ScriptedProvider(Responder responder, std::string model_id, std::size_t context_limit,
                                   std::size_t concurrency)
    : responder_(std::move(responder)),
      model_id_(std::move(model_id)),
      context_limit_(context_limit),
      concurrency_(concurrency) {}

std::string ScriptedProvider::complete(const CompletionRequest& request) {
  ++calls_;
  return responder_(request);
}

MockProvider::MockProvider(const ordered_json& fixture) {
  model_id_ = fixture.value("model_id", std::string("mock"));
  context_limit_ = fixture.value("context_limit", std::size_t{128000});
  auto parse = [](const ordered_json& j) {
    Script s;
    s.match = j.value("match", std::string());
    if (j.contains("e2e")) {
      const auto& e = j.at("e2e");
      s.e2e = e.is_array() ? e.get<std::vector<std::string>>() : std::vector<std::string>{e.get<std::string>()};
    }
    s.ner = j.value("ner", std::string("{}"));
    if (j.contains("re_yes")) s.re_yes = j.at("re_yes").get<std::vector<std::vector<std::string>>>();
    if (s.e2e.empty()) s.e2e.emplace_back("[]");
    return s;
  };
  try {
    if (fixture.contains("documents")) {
      for (const auto& d : fixture.at("documents")) documents_.push_back(parse(d));
    }
    fallback_ = parse(fixture.value("default", ordered_json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed mock provider fixture: ") + e.what());
  }
}

std::unique_ptr<MockProvider> MockProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open mock provider fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto j = ordered_json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("mock provider fixture is not JSON: " + path.string());
  return std::make_unique<MockProvider>(j);
}

const MockProvider::Script& MockProvider::script_for(std::string_view prompt) const {
  for (const auto& d : documents_) {
    if (!d.match.empty() && prompt.find(d.match) != std::string_view::npos) return d;
  }
  return fallback_;
}

std::string MockProvider::complete(const CompletionRequest& request) {
  const auto& script = script_for(request.prompt);
  switch (prompts::classify(request.prompt)) {
    case prompts::Kind::e2e: {
      if (request.temperature == 0.0) return script.e2e.front();
      const auto h = mix(stable_hash(request.prompt, request.seed) ^ mix(request.sample_index));
      return script.e2e[h % script.e2e.size()];
    }
    case prompts::Kind::ner:
      return script.ner;
    case prompts::Kind::re: {
      const auto sample = prompts::re_sample(request.prompt);
      for (const auto& rule : script.re_yes) {
        bool all = true;
        for (const auto& needle : rule) all = all && sample.find(needle) != std::string_view::npos;
        if (all) return "Yes";
      }
      return "No";
    }
    case prompts::Kind::unknown:
      break;
  }
  throw Error("mock provider does not recognize the prompt");
}

ChatApiProvider::ChatApiProvider(ChatApiSettings settings) : settings_(std::move(settings)) {
  if (settings_.url.empty()) throw ConfigError("chat provider needs an endpoint URL");
  if (settings_.model.empty()) throw ConfigError("chat provider needs a model id");
  if (settings_.concurrency == 0) settings_.concurrency = 1;
}

void ChatApiProvider::wait_for_slot() {
  if (settings_.requests_per_minute <= 0) return;
  const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(60.0 / settings_.requests_per_minute));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(rate_mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_slot_);
    next_slot_ = slot + interval;
  }
  std::this_thread::sleep_until(slot);
}

std::string ChatApiProvider::complete(const CompletionRequest& request) {
  wait_for_slot();
  ordered_json body{{"model", settings_.model},
                    {"messages", ordered_json::array({{{"role", "user"}, {"content", request.prompt}}})},
                    {"temperature", request.temperature},
                    {"max_tokens", request.max_output}};
  if (request.temperature > 0) body["seed"] = request.seed + request.sample_index;
  const auto res = detail::post_json(settings_.url, body, settings_.api_key, settings_.timeout_seconds);
  try {
    return res.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw TransportError("chat response lacks choices[0].message.content");
  }
}

std::unique_ptr<CompletionProvider> make_provider(const ProviderSettings& settings) {
  if (settings.kind == "mock") {
    if (settings.fixture.empty()) throw ConfigError("mock provider needs a fixture file");
    return MockProvider::load(settings.fixture);
  }
  if (settings.kind == "chat") return std::make_unique<ChatApiProvider>(settings.chat);
  throw ConfigError("unknown provider kind '" + settings.kind + "' (expected mock or chat)");
}

}  // namespace nanoie
