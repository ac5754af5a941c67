#pragma once

// Completion providers: the interface the extraction pipelines talk to, a
// scripted provider for tests, a fixture-driven mock for reproducible runs
// and a client for OpenAI-compatible chat endpoints.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "nanoie/model.hpp"

namespace nanoie {

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.0;
  std::size_t max_output = 4096;
  std::uint64_t seed = 0;
  /// Which of several stochastic draws this is (self-consistency).
  std::size_t sample_index = 0;
};

class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;

  /// Throws TransportError for retriable failures.
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual std::string model_id() const = 0;
  virtual std::size_t context_limit() const = 0;
  /// Upper bound on simultaneous complete() calls the provider accepts.
  virtual std::size_t max_concurrency() const { return 1; }
};

class ScriptedProvider final : public CompletionProvider {
 public:
  using Responder = std::function<std::string(const CompletionRequest&)>;

  explicit ScriptedProvider(Responder responder, std::string model_id = "scripted",
                            std::size_t context_limit = 128000, std::size_t concurrency = 1);

  std::string complete(const CompletionRequest& request) override;
  std::string model_id() const override { return model_id_; }
  std::size_t context_limit() const override { return context_limit_; }
  std::size_t max_concurrency() const override { return concurrency_; }

  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  Responder responder_;
  std::string model_id_;
  std::size_t context_limit_;
  std::size_t concurrency_;
  std::atomic<std::size_t> calls_{0};
};

/// Answers from a JSON fixture:
///
///   {"model_id": "mock", "context_limit": 128000,
///    "documents": [{"match": "<substring of the article>",
///                   "e2e": ["<response>", ...],
///                   "ner": "<response>",
///                   "re_yes": [["<substring>", ...], ...]}],
///    "default": {...same keys...}}
///
/// The first document whose "match" occurs in the prompt is used. At
/// temperature 0 E2E returns its first response; otherwise the response is
/// picked by a hash of (seed, sample_index, prompt). An RE prompt is answered
/// "Yes" when every substring of some "re_yes" rule occurs in its sample.
class MockProvider final : public CompletionProvider {
 public:
  explicit MockProvider(const ordered_json& fixture);
  static std::unique_ptr<MockProvider> load(const std::filesystem::path& path);

  std::string complete(const CompletionRequest& request) override;
  std::string model_id() const override { return model_id_; }
  std::size_t context_limit() const override { return context_limit_; }
  std::size_t max_concurrency() const override { return 16; }

 private:
  struct Script {
    std::string match;
    std::vector<std::string> e2e;
    std::string ner;
    std::vector<std::vector<std::string>> re_yes;
  };
  const Script& script_for(std::string_view prompt) const;

  std::string model_id_;
  std::size_t context_limit_;
  std::vector<Script> documents_;
  Script fallback_;
};

struct ChatApiSettings {
  std::string url;  // e.g. https://api.openai.com/v1/chat/completions
  std::string api_key;
  std::string model;
  std::size_t context_limit = 128000;
  double requests_per_minute = 0;  // 0 = unlimited
  std::size_t concurrency = 4;
  int timeout_seconds = 300;
};

/// OpenAI-compatible /chat/completions client.
class ChatApiProvider final : public CompletionProvider {
 public:
  explicit ChatApiProvider(ChatApiSettings settings);

  std::string complete(const CompletionRequest& request) override;
  std::string model_id() const override { return settings_.model; }
  std::size_t context_limit() const override { return settings_.context_limit; }
  std::size_t max_concurrency() const override { return settings_.concurrency; }

 private:
  void wait_for_slot();

  ChatApiSettings settings_;
  std::mutex rate_mutex_;
  std::chrono::steady_clock::time_point next_slot_{};
};

struct ProviderSettings {
  std::string kind = "mock";  // mock | chat
  std::filesystem::path fixture;
  ChatApiSettings chat;
};

std::unique_ptr<CompletionProvider> make_provider(const ProviderSettings& settings);

/// 64-bit FNV-1a, used wherever a stable string hash is needed.
std::uint64_t stable_hash(std::string_view s, std::uint64_t seed = 0);

}  // namespace nanoie
