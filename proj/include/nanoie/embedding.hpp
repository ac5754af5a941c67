#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nanoie/condense.hpp"

namespace nanoie {

/// Connection details for an OpenAI-style embeddings endpoint
/// (POST {"model", "input": [...]} -> {"data": [{"embedding": [...]}]}).
struct EmbeddingSettings {
  std::string url;  // e.g. http://localhost:8080/v1/embeddings
  std::string api_key;
  std::string model;
  std::size_t batch_size = 64;
  int timeout_seconds = 60;

  /// Reads NANOIE_EMBEDDING_URL, NANOIE_EMBEDDING_KEY, NANOIE_EMBEDDING_MODEL.
  static EmbeddingSettings from_env();
};

/// Cosine similarity between embedded query and segments. Each call opens
/// its own connection, so concurrent use is safe.
class EmbeddingBackend final : public SimilarityBackend {
 public:
  explicit EmbeddingBackend(EmbeddingSettings settings);

  std::vector<double> score(std::string_view query, std::span<const Segment> segments) const override;
  std::string name() const override { return "embedding-api"; }

  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const;

 private:
  EmbeddingSettings settings_;
};

/// "lexical" or "embedding-api" (configured from the environment).
std::unique_ptr<SimilarityBackend> make_backend(std::string_view name);

}  // namespace nanoie
