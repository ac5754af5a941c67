#include "nanoie/embedding.hpp"

#include <cmath>
#include <cstdlib>

#include "http_util.hpp"
#include "nanoie/error.hpp"

namespace nanoie {

namespace {
std::string env_or(const char* name, std::string fallback = {}) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("embedding dimensions differ");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}
}  // namespace

EmbeddingSettings EmbeddingSettings::from_env() {
  EmbeddingSettings s;
  s.url = env_or("NANOIE_EMBEDDING_URL");
  s.api_key = env_or("NANOIE_EMBEDDING_KEY");
  s.model = env_or("NANOIE_EMBEDDING_MODEL", "gtr-t5-large");
  return s;
}

EmbeddingBackend::EmbeddingBackend(EmbeddingSettings settings) : settings_(std::move(settings)) {
  if (settings_.url.empty()) throw ConfigError("embedding backend needs an endpoint URL (NANOIE_EMBEDDING_URL)");
  if (settings_.batch_size == 0) settings_.batch_size = 1;
}

std::vector<std::vector<double>> EmbeddingBackend::embed(const std::vector<std::string>& texts) const {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += settings_.batch_size) {
    const auto end = std::min(texts.size(), start + settings_.batch_size);
    ordered_json body{{"model", settings_.model},
                      {"input", std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(start),
                                                         texts.begin() + static_cast<std::ptrdiff_t>(end))}};
    const auto res = detail::post_json(settings_.url, body, settings_.api_key, settings_.timeout_seconds);
    if (!res.contains("data") || !res["data"].is_array() || res["data"].size() != end - start) {
      throw Error("embedding response does not hold one vector per input");
    }
    // Services may reorder; "index" wins when present.
    std::vector<std::vector<double>> batch(end - start);
    for (std::size_t i = 0; i < res["data"].size(); ++i) {
      const auto& item = res["data"][i];
      const std::size_t slot = item.contains("index") ? item["index"].get<std::size_t>() : i;
      if (slot >= batch.size()) throw Error("embedding response index out of range");
      batch[slot] = item.at("embedding").get<std::vector<double>>();
    }
    for (auto& v : batch) out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> EmbeddingBackend::score(std::string_view query, std::span<const Segment> segments) const {
  std::vector<std::string> texts;
  texts.reserve(segments.size() + 1);
  texts.emplace_back(query);
  for (const auto& s : segments) texts.push_back(s.text);
  const auto vectors = embed(texts);
  std::vector<double> out;
  out.reserve(segments.size());
  for (std::size_t i = 1; i < vectors.size(); ++i) out.push_back(cosine(vectors[0], vectors[i]));
  return out;
}

std::unique_ptr<SimilarityBackend> make_backend(std::string_view name) {
  if (name == "lexical") return std::make_unique<LexicalBackend>();
  if (name == "embedding-api") return std::make_unique<EmbeddingBackend>(EmbeddingSettings::from_env());
  throw ConfigError("unknown similarity backend '" + std::string(name) + "' (expected lexical or embedding-api)");
}

}  // namespace nanoie
