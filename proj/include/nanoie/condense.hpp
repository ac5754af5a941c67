#pragma once

// Document condensation: split into ~60-token segments, score them against
// a fixed set of queries and keep the union of each query's top-k, in
// document order.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nanoie/model.hpp"

namespace nanoie {

struct Segment {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;  // tokens joined by single spaces
  std::size_t token_count = 0;
};

inline constexpr std::size_t kDefaultSegmentTokens = 60;

/// Greedily packs sentences into segments of about `target_tokens`.
/// Sentences longer than the target are cut into token windows.
/// Throws InvalidArgument for a blank body.
std::vector<Segment> segment_document(const Document& doc, std::size_t target_tokens = kDefaultSegmentTokens);

struct QuerySet {
  std::vector<std::string> queries;

  /// Matrix, filler, mass-composition and volume-composition questions.
  static QuerySet defaults();
  /// One query per non-blank line.
  static QuerySet from_lines(std::string_view text);
};

/// Relevance of every segment to a query, higher is better. Implementations
/// must be deterministic and callable from several threads at once.
class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual std::vector<double> score(std::string_view query, std::span<const Segment> segments) const = 0;
  virtual std::string name() const = 0;
};

/// TF-IDF cosine over lowercased, lightly stemmed word tokens. IDF is taken
/// over the segments of the document being condensed.
class LexicalBackend final : public SimilarityBackend {
 public:
  std::vector<double> score(std::string_view query, std::span<const Segment> segments) const override;
  std::string name() const override { return "lexical"; }
};

std::vector<std::string> lexical_terms(std::string_view text);
std::string stem(std::string word);

/// Indices of the k highest scores; ties go to the lower index.
std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k);

struct CondensedDocument {
  Document document;
  std::vector<std::size_t> selected;                 // strictly increasing
  std::vector<std::vector<std::size_t>> per_query;   // each query's top-k
  std::size_t segment_count = 0;
};

/// Throws InvalidArgument when k is zero or the query set is empty.
CondensedDocument condense(const Document& doc, const QuerySet& queries, std::size_t k,
                           const SimilarityBackend& backend, std::size_t target_tokens = kDefaultSegmentTokens);

/// Same, on precomputed segments.
CondensedDocument condense_segments(const Document& doc, std::span<const Segment> segments, const QuerySet& queries,
                                    std::size_t k, const SimilarityBackend& backend);

}  // namespace nanoie
