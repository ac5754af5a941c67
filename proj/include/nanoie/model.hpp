#pragma once

// Sample records, per-document sample lists, documents and the six-key
// record file format shared by gold files and predictions.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nanoie {

using ordered_json = nlohmann::ordered_json;

enum class Normalization { raw, standardized };

/// A composition slot holds either a decimal fraction or, before
/// standardization, the raw text a model produced ("0.5 vol.%").
using Fraction = std::variant<double, std::string>;

/// One material-sample record.
struct Sample {
  std::optional<std::string> matrix_name;
  std::optional<std::string> matrix_abbrev;
  std::optional<std::string> filler_name;
  std::optional<std::string> filler_abbrev;
  std::optional<Fraction> mass_fraction;
  std::optional<Fraction> volume_fraction;
  Normalization normalization = Normalization::raw;

  bool standardized() const noexcept { return normalization == Normalization::standardized; }

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleList {
  std::string doc_id;
  std::vector<Sample> samples;

  friend bool operator==(const SampleList&, const SampleList&) = default;
};

/// Record keys in template order.
namespace keys {
inline constexpr std::string_view matrix_name = "Matrix Chemical Name";
inline constexpr std::string_view matrix_abbrev = "Matrix Chemical Abbreviation";
inline constexpr std::string_view filler_name = "Filler Chemical Name";
inline constexpr std::string_view filler_abbrev = "Filler Chemical Abbreviation";
inline constexpr std::string_view mass = "Filler Composition Mass";
inline constexpr std::string_view volume = "Filler Composition Volume";
inline constexpr std::array<std::string_view, 6> all = {matrix_name,   matrix_abbrev, filler_name,
                                                        filler_abbrev, mass,          volume};
}  // namespace keys

/// Full article text. The token count is whitespace-delimited and always
/// derived from the body.
class Document {
 public:
  Document(std::string doc_id, std::string body);

  const std::string& doc_id() const noexcept { return doc_id_; }
  const std::string& body() const noexcept { return body_; }
  std::size_t token_count() const noexcept { return token_count_; }

 private:
  std::string doc_id_;
  std::string body_;
  std::size_t token_count_;
};

std::optional<double> fraction_value(const Fraction& f);
std::string fraction_text(const Fraction& f);

/// Parses a gold file: an object mapping doc_id to an array of records.
/// Composition strings must be decimals in [0,1]; list-valued slots and
/// records without a matrix or filler identity raise FormatError.
std::vector<SampleList> parse_gold_file(std::string_view text);

/// Parses one document's gold records (a JSON array).
SampleList parse_gold_records(const ordered_json& records, std::string doc_id);

struct PredictionParse {
  SampleList samples;
  std::vector<std::string> diagnostics;
};

/// Recovers every record object from free-form model output. Never throws on
/// malformed input; failures land in the diagnostics.
PredictionParse parse_prediction_output(std::string_view text, std::string doc_id = {});

ordered_json to_record(const Sample& sample);
ordered_json to_records(std::span<const Sample> samples);

/// Serializes lists into the grouped gold-file layout.
std::string serialize_sample_lists(std::span<const SampleList> lists, int indent = 2);

/// Removes later samples that equal an earlier one exactly (after standardization).
SampleList deduplicate_exact(const SampleList& list);

struct Summary {
  double mean = 0;
  std::size_t median = 0;  // lower middle element for even counts
  std::size_t min = 0;
  std::size_t max = 0;
};

struct CorpusStats {
  std::size_t documents = 0;
  Summary length;
  Summary samples_per_doc;
};

/// Every document needs exactly one sample list with the same doc_id.
CorpusStats corpus_stats(std::span<const Document> documents, std::span<const SampleList> lists);

Summary summarize(std::vector<std::size_t> values);

}  // namespace nanoie
