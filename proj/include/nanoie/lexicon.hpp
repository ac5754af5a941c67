#pragma once

// Canonical chemical names and composition normalization.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nanoie/model.hpp"

namespace nanoie {

enum class Table { matrix, filler };

/// Which surface forms a slot is matched against: names use the standard
/// name, synonyms and trade names; abbreviation slots use abbreviations only.
enum class SlotKind { name, abbreviation };

struct LexiconEntry {
  std::string standard;
  std::vector<std::string> abbreviations;
  std::vector<std::string> synonyms;
  std::vector<std::string> trade_names;
};

struct MatchCandidate {
  std::string surface;   // lexicon surface form that won
  std::string standard;  // what the slot is rewritten to
  double score = 0;      // 1.0 iff case-insensitive exact match
  Table table = Table::matrix;
};

/// Immutable after construction; lookups are safe from many threads.
class CanonicalLexicon {
 public:
  /// Similarity a fuzzy match must reach to be accepted.
  static constexpr double kNameThreshold = 0.85;

  CanonicalLexicon(std::vector<LexiconEntry> matrix, std::vector<LexiconEntry> filler);

  static CanonicalLexicon from_json(std::string_view json_text);
  static CanonicalLexicon load(const std::filesystem::path& path);

  /// Highest-scoring surface form, or nullopt when nothing reaches the threshold.
  std::optional<MatchCandidate> best_match(std::string_view surface, Table table, SlotKind kind) const;

  const std::vector<LexiconEntry>& entries(Table table) const;

  /// Every (surface form, canonical rewrite) pair for a table and slot kind.
  std::vector<std::pair<std::string, std::string>> surface_forms(Table table, SlotKind kind) const;

 private:
  struct Form {
    std::string surface;
    std::string folded;
    std::size_t entry;
  };
  struct Index {
    std::vector<LexiconEntry> entries;
    std::vector<Form> names;
    std::vector<Form> abbreviations;
    std::unordered_map<std::string, std::size_t> exact_names;
    std::unordered_map<std::string, std::size_t> exact_abbreviations;
  };

  static Index build(std::vector<LexiconEntry> entries, std::string_view table_name);
  const Index& index(Table table) const { return table == Table::matrix ? matrix_ : filler_; }
  std::string rewrite(const Index& idx, std::size_t entry, SlotKind kind) const;

  Index matrix_;
  Index filler_;
};

struct NameResult {
  std::string value;
  bool canonical = false;
  double score = 0;
};

/// Maps a surface form to its canonical form, or returns it trimmed and
/// flagged non-canonical. Throws InvalidArgument on blank input.
NameResult standardize_name(std::string_view surface, Table table, const CanonicalLexicon& lexicon,
                            SlotKind kind = SlotKind::name);

enum class CompositionBasis { unspecified, mass, volume };

/// Converts "0.5 vol.%", "2.10%", "0.005" or "5" to a fraction in [0,1].
/// Throws CompositionError naming the raw text on failure.
double standardize_composition(std::string_view raw);

/// Unit hint carried by a composition string ("wt%" -> mass, "vol%" -> volume).
CompositionBasis composition_basis(std::string_view raw);

struct StandardizedSample {
  Sample sample;
  std::vector<std::string> diagnostics;
};

/// Runs every present slot through the lexicon. A composition that fails to
/// parse is dropped with a diagnostic instead of failing the sample.
StandardizedSample standardize_sample(const Sample& sample, const CanonicalLexicon& lexicon);

struct StandardizedList {
  SampleList list;
  std::vector<std::string> diagnostics;
};

StandardizedList standardize_list(const SampleList& list, const CanonicalLexicon& lexicon);

}  // namespace nanoie
