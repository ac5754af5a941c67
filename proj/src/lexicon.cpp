#include "nanoie/lexicon.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nanoie/error.hpp"
#include "nanoie/text.hpp"

namespace nanoie {

namespace {

std::vector<std::string> string_array(const ordered_json& obj, const char* key, bool required) {
  std::vector<std::string> out;
  if (!obj.contains(key)) {
    if (required) throw LexiconError(std::string("lexicon entry lacks '") + key + "'");
    return out;
  }
  const auto& v = obj.at(key);
  if (!v.is_array()) throw LexiconError(std::string("lexicon field '") + key + "' must be an array");
  for (const auto& s : v) {
    if (!s.is_string()) throw LexiconError(std::string("lexicon field '") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<LexiconEntry> parse_table(const ordered_json& root, const char* name, bool matrix) {
  if (!root.contains(name) || !root.at(name).is_array()) {
    throw LexiconError(std::string("lexicon needs an array named '") + name + "'");
  }
  std::vector<LexiconEntry> out;
  for (const auto& e : root.at(name)) {
    if (!e.is_object() || !e.contains("standard") || !e.at("standard").is_string()) {
      throw LexiconError(std::string("every '") + name + "' entry needs a string 'standard'");
    }
    LexiconEntry entry;
    entry.standard = e.at("standard").get<std::string>();
    entry.synonyms = string_array(e, "synonyms", false);
    entry.abbreviations = string_array(e, "abbreviations", false);
    if (matrix) entry.trade_names = string_array(e, "trade_names", false);
    out.push_back(std::move(entry));
  }
  return out;
}

// Strips a trailing unit and reports whether it was a percent form.
struct SplitComposition {
  std::string_view number;
  bool percent = false;
  CompositionBasis basis = CompositionBasis::unspecified;
  bool ok = false;
};

SplitComposition split_composition(std::string_view raw) {
  SplitComposition out;
  const std::string_view s = text::trim(raw);
  std::size_t end = 0;
  while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' || s[end] == '-' ||
                            s[end] == '+' || s[end] == 'e' || s[end] == 'E')) {
    ++end;
  }
  // An exponent marker must be followed by digits; otherwise it belongs to the unit.
  while (end > 0 && (s[end - 1] == 'e' || s[end - 1] == 'E' || s[end - 1] == '+' || s[end - 1] == '-')) --end;
  out.number = s.substr(0, end);
  std::string unit;
  for (char c : s.substr(end)) {
    if (!std::isspace(static_cast<unsigned char>(c))) unit.push_back(static_cast<char>(std::tolower(c)));
  }
  if (unit.empty()) {
    out.ok = true;
  } else if (unit == "%") {
    out.ok = out.percent = true;
  } else if (unit == "wt%" || unit == "wt.%") {
    out.ok = out.percent = true;
    out.basis = CompositionBasis::mass;
  } else if (unit == "vol%" || unit == "vol.%") {
    out.ok = out.percent = true;
    out.basis = CompositionBasis::volume;
  }
  return out;
}

// Divides a decimal string by 100 by shifting its exponent, so "0.5" becomes
// exactly the double nearest 0.005.
double scale_percent(std::string_view number) {
  std::string mantissa(number);
  long exponent = -2;
  if (const auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    exponent += std::stol(mantissa.substr(e + 1));
    mantissa.resize(e);
  }
  const auto value = text::parse_number(mantissa + "e" + std::to_string(exponent));
  return value.value_or(std::nan(""));
}

}  // namespace

CanonicalLexicon::CanonicalLexicon(std::vector<LexiconEntry> matrix, std::vector<LexiconEntry> filler)
    : matrix_(build(std::move(matrix), "matrix")), filler_(build(std::move(filler), "filler")) {}

CanonicalLexicon::Index CanonicalLexicon::build(std::vector<LexiconEntry> entries, std::string_view table_name) {
  Index idx;
  idx.entries = std::move(entries);
  std::unordered_map<std::string, std::size_t> standards;
  for (std::size_t i = 0; i < idx.entries.size(); ++i) {
    auto& e = idx.entries[i];
    const std::string standard(text::trim(e.standard));
    if (standard.empty()) throw LexiconError(std::string(table_name) + " entry with an empty standard name");
    if (!standards.emplace(text::to_lower(standard), i).second) {
      throw LexiconError(std::string(table_name) + " standard name '" + standard + "' is not unique");
    }
    e.standard = standard;

    auto add = [&](std::vector<Form>& forms, std::unordered_map<std::string, std::size_t>& exact,
                   std::string_view surface) {
      const std::string trimmed(text::trim(surface));
      if (trimmed.empty()) return;
      const auto [it, inserted] = exact.emplace(text::to_lower(trimmed), i);
      if (!inserted && it->second != i) {
        throw LexiconError("surface form '" + trimmed + "' belongs to both '" + idx.entries[it->second].standard +
                           "' and '" + e.standard + "' in the " + std::string(table_name) + " table");
      }
      if (inserted) forms.push_back({trimmed, text::fold_for_matching(trimmed), i});
    };
    add(idx.names, idx.exact_names, e.standard);
    for (const auto& s : e.synonyms) add(idx.names, idx.exact_names, s);
    for (const auto& s : e.trade_names) add(idx.names, idx.exact_names, s);
    for (auto& a : e.abbreviations) {
      a = std::string(text::trim(a));
      add(idx.abbreviations, idx.exact_abbreviations, a);
    }
  }
  return idx;
}

CanonicalLexicon CanonicalLexicon::from_json(std::string_view json_text) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LexiconError(std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw LexiconError("lexicon root must be an object");
  return CanonicalLexicon(parse_table(root, "matrix", true), parse_table(root, "filler", false));
}

CanonicalLexicon CanonicalLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open lexicon file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

const std::vector<LexiconEntry>& CanonicalLexicon::entries(Table table) const { return index(table).entries; }

std::string CanonicalLexicon::rewrite(const Index& idx, std::size_t entry, SlotKind kind) const {
  const auto& e = idx.entries[entry];
  if (kind == SlotKind::abbreviation && !e.abbreviations.empty()) return e.abbreviations.front();
  return e.standard;
}

std::optional<MatchCandidate> CanonicalLexicon::best_match(std::string_view surface, Table table,
                                                           SlotKind kind) const {
  const Index& idx = index(table);
  const std::string trimmed(text::trim(surface));
  const auto& exact = kind == SlotKind::name ? idx.exact_names : idx.exact_abbreviations;
  const auto& forms = kind == SlotKind::name ? idx.names : idx.abbreviations;

  if (const auto it = exact.find(text::to_lower(trimmed)); it != exact.end()) {
    const auto& form = *std::find_if(forms.begin(), forms.end(), [&](const Form& f) {
      return f.entry == it->second && text::iequals(f.surface, trimmed);
    });
    return MatchCandidate{form.surface, rewrite(idx, it->second, kind), 1.0, table};
  }

  const std::string folded = text::fold_for_matching(trimmed);
  if (folded.empty()) return std::nullopt;
  const Form* best = nullptr;
  double best_score = -1.0;
  for (const auto& f : forms) {
    if (f.folded.empty()) continue;
    const double score = text::edit_similarity(folded, f.folded);
    if (score > best_score) {
      best_score = score;
      best = &f;
    }
  }
  if (best == nullptr || best_score < kNameThreshold) return std::nullopt;
  // Only a case-insensitive exact hit may claim a perfect score.
  const double score = std::min(best_score, std::nextafter(1.0, 0.0));
  return MatchCandidate{best->surface, rewrite(idx, best->entry, kind), score, table};
}

std::vector<std::pair<std::string, std::string>> CanonicalLexicon::surface_forms(Table table, SlotKind kind) const {
  const Index& idx = index(table);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : kind == SlotKind::name ? idx.names : idx.abbreviations) {
    out.emplace_back(f.surface, rewrite(idx, f.entry, kind));
  }
  return out;
}

NameResult standardize_name(std::string_view surface, Table table, const CanonicalLexicon& lexicon, SlotKind kind) {
  const std::string_view trimmed = text::trim(surface);
  if (trimmed.empty()) throw InvalidArgument("cannot standardize an empty name");
  if (auto m = lexicon.best_match(trimmed, table, kind)) return {std::move(m->standard), true, m->score};
  return {std::string(trimmed), false, 0.0};
}

CompositionBasis composition_basis(std::string_view raw) { return split_composition(raw).basis; }

double standardize_composition(std::string_view raw) {
  const std::string raw_text(raw);
  const auto parts = split_composition(raw);
  if (!parts.ok) throw CompositionError(raw_text, "unrecognized unit");
  const auto value = text::parse_number(parts.number);
  if (!value) throw CompositionError(raw_text, "not a number");
  if (*value < 0.0) throw CompositionError(raw_text, "negative");
  if (*value > 100.0) throw CompositionError(raw_text, "greater than 100");
  if (parts.percent || *value > 1.0) return scale_percent(parts.number);
  return *value;
}

StandardizedSample standardize_sample(const Sample& sample, const CanonicalLexicon& lexicon) {
  StandardizedSample out{sample, {}};
  Sample& s = out.sample;

  auto name_slot = [&](std::optional<std::string>& slot, Table table, SlotKind kind) {
    if (!slot) return;
    if (text::trim(*slot).empty()) {
      slot.reset();
      return;
    }
    slot = standardize_name(*slot, table, lexicon, kind).value;
  };
  name_slot(s.matrix_name, Table::matrix, SlotKind::name);
  name_slot(s.matrix_abbrev, Table::matrix, SlotKind::abbreviation);
  name_slot(s.filler_name, Table::filler, SlotKind::name);
  name_slot(s.filler_abbrev, Table::filler, SlotKind::abbreviation);

  auto fraction_slot = [&](std::optional<Fraction>& slot, std::string_view label) {
    if (!slot) return;
    if (const auto* d = std::get_if<double>(&*slot)) {
      if (!(*d >= 0.0 && *d <= 1.0)) {
        out.diagnostics.push_back(std::string(label) + ": fraction " + text::format_double(*d) +
                                  " outside [0,1], slot dropped");
        slot.reset();
      }
      return;
    }
    try {
      slot = standardize_composition(std::get<std::string>(*slot));
    } catch (const CompositionError& e) {
      out.diagnostics.push_back(std::string(label) + ": " + e.what() + ", slot dropped");
      slot.reset();
    }
  };
  fraction_slot(s.mass_fraction, keys::mass);
  fraction_slot(s.volume_fraction, keys::volume);

  s.normalization = Normalization::standardized;
  return out;
}

StandardizedList standardize_list(const SampleList& list, const CanonicalLexicon& lexicon) {
  StandardizedList out{{list.doc_id, {}}, {}};
  out.list.samples.reserve(list.samples.size());
  for (std::size_t i = 0; i < list.samples.size(); ++i) {
    auto r = standardize_sample(list.samples[i], lexicon);
    for (auto& d : r.diagnostics) out.diagnostics.push_back("sample " + std::to_string(i) + ": " + d);
    out.list.samples.push_back(std::move(r.sample));
  }
  return out;
}

}  // namespace nanoie
