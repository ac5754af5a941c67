#include "nanoie/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nanoie/error.hpp"
#include "nanoie/text.hpp"

namespace nanoie {

namespace {

enum class Slot { matrix_name, matrix_abbrev, filler_name, filler_abbrev, mass, volume };

std::optional<Slot> slot_for_key(std::string_view key) {
  key = text::trim(key);
  for (std::size_t i = 0; i < keys::all.size(); ++i) {
    if (text::iequals(key, keys::all[i])) return static_cast<Slot>(i);
  }
  // Older NanoMine exports drop "Chemical" from the abbreviation keys.
  if (text::iequals(key, "Matrix Abbreviation")) return Slot::matrix_abbrev;
  if (text::iequals(key, "Filler Abbreviation")) return Slot::filler_abbrev;
  return std::nullopt;
}

bool is_record(const ordered_json& obj) {
  return std::any_of(obj.items().begin(), obj.items().end(),
                     [](const auto& item) { return slot_for_key(item.key()).has_value(); });
}

std::string json_scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return text::format_double(v.get<double>());
  return v.dump();
}

/// Empty strings and the literal "null" both mean "not mentioned".
std::optional<std::string> scalar_or_absent(const ordered_json& v) {
  if (v.is_null()) return std::nullopt;
  std::string s(text::trim(json_scalar_text(v)));
  if (s.empty() || text::iequals(s, "null") || text::iequals(s, "none")) return std::nullopt;
  return s;
}

void assign_name(Sample& s, Slot slot, std::optional<std::string> value) {
  switch (slot) {
    case Slot::matrix_name: s.matrix_name = std::move(value); break;
    case Slot::matrix_abbrev: s.matrix_abbrev = std::move(value); break;
    case Slot::filler_name: s.filler_name = std::move(value); break;
    case Slot::filler_abbrev: s.filler_abbrev = std::move(value); break;
    default: break;
  }
}

Sample gold_sample(const ordered_json& record) {
  if (!record.is_object()) throw FormatError("gold record is not an object");
  Sample s;
  for (const auto& [key, value] : record.items()) {
    const auto slot = slot_for_key(key);
    if (!slot) continue;
    if (value.is_array()) {
      throw FormatError("slot '" + key + "' is presented as a list rather than a single value", key);
    }
    if (value.is_object()) throw FormatError("slot '" + key + "' holds an object", key);
    auto scalar = scalar_or_absent(value);
    if (*slot == Slot::mass || *slot == Slot::volume) {
      std::optional<Fraction> fraction;
      if (scalar) {
        const auto number = text::parse_number(*scalar);
        if (!number) throw FormatError("slot '" + key + "' is not numeric: '" + *scalar + "'", key);
        if (*number < 0.0 || *number > 1.0) {
          throw FormatError("slot '" + key + "' lies outside [0,1]: " + *scalar, key);
        }
        fraction = *number;
      }
      (*slot == Slot::mass ? s.mass_fraction : s.volume_fraction) = fraction;
    } else {
      assign_name(s, *slot, std::move(scalar));
    }
  }
  if (!s.matrix_name && !s.matrix_abbrev) throw FormatError("gold record has no matrix name or abbreviation");
  if (!s.filler_name && !s.filler_abbrev) throw FormatError("gold record has no filler name or abbreviation");
  return s;
}

// Expands one predicted record. A list in a composition slot yields one
// sample per element; lists in both slots are zipped when their lengths agree.
void expand_prediction_record(const ordered_json& record, std::vector<Sample>& out,
                              std::vector<std::string>& diagnostics) {
  Sample base;
  std::vector<std::optional<Fraction>> masses{std::nullopt};
  std::vector<std::optional<Fraction>> volumes{std::nullopt};
  bool mass_list = false;
  bool volume_list = false;

  for (const auto& [key, value] : record.items()) {
    const auto slot = slot_for_key(key);
    if (!slot) continue;
    const bool composition = *slot == Slot::mass || *slot == Slot::volume;
    if (value.is_object() || (value.is_array() && !composition)) {
      diagnostics.push_back("record skipped: slot '" + key + "' is not a scalar");
      return;
    }
    if (!composition) {
      assign_name(base, *slot, scalar_or_absent(value));
      continue;
    }
    std::vector<std::optional<Fraction>> values;
    if (value.is_array()) {
      for (const auto& element : value) {
        if (element.is_array() || element.is_object()) {
          diagnostics.push_back("record skipped: nested list in slot '" + key + "'");
          return;
        }
        if (auto s = scalar_or_absent(element)) values.emplace_back(Fraction{std::move(*s)});
      }
      if (values.empty()) values.emplace_back(std::nullopt);
    } else {
      auto s = scalar_or_absent(value);
      values.emplace_back(s ? std::optional<Fraction>{Fraction{std::move(*s)}} : std::nullopt);
    }
    if (*slot == Slot::mass) {
      masses = std::move(values);
      mass_list = value.is_array();
    } else {
      volumes = std::move(values);
      volume_list = value.is_array();
    }
  }

  auto emit = [&](const std::optional<Fraction>& mass, const std::optional<Fraction>& volume) {
    Sample s = base;
    s.mass_fraction = mass;
    s.volume_fraction = volume;
    out.push_back(std::move(s));
  };

  if (mass_list && volume_list) {
    if (masses.size() == volumes.size()) {
      for (std::size_t i = 0; i < masses.size(); ++i) emit(masses[i], volumes[i]);
    } else {
      for (const auto& m : masses) emit(m, std::nullopt);
      for (const auto& v : volumes) emit(std::nullopt, v);
    }
    return;
  }
  for (const auto& m : masses) {
    for (const auto& v : volumes) emit(m, v);
  }
}

void collect_records(const ordered_json& value, std::vector<Sample>& out,
                     std::vector<std::string>& diagnostics) {
  if (value.is_object()) {
    if (is_record(value)) {
      expand_prediction_record(value, out, diagnostics);
      return;
    }
    for (const auto& [key, child] : value.items()) {
      if (child.is_structured()) collect_records(child, out, diagnostics);
    }
  } else if (value.is_array()) {
    for (const auto& child : value) collect_records(child, out, diagnostics);
  }
}

struct Span {
  std::size_t begin;
  std::size_t end;  // one past the closing bracket
};

// Finds top-level balanced {...} / [...] regions, honouring JSON string
// escapes. Unbalanced openers are reported and skipped.
std::vector<Span> find_json_spans(std::string_view text, std::vector<std::string>& diagnostics) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '{' && c != '[') {
      ++i;
      continue;
    }
    std::vector<char> stack;
    bool in_string = false;
    bool escaped = false;
    std::size_t j = i;
    bool balanced = false;
    for (; j < text.size(); ++j) {
      const char d = text[j];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (d == '\\') {
          escaped = true;
        } else if (d == '"') {
          in_string = false;
        }
        continue;
      }
      if (d == '"') {
        in_string = true;
      } else if (d == '{' || d == '[') {
        stack.push_back(d == '{' ? '}' : ']');
      } else if (d == '}' || d == ']') {
        if (stack.empty() || stack.back() != d) break;
        stack.pop_back();
        if (stack.empty()) {
          balanced = true;
          break;
        }
      }
    }
    if (balanced) {
      spans.push_back({i, j + 1});
      i = j + 1;
    } else {
      if (c == '{') diagnostics.push_back("unbalanced '{' at offset " + std::to_string(i));
      ++i;
    }
  }
  return spans;
}

}  // namespace

Document::Document(std::string doc_id, std::string body)
    : doc_id_(std::move(doc_id)), body_(std::move(body)), token_count_(text::count_tokens(body_)) {}

std::optional<double> fraction_value(const Fraction& f) {
  if (const auto* d = std::get_if<double>(&f)) return *d;
  return std::nullopt;
}

std::string fraction_text(const Fraction& f) {
  if (const auto* d = std::get_if<double>(&f)) return text::format_double(*d);
  return std::get<std::string>(f);
}

SampleList parse_gold_records(const ordered_json& records, std::string doc_id) {
  if (!records.is_array()) throw FormatError("records for '" + doc_id + "' are not an array");
  SampleList list{std::move(doc_id), {}};
  list.samples.reserve(records.size());
  for (const auto& r : records) list.samples.push_back(gold_sample(r));
  return list;
}

std::vector<SampleList> parse_gold_file(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("gold file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw FormatError("gold file must map doc_id to a record array");
  std::vector<SampleList> out;
  out.reserve(root.size());
  for (const auto& [doc_id, records] : root.items()) {
    out.push_back(parse_gold_records(records, doc_id));
  }
  return out;
}

PredictionParse parse_prediction_output(std::string_view text, std::string doc_id) {
  PredictionParse result;
  result.samples.doc_id = std::move(doc_id);
  for (const Span& span : find_json_spans(text, result.diagnostics)) {
    const auto chunk = text.substr(span.begin, span.end - span.begin);
    auto value = ordered_json::parse(chunk, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      if (chunk.front() == '{') {
        result.diagnostics.push_back("malformed JSON object at offset " + std::to_string(span.begin));
      }
      continue;
    }
    collect_records(value, result.samples.samples, result.diagnostics);
  }
  if (result.samples.samples.empty()) result.diagnostics.push_back("no record object recovered");
  return result;
}

ordered_json to_record(const Sample& s) {
  auto name = [](const std::optional<std::string>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  auto frac = [](const std::optional<Fraction>& v) {
    return v ? ordered_json(fraction_text(*v)) : ordered_json(nullptr);
  };
  ordered_json r = ordered_json::object();
  r[std::string(keys::matrix_name)] = name(s.matrix_name);
  r[std::string(keys::matrix_abbrev)] = name(s.matrix_abbrev);
  r[std::string(keys::filler_name)] = name(s.filler_name);
  r[std::string(keys::filler_abbrev)] = name(s.filler_abbrev);
  r[std::string(keys::mass)] = frac(s.mass_fraction);
  r[std::string(keys::volume)] = frac(s.volume_fraction);
  return r;
}

ordered_json to_records(std::span<const Sample> samples) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : samples) arr.push_back(to_record(s));
  return arr;
}

std::string serialize_sample_lists(std::span<const SampleList> lists, int indent) {
  ordered_json root = ordered_json::object();
  for (const auto& list : lists) root[list.doc_id] = to_records(list.samples);
  return root.dump(indent);
}

SampleList deduplicate_exact(const SampleList& list) {
  SampleList out{list.doc_id, {}};
  for (const auto& s : list.samples) {
    if (std::find(out.samples.begin(), out.samples.end(), s) == out.samples.end()) out.samples.push_back(s);
  }
  return out;
}

Summary summarize(std::vector<std::size_t> values) {
  if (values.empty()) throw InvalidArgument("cannot summarize an empty collection");
  std::sort(values.begin(), values.end());
  Summary s;
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  s.mean = total / static_cast<double>(values.size());
  s.median = values[(values.size() - 1) / 2];
  s.min = values.front();
  s.max = values.back();
  return s;
}

CorpusStats corpus_stats(std::span<const Document> documents, std::span<const SampleList> lists) {
  if (documents.empty()) throw InvalidArgument("corpus is empty");
  std::map<std::string_view, const SampleList*> by_id;
  for (const auto& l : lists) {
    if (!by_id.emplace(l.doc_id, &l).second) throw InvalidArgument("duplicate sample list for '" + l.doc_id + "'");
  }
  if (by_id.size() != documents.size()) {
    throw InvalidArgument("documents and sample lists do not align (" + std::to_string(documents.size()) +
                          " vs " + std::to_string(by_id.size()) + ")");
  }
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> counts;
  for (const auto& d : documents) {
    const auto it = by_id.find(d.doc_id());
    if (it == by_id.end()) throw InvalidArgument("no sample list for document '" + d.doc_id() + "'");
    lengths.push_back(d.token_count());
    counts.push_back(it->second->samples.size());
  }
  return {documents.size(), summarize(std::move(lengths)), summarize(std::move(counts))};
}

}  // namespace nanoie
