#include "nanoie/reannotate.hpp"

#include <algorithm>
#include <tuple>

#include "nanoie/error.hpp"

namespace nanoie {

namespace {

int kind_rank(TriageKind k) { return static_cast<int>(k); }

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

// Raw field names behind a discrepant trio slot: the ones the gold sample
// fills, or the prediction's when gold leaves the slot empty.
std::vector<std::string_view> discrepant_fields(Attribute a, const Sample& gold, const Sample& pred) {
  auto fields_of = [a](const Sample& s) {
    std::vector<std::string_view> out;
    switch (a) {
      case Attribute::matrix:
        if (s.matrix_name) out.push_back(keys::matrix_name);
        if (s.matrix_abbrev) out.push_back(keys::matrix_abbrev);
        break;
      case Attribute::filler:
        if (s.filler_name) out.push_back(keys::filler_name);
        if (s.filler_abbrev) out.push_back(keys::filler_abbrev);
        break;
      case Attribute::composition:
        if (s.mass_fraction) out.push_back(keys::mass);
        if (s.volume_fraction) out.push_back(keys::volume);
        break;
    }
    return out;
  };
  auto fields = fields_of(gold);
  if (fields.empty()) fields = fields_of(pred);
  if (fields.empty()) fields.push_back(attribute_name(a));
  return fields;
}

}  // namespace

std::vector<TriageEntry> triage(std::span<const Sample> golds, std::span<const Sample> raw_preds,
                                std::span<const Sample> standardized_preds) {
  if (raw_preds.size() != standardized_preds.size()) {
    throw InvalidArgument("raw and standardized prediction lists differ in length");
  }
  std::vector<AggregatedSample> g, p;
  for (const auto& s : golds) g.push_back(AggregatedSample::from(s));
  for (const auto& s : standardized_preds) p.push_back(AggregatedSample::from(s));
  const auto assignment = optimal_assignment(p, g);

  std::vector<TriageEntry> entries;
  for (const auto& pair : assignment.pairs) {
    TriageEntry e;
    e.kind = pair.matched_slots == 3 ? TriageKind::exact : TriageKind::partial;
    e.gold_index = pair.gold;
    e.pred_index = pair.pred;
    e.matched_slots = pair.matched_slots;
    const auto matches = slot_matches(p[pair.pred], g[pair.gold]);
    for (auto a : kAttributes) {
      if (!matches[static_cast<int>(a)]) e.discrepant_slots.push_back(a);
    }
    e.gold = golds[pair.gold];
    e.pred = raw_preds[pair.pred];
    e.standardized_pred = standardized_preds[pair.pred];
    entries.push_back(std::move(e));
  }
  for (auto j : assignment.unmatched_gold) {
    TriageEntry e{TriageKind::unmatched_gold, j, std::nullopt, 0, {}, golds[j], std::nullopt, std::nullopt};
    entries.push_back(std::move(e));
  }
  for (auto i : assignment.unmatched_pred) {
    TriageEntry e{TriageKind::unmatched_pred, std::nullopt, i, 0, {}, std::nullopt, raw_preds[i], standardized_preds[i]};
    entries.push_back(std::move(e));
  }

  static constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::sort(entries.begin(), entries.end(), [](const TriageEntry& a, const TriageEntry& b) {
    return std::make_tuple(kind_rank(a.kind), a.matched_slots, a.gold_index.value_or(none), a.pred_index.value_or(none)) <
           std::make_tuple(kind_rank(b.kind), b.matched_slots, b.gold_index.value_or(none), b.pred_index.value_or(none));
  });
  return entries;
}

std::vector<TriageEntry> triage(std::span<const Sample> golds, std::span<const Sample> standardized_preds) {
  return triage(golds, standardized_preds, standardized_preds);
}

std::string render_record(const Sample& s) {
  auto name = [](const std::optional<std::string>& v) { return v ? quote(*v) : std::string("None"); };
  auto frac = [](const std::optional<Fraction>& v) { return v ? quote(fraction_text(*v)) : std::string("None"); };
  std::string out = "{";
  out += "'" + std::string(keys::matrix_name) + "': " + name(s.matrix_name) + ", ";
  out += "'" + std::string(keys::matrix_abbrev) + "': " + name(s.matrix_abbrev) + ", ";
  out += "'" + std::string(keys::filler_name) + "': " + name(s.filler_name) + ", ";
  out += "'" + std::string(keys::filler_abbrev) + "': " + name(s.filler_abbrev) + ", ";
  out += "'" + std::string(keys::mass) + "': " + frac(s.mass_fraction) + ", ";
  out += "'" + std::string(keys::volume) + "': " + frac(s.volume_fraction) + "}";
  return out;
}

std::string render_report(std::span<const TriageEntry> entries, const std::string& doc_id) {
  std::string out = "File name: " + doc_id + "\n\n";
  if (entries.empty()) return out + "No samples.\n";

  for (const auto& e : entries) {
    switch (e.kind) {
      case TriageKind::exact:
        out += "True sample " + std::to_string(*e.gold_index) + " is exactly matched with predicted sample " +
               std::to_string(*e.pred_index) + ".\n";
        break;
      case TriageKind::partial: {
        out += "True sample " + std::to_string(*e.gold_index) + " is matched with predicted sample " +
               std::to_string(*e.pred_index) + "\n";
        std::string fields;
        for (auto a : e.discrepant_slots) {
          for (auto f : discrepant_fields(a, *e.gold, *e.standardized_pred)) {
            if (!fields.empty()) fields += ", ";
            fields += f;
          }
        }
        out += "But there's a discrepancy between the predicted sample and the true sample " + fields + ".\n";
        out += "True sample: " + render_record(*e.gold) + "\n";
        out += "Predicted sample: " + render_record(*e.pred) + "\n";
        out += "Standardized predicted sample: " + render_record(*e.standardized_pred) + "\n";
        break;
      }
      case TriageKind::unmatched_gold:
        out += "True sample " + std::to_string(*e.gold_index) + " is not matched with any predicted sample.\n";
        out += "True sample: " + render_record(*e.gold) + "\n";
        break;
      case TriageKind::unmatched_pred:
        out += "Predicted sample " + std::to_string(*e.pred_index) + " is not matched with any true sample.\n";
        out += "Predicted sample: " + render_record(*e.pred) + "\n";
        out += "Standardized predicted sample: " + render_record(*e.standardized_pred) + "\n";
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace nanoie
