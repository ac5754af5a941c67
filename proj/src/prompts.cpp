#include "nanoie/prompts.hpp"

#include "nanoie/error.hpp"
#include "prompt_templates.hpp"  // generated from prompts/v1

namespace nanoie::prompts {

namespace {

// Splits a template around its first occurrence of `slot`.
std::pair<std::string_view, std::string_view> split_at(std::string_view tmpl, std::string_view slot) {
  const auto pos = tmpl.find(slot);
  if (pos == std::string_view::npos) throw Error("prompt template lacks slot " + std::string(slot));
  return {tmpl.substr(0, pos), tmpl.substr(pos + slot.size())};
}

std::string fill(std::string_view tmpl, std::string_view document) {
  const auto [head, tail] = split_at(tmpl, kDocumentSlot);
  std::string out;
  out.reserve(head.size() + document.size() + tail.size());
  out.append(head).append(document).append(tail);
  return out;
}

std::string_view prefix_of(std::string_view tmpl) { return tmpl.substr(0, tmpl.find('\n')); }

}  // namespace

std::string_view e2e_template() { return generated::kE2E; }
std::string_view ner_template() { return generated::kNER; }
std::string_view re_template() { return generated::kRE; }

std::string render_e2e(std::string_view document) { return fill(e2e_template(), document); }
std::string render_ner(std::string_view document) { return fill(ner_template(), document); }

std::string render_re(std::string_view sample_json, std::string_view document) {
  const auto [head, rest] = split_at(re_template(), kSampleSlot);
  const auto [middle, tail] = split_at(rest, kDocumentSlot);
  std::string out;
  out.append(head).append(sample_json).append(middle).append(document).append(tail);
  return out;
}

Kind classify(std::string_view prompt) {
  if (prompt.starts_with(prefix_of(e2e_template()))) return Kind::e2e;
  if (prompt.starts_with(prefix_of(ner_template()))) return Kind::ner;
  if (prompt.starts_with(prefix_of(re_template()))) return Kind::re;
  return Kind::unknown;
}

std::string_view re_sample(std::string_view prompt) {
  const auto [head, rest] = split_at(re_template(), kSampleSlot);
  const auto [middle, tail] = split_at(rest, kDocumentSlot);
  if (!prompt.starts_with(head)) return {};
  prompt.remove_prefix(head.size());
  const auto end = prompt.find(middle);
  return end == std::string_view::npos ? prompt : prompt.substr(0, end);
}

}  // namespace nanoie::prompts
