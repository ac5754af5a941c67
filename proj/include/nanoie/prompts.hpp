#pragma once

// Prompt templates. The text lives in prompts/<version>/*.txt and is compiled
// in; "[PAPER SPLIT]" marks the article slot and "[JSON OBJECT]" the sample
// slot of the relation prompt.

#include <string>
#include <string_view>

namespace nanoie::prompts {

inline constexpr std::string_view kVersion = "v1";
inline constexpr std::string_view kDocumentSlot = "[PAPER SPLIT]";
inline constexpr std::string_view kSampleSlot = "[JSON OBJECT]";

enum class Kind { e2e, ner, re, unknown };

std::string_view e2e_template();
std::string_view ner_template();
std::string_view re_template();

std::string render_e2e(std::string_view document);
std::string render_ner(std::string_view document);
std::string render_re(std::string_view sample_json, std::string_view document);

/// Recognizes which template produced a rendered prompt.
Kind classify(std::string_view prompt);

/// The "[JSON OBJECT]" payload of a rendered relation prompt.
std::string_view re_sample(std::string_view prompt);

}  // namespace nanoie::prompts
