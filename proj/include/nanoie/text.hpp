#pragma once

// Small string helpers shared across modules. ASCII-only case folding.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nanoie::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// Splits on runs of ASCII whitespace.
std::vector<std::string_view> whitespace_tokens(std::string_view s);
std::size_t count_tokens(std::string_view s);

/// Lowercases, drops punctuation and collapses whitespace runs to one space.
std::string fold_for_matching(std::string_view s);

std::size_t edit_distance(std::string_view a, std::string_view b);

/// 1 - edit_distance / max(len). Two empty strings score 1.
double edit_similarity(std::string_view a, std::string_view b);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Parses the whole of `s` as a finite decimal number.
std::optional<double> parse_number(std::string_view s);

}  // namespace nanoie::text
