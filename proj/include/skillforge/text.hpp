#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skillforge {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

bool is_space_char(char c);
bool is_alnum_char(char c);

// Lowercased runs of alphanumeric characters.
std::vector<std::string> tokenize_alnum(std::string_view s);

// Whitespace-delimited tokens, original casing.
std::vector<std::string> split_whitespace(std::string_view s);

// Collapse whitespace runs to single spaces and trim the ends.
std::string normalize_whitespace(std::string_view s);

bool contains_ci(std::string_view haystack, std::string_view needle);

// First occurrence of `needle` in `haystack` at or after `from`, treating any
// whitespace run in the needle as matching any whitespace run in the haystack.
// Returns [start, end) in haystack coordinates.
std::optional<std::pair<std::size_t, std::size_t>>
find_flexible(std::string_view haystack, std::string_view needle, std::size_t from = 0);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Replace every occurrence of `placeholder` in `tmpl`.
std::string substitute(std::string_view tmpl, std::string_view placeholder, std::string_view value);

// Split a model reply into individual items: one per nonempty line, with
// leading enumeration markers ("1.", "2)", "-", "*") stripped.
std::vector<std::string> split_enumerated(std::string_view reply);

} // namespace skillforge
