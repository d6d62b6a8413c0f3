#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace skillforge {

// Classic edit distance (insert/delete/substitute, unit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);

// round(100 * (1 - lev/max(|a|,|b|))); two empty strings score 100.
int levenshtein_ratio(std::string_view a, std::string_view b);

// Order- and duplication-insensitive similarity over sorted-unique token
// sets: with I the sorted intersection joined by spaces, X = I + rest of a,
// Y = I + rest of b, the score is the best levenshtein_ratio among
// (I,X), (I,Y), (X,Y).
int token_set_ratio(std::string_view a, std::string_view b);

} // namespace skillforge
