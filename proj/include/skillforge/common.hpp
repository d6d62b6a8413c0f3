#pragma once

#include <stdexcept>
#include <string>

namespace skillforge {

// Sentinel labels. Never taxonomy entries.
inline constexpr const char* kUnkLabel = "UNK";   // skill mentioned but outside the taxonomy
inline constexpr const char* kNoneLabel = "NONE"; // sample contains no skill at all

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace skillforge
