#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace skillforge {

// SHA-256 hex digest. Used for request fingerprints and artifact content ids.
std::string sha256_hex(std::string_view data);

std::uint64_t fnv1a64(std::string_view data);

// Stateless mixer for deriving rng substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace skillforge
