#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace skillforge {

// mt19937_64 with hand-rolled draws. The standard distributions are not
// bit-stable across library implementations; these are.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased uniform draw over [lo, hi], inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01();

    // Index drawn proportionally to `weights` (nonnegative, not all zero).
    std::size_t pick_weighted(const std::vector<double>& weights);

    // Fisher-Yates shuffle with this engine's draws.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(0, i - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Substream seed for a (round, key) pair under a master seed; stable across
// runs and platforms.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t round, std::string_view key);

} // namespace skillforge
