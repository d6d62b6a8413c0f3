#include "skillforge/rng.hpp"

#include "skillforge/common.hpp"
#include "skillforge/hashing.hpp"

#include <limits>

namespace skillforge {

std::uint64_t SeededRng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw Error("uniform_int: empty range");
    const std::uint64_t span = hi - lo; // inclusive range size - 1
    if (span == std::numeric_limits<std::uint64_t>::max()) return next_u64();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return lo + x % range;
}

double SeededRng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t SeededRng::pick_weighted(const std::vector<double>& weights) {
    if (weights.empty()) throw Error("pick_weighted: no weights");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw Error("pick_weighted: negative weight");
        total += w;
    }
    if (total <= 0.0) throw Error("pick_weighted: weights sum to zero");
    const double r = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc) return i;
    }
    return weights.size() - 1;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t round, std::string_view key) {
    const std::uint64_t mixed = splitmix64(master ^ splitmix64(round ^ 0x5bf03635ULL));
    return splitmix64(mixed ^ fnv1a64(key));
}

} // namespace skillforge
