#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace benfordsep {

// std::mt19937_64 output is pinned by the standard; the distribution adapters
// are not, so all draws below are derived from raw engine output to keep
// results identical across standard libraries.

/// Uniform double in [0, 1) using the top 53 bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection.
inline std::uint64_t bounded_uint(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

/// Fisher-Yates shuffle with bounded_uint draws.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uint(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace benfordsep
