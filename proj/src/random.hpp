#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace sleeproute::detail {

// The distributions in <random> are implementation-defined; these keep seeded
// runs identical across standard libraries.

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % b);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % b);
}

/// Uniform in [0, 1).
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace sleeproute::detail
