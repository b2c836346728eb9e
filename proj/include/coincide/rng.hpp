#pragma once

#include <cstdint>
#include <random>

namespace coincide {

// std::uniform_*_distribution output is implementation-defined; these
// helpers keep seeded runs byte-identical across standard libraries.

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

/// Uniform index in [0, n). Modulo bias is immaterial at the sizes used here.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

}  // namespace coincide
