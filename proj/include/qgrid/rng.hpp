// rng.hpp -- seeded random helpers with pinned algorithms, so that outputs
// for a given seed do not depend on the standard library implementation.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qgrid {

using Rng = std::mt19937_64;

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= lim);
    return v % n;
}

inline double uniform_01(Rng& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

// Box-Muller, one value per call (the partner draw is discarded).
inline double standard_normal(Rng& rng) {
    double u1 = uniform_01(rng);
    while (u1 <= 0.0) u1 = uniform_01(rng);
    const double u2 = uniform_01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

template <typename T>
void shuffle_fisher_yates(std::vector<T>& v, Rng& rng) {
    for (std::size_t k = v.size(); k > 1; --k) {
        std::swap(v[k - 1], v[uniform_below(rng, k)]);
    }
}

}  // namespace qgrid
