#pragma once

#include <cstdint>

#include "arbodom/rational.hpp"

namespace arbodom {

// Counter-based stream: every draw is a pure function of its key, so
// results never depend on call order or thread schedule.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rng_u64(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                             std::uint64_t c = 0) {
    return mix64(mix64(mix64(mix64(seed) ^ a) ^ b) ^ c);
}

/// Uniform draw in [lo, hi] (inclusive). Deterministic in the key.
inline std::uint64_t rng_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed,
                               std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0) {
    return lo + rng_u64(seed, a, b, c) % (hi - lo + 1);
}

/// Bernoulli coin with exact rational p in [0,1], granularity 2^-64:
/// accepts iff u < p * 2^64, compared in exact integer arithmetic.
inline bool rng_coin(const Rat& p, std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    std::uint64_t u = rng_u64(seed, a, b, c);
    BigInt lhs = BigInt(u) * denominator(p);
    BigInt rhs = numerator(p) << 64;
    return lhs < rhs;
}

}  // namespace arbodom
