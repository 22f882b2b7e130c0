#pragma once

#include <cstdint>

namespace opnorm {

// Counter-based generator: one 64-bit word per (seed, stream, counter) key,
// produced by two rounds of the SplitMix64 finalizer over the mixed key.
// Draws are order-independent, so sampling parallelizes without affecting
// determinism. The mixing constants are version-pinned; changing them
// changes every sampled ensemble.
inline uint64_t mix64(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t z = seed;
    z ^= stream * 0x9E3779B97F4A7C15ull + 0x3C6EF372FE94F82Aull;
    z ^= counter * 0xBF58476D1CE4E5B9ull + 0xD1B54A32D192ED03ull;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    z += 0x9E3779B97F4A7C15ull;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(uint64_t seed, uint64_t stream, uint64_t counter) {
    return static_cast<double>(mix64(seed, stream, counter) >> 11) * 0x1.0p-53;
}

}  // namespace opnorm
