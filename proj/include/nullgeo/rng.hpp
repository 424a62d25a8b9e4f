#pragma once

#include <cstdint>

// Deterministic cross-platform randomness: splitmix64 stream with explicit
// conversions, so sampled pairs and subsets are identical on every libstdc++
// or libc++ build (std::uniform_* distributions are not portable).

namespace nullgeo {

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double u01() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n > 0; rejection-free modulo is fine for the
    // sample sizes used here (bias < 2^-50).
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace nullgeo
