#pragma once

#include <cmath>
#include <cstdint>

// Deterministic, platform-independent random streams. The standard library
// distributions are implementation-defined, so anything that feeds seeds,
// weights, or samplers is generated here instead.

namespace nnc {

// SplitMix64 (Steele et al.). Counter-based: mix(seed + i * GAMMA) gives a
// random-access stream.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Distinct sub-seed for a named role under one master seed.
inline uint64_t derive_seed(uint64_t master, uint64_t role) {
    return splitmix64(splitmix64(master) ^ splitmix64(role * 0x9E3779B97F4A7C15ull + 1));
}

inline double u64_to_unit(uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;  // [0, 1)
}

class SplitMix {
public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    double next_unit() { return u64_to_unit(next_u64()); }

    // Uniform integer in [0, n), n >= 1. Bias is negligible for n << 2^64.
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

    // Standard normal via Box-Muller. Half of each pair is discarded to keep
    // the stream position independent of call parity.
    double next_normal() {
        double u1 = next_unit();
        double u2 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    uint64_t state_;
};

}  // namespace nnc
