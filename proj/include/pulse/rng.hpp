#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace pulse {

// Finalizer of SplitMix64 (Steele, Lea, Flood). Good 64->64 mixer.
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based generator: state is seed + n*gamma, output is mix64(state).
// Machine-independent, O(1) seek, no warm-up.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform in [0, bound). Lemire multiply-shift with rejection.
    uint64_t next_below(uint64_t bound) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * bound;
        auto lo = static_cast<uint64_t>(m);
        if (lo < bound) {
            const uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * bound;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Standard normal via Box-Muller. Consumes two uniforms per value;
    // the sine twin is discarded to keep the draw count predictable.
    double next_normal() {
        const double u1 = 1.0 - next_double();  // (0, 1], log-safe
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Exponential inter-arrival gap with the given rate.
    double next_exponential(double rate) {
        return -std::log1p(-next_double()) / rate;
    }

private:
    uint64_t state_;
};

// Stable seed derivation for named streams: FNV-1a over the tag folded
// into the base seed.
inline uint64_t derive_seed(uint64_t base, std::string_view tag) {
    uint64_t h = 1469598103934665603ull ^ mix64(base);
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return mix64(h);
}

// Stable seed derivation for counter pairs (e.g. subset ordinal, repetition).
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b) {
    uint64_t h = mix64(base ^ (a * 0x9e3779b97f4a7c15ull));
    return mix64(h ^ (b * 0xc2b2ae3d27d4eb4full));
}

}  // namespace pulse
