#pragma once

#include <cstdint>

namespace agrotrend {

// splitmix64 finalizer; full-period mixing of a 64-bit state.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based substream derivation: independent of draw order, so parallel
// consumers of (seed, stream) are deterministic regardless of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

// Minimal deterministic generator. Not std::uniform_* based: the standard
// distributions are implementation-defined, and outputs here must be
// bit-reproducible across compilers.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0, bound). Multiply-shift reduction; bias is O(bound/2^64).
    std::uint64_t bounded(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller on two uniforms (deterministic).
    double normal();

private:
    std::uint64_t state_;
};

} // namespace agrotrend
