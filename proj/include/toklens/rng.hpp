#pragma once

#include <cstdint>

namespace toklens {

/// SplitMix64 (Steele, Lea, Flood 2014). 64-bit state, one multiply-xor
/// chain per draw. Chosen as the sampling generator because the algorithm
/// is short enough to restate exactly in any language.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound) via rejection; bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
        std::uint64_t v = next();
        while (v > limit) v = next();
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace toklens
