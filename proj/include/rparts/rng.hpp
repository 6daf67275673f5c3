#pragma once

#include <cstdint>

#include "rparts/bigint.hpp"

namespace rparts {

// SplitMix64 (Steele/Lea/Flood); used for seeding and seed derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// The per-cell seed split: cell i of a run with master seed s receives
/// splitmix64(s + (i+1) * golden-gamma). Documented so that parallel runs
/// are reproducible from (master seed, cell index) alone.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_index)
{
    std::uint64_t state = master + (cell_index + 1) * 0x9E3779B97F4A7C15ULL;
    return splitmix64_next(state);
}

/// xoshiro256** 1.0 (Blackman & Vigna, public domain reference algorithm),
/// state-initialized from the seed via SplitMix64. Identical seeds produce
/// identical streams on every platform.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed)
    {
        std::uint64_t sm = seed;
        for (auto& word : s_)
            word = splitmix64_next(sm);
    }

    std::uint64_t operator()()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t(0); }

    // Uniform on the open interval (0,1): 53-bit mantissa centered half a ulp
    // away from both endpoints, so logarithms are always finite.
    double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t bound)
    {
        // rejection from the top bits; bound > 0
        const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
        std::uint64_t v;
        do {
            v = (*this)();
        } while (v >= limit);
        return v % bound;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

/// Uniform big integer in [0, bound): assembled from 64-bit words with
/// top-bits masking and rejection.
inline BigCount uniform_below(Xoshiro256StarStar& rng, const BigCount& bound)
{
    if (bound <= 0)
        throw std::invalid_argument("uniform_below requires a positive bound");
    if (fits_u64(bound))
        return BigCount(static_cast<unsigned long>(rng.below(to_u64(bound))));
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
    const std::uint64_t top_mask =
        top_bits >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << top_bits) - 1);
    BigCount v;
    while (true) {
        v = 0;
        for (std::size_t w = words; w-- > 0;) {
            std::uint64_t word = rng();
            if (w + 1 == words)
                word &= top_mask;
            v <<= 64;
            v += BigCount(static_cast<unsigned long>(word));
        }
        if (v < bound)
            return v;
    }
}

} // namespace rparts
