#pragma once

#include <cstdint>

namespace domfilter {

// SplitMix64 (Steele, Lea, Flood 2014). Frozen: generated instances depend on it bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0; rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        std::uint64_t x = next();
        while (x < limit) x = next();
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Mixes a child seed out of a parent seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 a(seed ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t s = a.next();
    SplitMix64 b(s + stream * 0xd1b54a32d192ed03ULL);
    return b.next();
}

}  // namespace domfilter
