#pragma once

#include <cstdint>

namespace bis {

// splitmix64 finaliser; also used to derive substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of substream `index` of the stream seeded with `seed`.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

// xoshiro256** seeded through splitmix64.  Deterministic for a given seed on
// every platform; not thread-safe, give each worker its own substream.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept;

    static Rng substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return Rng(substream_seed(seed, index));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return next(); }
    std::uint64_t next() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform on (0, 1]; safe to take the log of.
    double uniform_open0() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }
    // Unbiased integer in [0, n).  n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept;

private:
    std::uint64_t s_[4];
};

} // namespace bis
