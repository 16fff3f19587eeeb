#pragma once

#include <cstdint>

namespace nlmc {

// SplitMix64. Tiny, portable and bit-stable, so every stochastic result in
// the library is reproducible from the recorded seed alone, independent of
// the standard library's distribution internals.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1) with 53 random mantissa bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Seed for parallel work item `index` under master `seed`. Depends only on
// the pair, so growing the number of paths never perturbs existing ones.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull));
}

inline const char* rng_name() { return "splitmix64"; }

}  // namespace nlmc
