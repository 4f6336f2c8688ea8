#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace qftv {

// Splittable counter-seeded random stream (SplitMix64 core).
//
// Derivation scheme: derive(master, i) seeds the stream for shot i as
// mix64(master ^ mix64(i + GOLDEN)), so a shot's randomness depends only on
// (master, i). Parallel shot loops derive one stream per shot index and
// produce the same results under any thread schedule.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    static RandomStream derive(std::uint64_t master_seed, std::uint64_t index) {
        return RandomStream(mix64(master_seed ^ mix64(index + kGolden)));
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // uniform in [0, 1), 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound), unbiased (rejection sampling)
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t residue = (UINT64_MAX % bound + 1) % bound;  // 2^64 mod bound
        std::uint64_t v = next_u64();
        while (residue != 0 && v > UINT64_MAX - residue) v = next_u64();
        return v % bound;
    }

    // standard normal, Box-Muller
    double next_normal() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace qftv
