#include "qftv/kernels.hpp"

#include <numbers>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qftv::kernels {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

bool run_parallel(std::uint64_t dim, Exec exec) {
#ifdef _OPENMP
    switch (exec) {
        case Exec::serial: return false;
        case Exec::parallel: return true;
        case Exec::automatic: return dim >= kParallelThreshold && omp_in_parallel() == 0;
    }
    return false;
#else
    (void)dim;
    (void)exec;
    return false;
#endif
}

// index with value h in the dim/2 space, expanded so position `bit` holds `set`
inline std::uint64_t expand_bit(std::uint64_t h, int bit, bool set) {
    const std::uint64_t low = h & ((1ull << bit) - 1);
    const std::uint64_t high = (h >> bit) << (bit + 1);
    return high | (static_cast<std::uint64_t>(set) << bit) | low;
}

}  // namespace

void hadamard(cdouble* amps, std::uint64_t dim, int bit, Exec exec) {
    const std::uint64_t step = 1ull << bit;
    const std::uint64_t half = dim / 2;
    if (run_parallel(dim, exec)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t h = 0; h < static_cast<std::int64_t>(half); ++h) {
            const std::uint64_t i0 = expand_bit(static_cast<std::uint64_t>(h), bit, false);
            const std::uint64_t i1 = i0 | step;
            const cdouble a = amps[i0];
            const cdouble b = amps[i1];
            amps[i0] = kInvSqrt2 * (a + b);
            amps[i1] = kInvSqrt2 * (a - b);
        }
    } else {
        for (std::uint64_t base = 0; base < dim; base += 2 * step) {
            for (std::uint64_t off = 0; off < step; ++off) {
                const std::uint64_t i0 = base + off;
                const std::uint64_t i1 = i0 + step;
                const cdouble a = amps[i0];
                const cdouble b = amps[i1];
                amps[i0] = kInvSqrt2 * (a + b);
                amps[i1] = kInvSqrt2 * (a - b);
            }
        }
    }
}

void phase_turn(cdouble* amps, std::uint64_t dim, int bit, double phi, Exec exec) {
    const std::uint64_t step = 1ull << bit;
    const std::uint64_t half = dim / 2;
    const cdouble w = std::polar(1.0, 2.0 * std::numbers::pi * phi);
    if (run_parallel(dim, exec)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t h = 0; h < static_cast<std::int64_t>(half); ++h) {
            amps[expand_bit(static_cast<std::uint64_t>(h), bit, true)] *= w;
        }
    } else {
        for (std::uint64_t base = 0; base < dim; base += 2 * step) {
            for (std::uint64_t off = 0; off < step; ++off) {
                amps[base + step + off] *= w;
            }
        }
    }
}

void controlled_phase_turn(cdouble* amps, std::uint64_t dim, int bit_a, int bit_b, double phi,
                           Exec exec) {
    if (bit_a < bit_b) std::swap(bit_a, bit_b);  // bit_a high, bit_b low
    const std::uint64_t quarter = dim / 4;
    const cdouble w = std::polar(1.0, 2.0 * std::numbers::pi * phi);
    if (run_parallel(dim, exec)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t h = 0; h < static_cast<std::int64_t>(quarter); ++h) {
            const std::uint64_t with_low = expand_bit(static_cast<std::uint64_t>(h), bit_b, true);
            amps[expand_bit(with_low, bit_a, true)] *= w;
        }
    } else {
        for (std::uint64_t h = 0; h < quarter; ++h) {
            const std::uint64_t with_low = expand_bit(h, bit_b, true);
            amps[expand_bit(with_low, bit_a, true)] *= w;
        }
    }
}

void swap_bits(cdouble* amps, std::uint64_t dim, int bit_a, int bit_b, Exec exec) {
    if (bit_a < bit_b) std::swap(bit_a, bit_b);
    const std::uint64_t quarter = dim / 4;
    const std::uint64_t mask = (1ull << bit_a) | (1ull << bit_b);
    if (run_parallel(dim, exec)) {
#pragma omp parallel for schedule(static)
        for (std::int64_t h = 0; h < static_cast<std::int64_t>(quarter); ++h) {
            // i has bit_a = 1, bit_b = 0; its partner flips both
            const std::uint64_t with_low = expand_bit(static_cast<std::uint64_t>(h), bit_b, false);
            const std::uint64_t i = expand_bit(with_low, bit_a, true);
            std::swap(amps[i], amps[i ^ mask]);
        }
    } else {
        for (std::uint64_t h = 0; h < quarter; ++h) {
            const std::uint64_t with_low = expand_bit(h, bit_b, false);
            const std::uint64_t i = expand_bit(with_low, bit_a, true);
            std::swap(amps[i], amps[i ^ mask]);
        }
    }
}

}  // namespace qftv::kernels
