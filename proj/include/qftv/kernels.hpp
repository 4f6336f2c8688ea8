#pragma once

#include <complex>
#include <cstdint>

namespace qftv::kernels {

using cdouble = std::complex<double>;

// Execution policy for the state-vector kernels. The serial and parallel
// variants perform identical elementwise updates, so results are bit-identical
// for any thread count; `automatic` picks parallel for large states unless
// already inside a parallel region.
enum class Exec { serial, parallel, automatic };

inline constexpr std::uint64_t kParallelThreshold = 1ull << 12;

// All kernels address amplitudes by basis-index bit position `bit`
// (mask 1 << bit); callers translate qubit labels to bit positions.
void hadamard(cdouble* amps, std::uint64_t dim, int bit, Exec exec = Exec::automatic);
void phase_turn(cdouble* amps, std::uint64_t dim, int bit, double phi,
                Exec exec = Exec::automatic);
void controlled_phase_turn(cdouble* amps, std::uint64_t dim, int bit_a, int bit_b, double phi,
                           Exec exec = Exec::automatic);
void swap_bits(cdouble* amps, std::uint64_t dim, int bit_a, int bit_b,
               Exec exec = Exec::automatic);

}  // namespace qftv::kernels
