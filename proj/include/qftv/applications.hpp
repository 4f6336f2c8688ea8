#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qftv/channel.hpp"
#include "qftv/phase_estimation.hpp"

namespace qftv {

// Periodic state (1/sqrt(p)) sum_z |s + z r> on dimension N = 2^n, with
// p = ceil((N - s)/r) nonzero amplitudes.
struct PeriodicStateSpec {
    std::uint64_t dimension = 0;  // N, a power of two
    std::uint64_t period = 0;     // r, 1 <= r <= N
    std::uint64_t offset = 0;     // s in [0, r)

    std::uint64_t support_count() const;  // p
    int num_qubits() const;
    void validate() const;
};

StateVector periodic_state(const PeriodicStateSpec& spec);

// Closed-form Fourier coefficients alpha_j = w^{js}/sqrt(pN) * sum_z w^{jzr}
// of the periodic state (geometric-series form, exponents reduced mod N).
std::vector<cdouble> fourier_coefficients_periodic(const PeriodicStateSpec& spec);

struct Convergent {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;
    bool operator==(const Convergent&) const = default;
};

// All convergents of j/N in lowest terms, increasing denominators, ending at
// j/N reduced. j = 0 yields {(0, 1)}.
std::vector<Convergent> continued_fraction_convergents(std::uint64_t j, std::uint64_t N);

struct PeriodFindingResult {
    std::uint64_t outcome_j = 0;  // corrected phase-estimation outcome
    std::optional<std::uint64_t> candidate_period;
    std::vector<Convergent> convergents;
    bool success = false;
};

// One period-finding run: sample an eigenphase index j with probability
// |alpha_j|^2 (mixture-of-eigenstates reduction), run one randomized-PE shot
// at theta = j/N, then recover a candidate period r' <= period_bound from the
// continued-fraction convergents of corrected/N (closest convergent wins,
// ties to the smaller denominator).
PeriodFindingResult period_finding_run(const Channel& channel, const PeriodicStateSpec& spec,
                                       std::uint64_t period_bound, RandomStream& rng);

struct AmplitudeEstimate {
    double mu_hat = 0.0;          // in [0, pi/2]
    std::vector<double> samples;  // folded per-shot estimates, each in [0, 1/2]
};

// Amplitude estimation: per shot, sample one of the two rotation eigenphases
// mu/pi and 1 - mu/pi with probability 1/2 each, run one randomized-PE shot,
// fold estimates in [1/2, 1) to 1 - estimate, and return pi times the
// circular median of the folded samples.
AmplitudeEstimate amplitude_estimation(const Channel& channel, double mu, std::uint64_t shots,
                                       std::uint64_t master_seed);

}  // namespace qftv
