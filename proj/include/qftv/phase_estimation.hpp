#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qftv/channel.hpp"

namespace qftv {

// One randomized-offset phase-estimation shot.
struct PhaseRunOutcome {
    std::uint64_t lambda_int = 0;   // the offset N*lambda
    std::uint64_t raw_outcome = 0;  // measured index before correction
    std::uint64_t corrected = 0;    // (raw_outcome - lambda_int) mod 2^n
};

// The 2K integers around floor(2^n theta), taken mod 2^n.
struct WindowSpec {
    int K = 0;
    std::uint64_t k_star = 0;
    std::vector<std::uint64_t> members;

    static WindowSpec around(double theta, int K, int n);
};

// One shot: draw lambda uniform on the 2^n grid (or use pinned_lambda, the
// debug hook for demonstrating the unrandomized failure mode), prepare the
// phase state for theta + lambda, apply one channel shot, measure, subtract.
PhaseRunOutcome run_pe_once(const Channel& channel, double theta, RandomStream& rng,
                            std::optional<std::uint64_t> pinned_lambda = std::nullopt);

// Independent shots with a fresh lambda each; shot i derives its stream from
// (master_seed, i), so results are reproducible under any parallel schedule.
std::vector<PhaseRunOutcome> randomized_pe(const Channel& channel, double theta,
                                           std::uint64_t shots, std::uint64_t master_seed,
                                           std::optional<std::uint64_t> pinned_lambda = std::nullopt);

// Exact failure probability of randomized PE for an n-bit theta, computed by
// averaging the channel's exact outcome distribution over all 2^n offsets
// (no sampling). Requires a channel with an exact output distribution.
double randomized_pe_failure_probability_exact(const Channel& channel, double theta);

// 4 K eta + (1/2 - K eta)(1/K + 1/(K-1)); requires K >= 2 and K eta <= 1/2.
double theorem3_bound(int K, double eta);

// Sharper variant taking the actual out-of-window weight |alpha_rho|^2:
// 2|S| eta + 2 (1 - |S| eta) |alpha_rho|^2 with |S| = 2K.
double theorem3_bound_with_tail(int K, double eta, double alpha_rho_sq);

// Circular distance on the unit torus: min(|a-b|, 1-|a-b|).
double circular_distance(double a, double b);

// True iff |theta - corrected/2^n| <= K/2^n (mod 1).
bool good_outcome(std::uint64_t corrected, double theta, int K, int n);

// The sample point minimizing the summed circular distance to all samples;
// ties broken toward the smaller value.
double circular_median(std::span<const double> values);

// Circular median of the corrected outcomes as phases in [0, 1).
double median_phase_estimate(std::span<const PhaseRunOutcome> outcomes, int n);

// Checks |T| sum_j |beta_j|^2 |j><j| - |psi><psi| >= 0 (up to -1e-10) for
// psi = sum_j beta_j |j> on a support of size |T| = beta.size() <= 64.
bool lemma1_psd_check(std::span<const cdouble> beta);

}  // namespace qftv
