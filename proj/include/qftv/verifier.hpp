#pragma once

#include <cstdint>

#include "qftv/channel.hpp"

namespace qftv {

struct InfidelityEstimate {
    double eta_hat = 0.0;
    std::uint64_t shots = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t failures = 0;
};

// ceil(ln(2/delta) / (2 epsilon^2)) -- Hoeffding shot count for additive
// error epsilon at confidence 1 - delta.
std::uint64_t required_shots(double epsilon, double delta);

// The average-infidelity test: each round draws k uniformly, prepares the
// Fourier basis state |k^>, applies one channel shot, measures, and counts a
// failure iff the outcome differs from k. Rounds are independent; round i
// draws from RandomStream::derive(master_seed, i), so results do not depend
// on execution order.
InfidelityEstimate estimate_average_infidelity(const Channel& channel, double epsilon,
                                               double delta, std::uint64_t master_seed);

// Sequential variant with an empirical-Bernstein stopping rule: checks at
// geometrically spaced checkpoints whether the confidence radius has dropped
// below epsilon and stops early (cheaper when the true infidelity is small).
// max_shots = 0 falls back to the fixed-shot count.
InfidelityEstimate estimate_average_infidelity_sequential(const Channel& channel, double epsilon,
                                                          double delta, std::uint64_t master_seed,
                                                          std::uint64_t max_shots = 0);

enum class Verdict { pass, fail };

// PASS iff eta_hat + epsilon <= threshold_eta (one-sided, PASS on equality).
Verdict verdict(const InfidelityEstimate& estimate, double threshold_eta);

}  // namespace qftv
