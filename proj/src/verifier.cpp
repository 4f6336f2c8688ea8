#include "qftv/verifier.hpp"

#include <cmath>
#include <stdexcept>

namespace qftv {

namespace {

void check_parameters(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
}

// One test round; returns true on failure (outcome != k).
bool round_fails(const Channel& channel, std::uint64_t dim, RandomStream& rng) {
    const std::uint64_t k = rng.next_below(dim);
    const StateVector input = prepare_fourier_basis_state(channel.num_qubits(), k);
    const StateVector output = apply_channel_shot(channel, input, rng);
    return measure_computational(output, rng) != k;
}

}  // namespace

std::uint64_t required_shots(double epsilon, double delta) {
    check_parameters(epsilon, delta);
    return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

InfidelityEstimate estimate_average_infidelity(const Channel& channel, double epsilon,
                                               double delta, std::uint64_t master_seed) {
    const std::uint64_t shots = required_shots(epsilon, delta);
    const std::uint64_t dim = 1ull << channel.num_qubits();

    std::uint64_t failures = 0;
#pragma omp parallel for schedule(static) reduction(+ : failures)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(shots); ++i) {
        RandomStream rng = RandomStream::derive(master_seed, static_cast<std::uint64_t>(i));
        failures += round_fails(channel, dim, rng) ? 1 : 0;
    }

    return InfidelityEstimate{static_cast<double>(failures) / static_cast<double>(shots), shots,
                              epsilon, delta, failures};
}

InfidelityEstimate estimate_average_infidelity_sequential(const Channel& channel, double epsilon,
                                                          double delta, std::uint64_t master_seed,
                                                          std::uint64_t max_shots) {
    check_parameters(epsilon, delta);
    if (max_shots == 0) max_shots = required_shots(epsilon, delta);
    const std::uint64_t dim = 1ull << channel.num_qubits();

    std::uint64_t failures = 0;
    std::uint64_t done = 0;
    std::uint64_t checkpoint = 16;
    int checkpoint_index = 1;
    while (done < max_shots) {
        const std::uint64_t target = std::min<std::uint64_t>(checkpoint, max_shots);
        for (; done < target; ++done) {
            RandomStream rng = RandomStream::derive(master_seed, done);
            failures += round_fails(channel, dim, rng) ? 1 : 0;
        }
        if (done == max_shots) break;

        // empirical-Bernstein radius at confidence delta_j = delta / (2 j (j+1));
        // the union over checkpoints spends at most delta/2
        const double t = static_cast<double>(done);
        const double mean = static_cast<double>(failures) / t;
        const double variance = mean * (1.0 - mean);
        const double delta_j =
            delta / (2.0 * checkpoint_index * (checkpoint_index + 1.0));
        const double log_term = std::log(3.0 / delta_j);
        const double radius = std::sqrt(2.0 * variance * log_term / t) + 3.0 * log_term / t;
        if (radius <= epsilon) break;

        checkpoint *= 2;
        ++checkpoint_index;
    }

    return InfidelityEstimate{static_cast<double>(failures) / static_cast<double>(done), done,
                              epsilon, delta, failures};
}

Verdict verdict(const InfidelityEstimate& estimate, double threshold_eta) {
    if (!(threshold_eta > 0.0 && threshold_eta < 1.0)) {
        throw std::invalid_argument("threshold must be in (0, 1)");
    }
    return estimate.eta_hat + estimate.epsilon <= threshold_eta ? Verdict::pass : Verdict::fail;
}

}  // namespace qftv
