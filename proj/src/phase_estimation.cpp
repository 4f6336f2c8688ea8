#include "qftv/phase_estimation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qftv {

WindowSpec WindowSpec::around(double theta, int K, int n) {
    if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0, 1)");
    if (n < 1 || n > kMaxQubits) throw std::out_of_range("invalid qubit count");
    const std::uint64_t dim = 1ull << n;
    if (K < 1 || 2ull * static_cast<std::uint64_t>(K) > dim) {
        throw std::out_of_range("window requires 2 <= 2K <= 2^n");
    }
    WindowSpec spec;
    spec.K = K;
    spec.k_star = static_cast<std::uint64_t>(static_cast<double>(dim) * theta);
    spec.members.reserve(2 * K);
    const auto sdim = static_cast<std::int64_t>(dim);
    for (int m = -K + 1; m <= K; ++m) {
        const std::int64_t shifted = static_cast<std::int64_t>(spec.k_star) + m;
        spec.members.push_back(static_cast<std::uint64_t>(((shifted % sdim) + sdim) % sdim));
    }
    return spec;
}

PhaseRunOutcome run_pe_once(const Channel& channel, double theta, RandomStream& rng,
                            std::optional<std::uint64_t> pinned_lambda) {
    if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0, 1)");
    const int n = channel.num_qubits();
    const std::uint64_t dim = 1ull << n;

    const std::uint64_t lambda = pinned_lambda ? *pinned_lambda % dim : rng.next_below(dim);
    const double theta_shifted =
        frac_turn(theta + static_cast<double>(lambda) / static_cast<double>(dim));

    const StateVector input = prepare_phase_state(n, theta_shifted);
    const StateVector output = apply_channel_shot(channel, input, rng);
    const std::uint64_t raw = measure_computational(output, rng);
    return PhaseRunOutcome{lambda, raw, (raw + dim - lambda) % dim};
}

std::vector<PhaseRunOutcome> randomized_pe(const Channel& channel, double theta,
                                           std::uint64_t shots, std::uint64_t master_seed,
                                           std::optional<std::uint64_t> pinned_lambda) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    std::vector<PhaseRunOutcome> outcomes(shots);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(shots); ++i) {
        RandomStream rng = RandomStream::derive(master_seed, static_cast<std::uint64_t>(i));
        outcomes[i] = run_pe_once(channel, theta, rng, pinned_lambda);
    }
    return outcomes;
}

double randomized_pe_failure_probability_exact(const Channel& channel, double theta) {
    const int n = channel.num_qubits();
    const std::uint64_t dim = 1ull << n;
    const double scaled = theta * static_cast<double>(dim);
    const auto k_star = static_cast<std::uint64_t>(std::llround(scaled));
    if (std::abs(scaled - static_cast<double>(k_star)) > 1e-12 || k_star >= dim) {
        throw std::invalid_argument("theta must be an exact n-bit phase");
    }

    std::vector<double> failure(dim);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t lambda = 0; lambda < static_cast<std::int64_t>(dim); ++lambda) {
        const std::uint64_t k_shifted = (k_star + static_cast<std::uint64_t>(lambda)) % dim;
        const double theta_shifted = static_cast<double>(k_shifted) / static_cast<double>(dim);
        const StateVector input = prepare_phase_state(n, theta_shifted);
        const std::vector<double> dist = output_distribution(channel, input);
        failure[lambda] = 1.0 - dist[k_shifted];
    }
    double total = 0.0;
    for (double f : failure) total += f;
    return total / static_cast<double>(dim);
}

double theorem3_bound(int K, double eta) {
    if (K < 2) throw std::out_of_range("closed-form bound requires K >= 2");
    if (eta < 0.0) throw std::invalid_argument("eta must be nonnegative");
    if (K * eta > 0.5) throw std::invalid_argument("bound requires K*eta <= 1/2");
    return 4.0 * K * eta + (0.5 - K * eta) * (1.0 / K + 1.0 / (K - 1));
}

double theorem3_bound_with_tail(int K, double eta, double alpha_rho_sq) {
    if (K < 1) throw std::out_of_range("bound requires K >= 1");
    if (eta < 0.0) throw std::invalid_argument("eta must be nonnegative");
    if (!(alpha_rho_sq >= 0.0 && alpha_rho_sq <= 1.0)) {
        throw std::invalid_argument("|alpha_rho|^2 must lie in [0, 1]");
    }
    const double window = 2.0 * K;
    return 2.0 * window * eta + 2.0 * (1.0 - window * eta) * alpha_rho_sq;
}

double circular_distance(double a, double b) {
    double d = std::abs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

bool good_outcome(std::uint64_t corrected, double theta, int K, int n) {
    if (n < 1 || n > kMaxQubits) throw std::out_of_range("invalid qubit count");
    const double dim = static_cast<double>(1ull << n);
    if (corrected >= static_cast<std::uint64_t>(dim)) {
        throw std::out_of_range("outcome out of range");
    }
    return circular_distance(theta, static_cast<double>(corrected) / dim) <= K / dim;
}

double circular_median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sample");
    double best_value = values[0];
    double best_cost = -1.0;
    for (double candidate : values) {
        double cost = 0.0;
        for (double v : values) cost += circular_distance(candidate, v);
        if (best_cost < 0.0 || cost < best_cost ||
            (cost == best_cost && candidate < best_value)) {
            best_cost = cost;
            best_value = candidate;
        }
    }
    return best_value;
}

double median_phase_estimate(std::span<const PhaseRunOutcome> outcomes, int n) {
    if (outcomes.empty()) throw std::invalid_argument("median of an empty sample");
    const double dim = static_cast<double>(1ull << n);
    std::vector<double> values;
    values.reserve(outcomes.size());
    for (const PhaseRunOutcome& outcome : outcomes) {
        values.push_back(static_cast<double>(outcome.corrected) / dim);
    }
    return circular_median(values);
}

bool lemma1_psd_check(std::span<const cdouble> beta) {
    const auto support = static_cast<Eigen::Index>(beta.size());
    if (support < 1 || support > 64) throw std::out_of_range("support size must be in [1, 64]");

    Eigen::VectorXcd psi(support);
    for (Eigen::Index j = 0; j < support; ++j) psi(j) = beta[j];

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(support, support);
    for (Eigen::Index j = 0; j < support; ++j) {
        m(j, j) = static_cast<double>(support) * std::norm(psi(j));
    }
    m -= psi * psi.adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -1e-10;
}

}  // namespace qftv
