#include "qftv/applications.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qftv {

std::uint64_t PeriodicStateSpec::support_count() const {
    return (dimension - offset + period - 1) / period;
}

int PeriodicStateSpec::num_qubits() const {
    return std::bit_width(dimension) - 1;
}

void PeriodicStateSpec::validate() const {
    if (dimension < 2 || !std::has_single_bit(dimension)) {
        throw std::invalid_argument("dimension must be a power of two >= 2");
    }
    if (dimension > (1ull << kMaxExhaustiveQubits)) {
        throw std::out_of_range("dimension exceeds the 2^14 cap");
    }
    if (period < 1 || period > dimension) {
        throw std::invalid_argument("period must lie in [1, N]");
    }
    if (offset >= period) throw std::invalid_argument("offset must lie in [0, period)");
}

StateVector periodic_state(const PeriodicStateSpec& spec) {
    spec.validate();
    const std::uint64_t p = spec.support_count();
    std::vector<cdouble> amps(spec.dimension, cdouble{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(p));
    for (std::uint64_t z = 0; z < p; ++z) {
        amps[spec.offset + z * spec.period] = cdouble{amp, 0.0};
    }
    return StateVector(spec.num_qubits(), std::move(amps));
}

std::vector<cdouble> fourier_coefficients_periodic(const PeriodicStateSpec& spec) {
    spec.validate();
    const std::uint64_t N = spec.dimension;
    const std::uint64_t p = spec.support_count();

    // roots[m] = e^{2 pi i m / N}; exponents reduced mod N keep angles small
    std::vector<cdouble> roots(N);
    for (std::uint64_t m = 0; m < N; ++m) {
        roots[m] = unit_phase(static_cast<double>(m) / static_cast<double>(N));
    }

    std::vector<cdouble> coeffs(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p) * static_cast<double>(N));
    for (std::uint64_t j = 0; j < N; ++j) {
        const std::uint64_t jr = (j * spec.period) % N;
        cdouble geometric;
        if (jr == 0) {
            geometric = cdouble{static_cast<double>(p), 0.0};
        } else {
            const std::uint64_t jrp = (jr * p) % N;
            geometric = (cdouble{1.0, 0.0} - roots[jrp]) / (cdouble{1.0, 0.0} - roots[jr]);
        }
        coeffs[j] = roots[(j * spec.offset) % N] * scale * geometric;
    }
    return coeffs;
}

std::vector<Convergent> continued_fraction_convergents(std::uint64_t j, std::uint64_t N) {
    if (N < 1) throw std::invalid_argument("denominator must be positive");
    if (j >= N) throw std::out_of_range("j must lie in [0, N)");

    std::vector<Convergent> out;
    std::uint64_t num = j;
    std::uint64_t den = N;
    std::uint64_t h_prev = 1, h_prev2 = 0;  // p_{-1}, p_{-2}
    std::uint64_t k_prev = 0, k_prev2 = 1;  // q_{-1}, q_{-2}
    while (den != 0) {
        const std::uint64_t a = num / den;
        const std::uint64_t rem = num % den;
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        out.push_back(Convergent{h, k});
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        num = den;
        den = rem;
    }
    return out;
}

PeriodFindingResult period_finding_run(const Channel& channel, const PeriodicStateSpec& spec,
                                       std::uint64_t period_bound, RandomStream& rng) {
    spec.validate();
    if (channel.num_qubits() != spec.num_qubits()) {
        throw std::invalid_argument("channel dimension does not match the periodic state");
    }
    if (period_bound < spec.period) {
        throw std::invalid_argument("period bound must be >= the true period");
    }
    const std::uint64_t N = spec.dimension;

    // eigenphase-mixture reduction: sample j with probability |alpha_j|^2
    const std::vector<cdouble> coeffs = fourier_coefficients_periodic(spec);
    double u = rng.next_double();
    std::uint64_t sampled_j = 0;
    for (std::uint64_t j = 0; j < N; ++j) {
        const double w = std::norm(coeffs[j]);
        if (w == 0.0) continue;
        sampled_j = j;  // rounding fallback: the last positive-weight index
        if (u < w) break;
        u -= w;
    }

    const double theta = static_cast<double>(sampled_j) / static_cast<double>(N);
    const PhaseRunOutcome outcome = run_pe_once(channel, theta, rng);

    PeriodFindingResult result;
    result.outcome_j = outcome.corrected;
    result.convergents = continued_fraction_convergents(outcome.corrected, N);

    const double target = static_cast<double>(outcome.corrected) / static_cast<double>(N);
    double best_error = -1.0;
    for (const Convergent& convergent : result.convergents) {
        if (convergent.denominator > period_bound) continue;
        const double error = std::abs(
            target - static_cast<double>(convergent.numerator) /
                         static_cast<double>(convergent.denominator));
        if (best_error < 0.0 || error < best_error) {  // ties keep the smaller denominator
            best_error = error;
            result.candidate_period = convergent.denominator;
        }
    }
    result.success = result.candidate_period.has_value() &&
                     *result.candidate_period == spec.period;
    return result;
}

AmplitudeEstimate amplitude_estimation(const Channel& channel, double mu, std::uint64_t shots,
                                       std::uint64_t master_seed) {
    if (!(mu >= 0.0 && mu <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument("mu must lie in [0, pi/2]");
    }
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");

    const double dim = static_cast<double>(1ull << channel.num_qubits());
    const double theta_plus = frac_turn(mu / std::numbers::pi);   // eigenvalue e^{+2 i mu}
    const double theta_minus = frac_turn(1.0 - mu / std::numbers::pi);

    AmplitudeEstimate estimate;
    estimate.samples.assign(shots, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(shots); ++i) {
        RandomStream rng = RandomStream::derive(master_seed, static_cast<std::uint64_t>(i));
        const double theta = rng.next_double() < 0.5 ? theta_plus : theta_minus;
        const PhaseRunOutcome outcome = run_pe_once(channel, theta, rng);
        double value = static_cast<double>(outcome.corrected) / dim;
        if (value >= 0.5) value = 1.0 - value;  // fold the e^{-2 i mu} branch
        estimate.samples[i] = value;
    }
    estimate.mu_hat = std::numbers::pi * circular_median(estimate.samples);
    return estimate;
}

}  // namespace qftv
