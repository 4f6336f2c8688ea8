#include "qftv/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qftv {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier compensated accumulation: the window sums mix terms spanning many
// orders of magnitude and the table must resolve 1e-3 differences reliably.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value)) {
            compensation += (sum - t) + value;
        } else {
            compensation += (value - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + compensation; }
};

void check_n_dim(std::uint64_t N) {
    if (N < 2 || !std::has_single_bit(N)) {
        throw std::invalid_argument("N must be a power of two >= 2");
    }
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0, 1)");
}

}  // namespace

double alpha_sq(std::uint64_t N, double theta, std::uint64_t k) {
    check_n_dim(N);
    check_theta(theta);
    if (k >= N) throw std::out_of_range("k must lie in [0, N)");

    const double n_theta = static_cast<double>(N) * theta;
    const double x = n_theta - std::floor(n_theta);
    const double denom = std::sin(kPi * (n_theta - static_cast<double>(k)) / static_cast<double>(N));
    if (std::abs(denom) < 1e-12) return 1.0;  // removable singularity: exact resonance
    const double num = std::sin(kPi * x);
    const double ratio = num / (static_cast<double>(N) * denom);
    return ratio * ratio;
}

double tail_probability_exact(std::uint64_t N, double theta, int K) {
    check_n_dim(N);
    check_theta(theta);
    if (K < 1 || 2ull * static_cast<std::uint64_t>(K) > N) {
        throw std::out_of_range("window requires 2 <= 2K <= N");
    }

    const double n_theta = static_cast<double>(N) * theta;
    const std::uint64_t k_star = static_cast<std::uint64_t>(n_theta);
    CompensatedSum window;
    for (int m = -K + 1; m <= K; ++m) {
        const std::uint64_t k =
            (k_star + static_cast<std::uint64_t>(static_cast<std::int64_t>(N) + m)) % N;
        window.add(alpha_sq(N, theta, k));
    }
    return std::clamp(1.0 - window.value(), 0.0, 1.0);
}

double tail_bound_rigorous(int K, double x) {
    if (K < 2) throw std::out_of_range("rigorous bound requires K >= 2");
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("x must lie in [0, 1)");
    return 0.25 * (1.0 / (K - x) + 1.0 / (K - 1 + x));
}

double tail_bound_rigorous_sup(int K) {
    if (K < 2) throw std::out_of_range("rigorous bound requires K >= 2");
    return 0.25 * (1.0 / K + 1.0 / (K - 1));
}

double tail_bound_conjectured(int K) {
    if (K < 1) throw std::out_of_range("conjectured bound requires K >= 1");
    return 4.0 / (kPi * kPi * (2.0 * K - 1.0));
}

std::vector<TailBoundRow> bounds_table(std::uint64_t N, std::span<const int> Ks,
                                       std::span<const double> xs) {
    check_n_dim(N);
    std::vector<TailBoundRow> rows;
    rows.reserve(Ks.size() * xs.size());
    for (int K : Ks) {
        for (double x : xs) {
            const double theta = x / static_cast<double>(N);  // k* = 0 representative
            rows.push_back(TailBoundRow{N, K, x, tail_probability_exact(N, theta, K),
                                        tail_bound_rigorous_sup(K), tail_bound_conjectured(K)});
        }
    }
    return rows;
}

}  // namespace qftv
