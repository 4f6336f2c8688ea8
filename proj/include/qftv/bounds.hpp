#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qftv {

// One table row: exact out-of-window tail probability plus the rigorous and
// conjectured upper bounds for a given (N, K, x). The rigorous column is the
// x-free constant (1/4)(1/K + 1/(K-1)), the supremum of the x-dependent bound.
struct TailBoundRow {
    std::uint64_t N = 0;
    int K = 0;
    double x = 0.0;
    double exact_tail = 0.0;
    double rigorous_bound = 0.0;
    double conjectured_bound = 0.0;
};

// |alpha_k|^2 = sin^2(pi x) / (N^2 sin^2(pi (N theta - k)/N)) with
// x = frac(N theta); the removable singularity at exact resonance returns 1.
double alpha_sq(std::uint64_t N, double theta, std::uint64_t k);

// 1 - P with P the total squared amplitude on the 2K-integer window around
// floor(N theta), indices mod N. Compensated accumulation throughout.
double tail_probability_exact(std::uint64_t N, double theta, int K);

// (1/4) (1/(K-x) + 1/(K-1+x)), valid for every x in [0,1).
double tail_bound_rigorous(int K, double x);

// x-free form (1/4)(1/K + 1/(K-1)): the supremum of the above over x.
double tail_bound_rigorous_sup(int K);

// 4 / (pi^2 (2K-1)), the asymptotic bound assuming the tail peaks at x = 1/2.
double tail_bound_conjectured(int K);

std::vector<TailBoundRow> bounds_table(std::uint64_t N, std::span<const int> Ks,
                                       std::span<const double> xs);

}  // namespace qftv
