// Serial vs OpenMP timing for the hot loops: gate kernels on a large state,
// exhaustive per-basis-state infidelity, and the verifier shot loop.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qftv/channel.hpp"
#include "qftv/kernels.hpp"
#include "qftv/statevector.hpp"
#include "qftv/verifier.hpp"

using namespace qftv;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double time_circuit_application(int n, kernels::Exec exec, int repeats) {
    const Circuit circuit = qft_circuit(n);
    std::vector<cdouble> amps(1ull << n, cdouble{0.0, 0.0});
    amps[0] = cdouble{1.0, 0.0};
    const std::uint64_t dim = amps.size();

    const auto start = Clock::now();
    for (int rep = 0; rep < repeats; ++rep) {
        for (const Gate& gate : circuit.gates) {
            const int target_bit = n - 1 - gate.target;
            switch (gate.kind) {
                case GateKind::hadamard:
                    kernels::hadamard(amps.data(), dim, target_bit, exec);
                    break;
                case GateKind::phase_turn:
                    kernels::phase_turn(amps.data(), dim, target_bit, gate.phi, exec);
                    break;
                case GateKind::controlled_phase_turn:
                    kernels::controlled_phase_turn(amps.data(), dim, n - 1 - gate.control,
                                                   target_bit, gate.phi, exec);
                    break;
                case GateKind::swap_qubits:
                    kernels::swap_bits(amps.data(), dim, n - 1 - gate.control, target_bit, exec);
                    break;
            }
        }
    }
    return seconds_since(start);
}

double time_eta_scan(int n, int threads) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    const Channel channel = Channel::exact_unitary(approx_qft_circuit(n, 2.0).inverse());
    const auto start = Clock::now();
    const PerBasisInfidelity info = exact_per_basis_infidelity(channel);
    const double elapsed = seconds_since(start);
    std::printf("    (eta_avg = %.6f)\n", info.eta_avg);
    return elapsed;
}

double time_verifier(int n, int threads, double epsilon) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    const Channel channel = Channel::exact_unitary(qft_circuit(n).inverse());
    const auto start = Clock::now();
    const InfidelityEstimate estimate =
        estimate_average_infidelity(channel, epsilon, 0.01, 7);
    const double elapsed = seconds_since(start);
    std::printf("    (shots = %llu, eta_hat = %.4f)\n",
                static_cast<unsigned long long>(estimate.shots), estimate.eta_hat);
    return elapsed;
}

}  // namespace

int main() {
    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    std::printf("max threads: %d\n\n", max_threads);

    {
        const int n = 18;
        const int repeats = 4;
        std::printf("QFT circuit application, n = %d, %d repeats\n", n, repeats);
        const double serial = time_circuit_application(n, kernels::Exec::serial, repeats);
        const double parallel = time_circuit_application(n, kernels::Exec::parallel, repeats);
        std::printf("  serial   %.3f s\n  parallel %.3f s\n  speedup  %.2fx\n\n", serial,
                    parallel, serial / parallel);
    }

    {
        const int n = 11;
        std::printf("exhaustive per-basis-state infidelity, n = %d\n", n);
        const double serial = time_eta_scan(n, 1);
        const double parallel = time_eta_scan(n, max_threads);
        std::printf("  serial   %.3f s\n  parallel %.3f s\n  speedup  %.2fx\n\n", serial,
                    parallel, serial / parallel);
    }

    {
        const int n = 10;
        const double epsilon = 0.02;
        std::printf("verifier shot loop, n = %d, epsilon = %.2f\n", n, epsilon);
        const double serial = time_verifier(n, 1, epsilon);
        const double parallel = time_verifier(n, max_threads, epsilon);
        std::printf("  serial   %.3f s\n  parallel %.3f s\n  speedup  %.2fx\n", serial, parallel,
                    serial / parallel);
    }
    return 0;
}
