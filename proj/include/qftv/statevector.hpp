#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qftv/rng.hpp"

namespace qftv {

using cdouble = std::complex<double>;

inline constexpr int kMaxQubits = 24;       // state-vector path cap
inline constexpr int kMaxDenseQubits = 10;  // dense-matrix path cap

// e^{2 pi i phi}, phi in turns
cdouble unit_phase(double phi);

// fractional part in [0, 1)
double frac_turn(double x);

enum class GateKind { hadamard, phase_turn, controlled_phase_turn, swap_qubits };

// One gate. Qubit 0 is the most significant bit of the basis-state index.
// Phases are stored in turns: phi in [0,1), applied as e^{2 pi i phi} on |1>.
// R_s and the controlled R_s are the dyadic special cases phi = 2^-s.
struct Gate {
    GateKind kind = GateKind::hadamard;
    int target = 0;
    int control = -1;  // partner qubit for controlled_phase_turn / swap_qubits
    double phi = 0.0;

    static Gate hadamard(int target);
    static Gate single_qubit_phase(double phi, int target);
    static Gate phase_rot(int s, int target);
    static Gate controlled_phase(double phi, int control, int target);
    static Gate controlled_phase_rot(int s, int control, int target);
    static Gate swap(int a, int b);

    Gate inverse() const;
    bool operator==(const Gate&) const = default;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Circuit inverse() const;
    Circuit then(const Circuit& next) const;  // this circuit followed by next
    void append_x(int qubit);                 // X = H Z H in the native gate set
    bool operator==(const Circuit&) const = default;
};

class StateVector {
public:
    explicit StateVector(int num_qubits);  // |0...0>
    StateVector(int num_qubits, std::vector<cdouble> amplitudes);
    static StateVector basis(int num_qubits, std::uint64_t index);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return amplitudes_.size(); }
    std::span<const cdouble> amplitudes() const { return amplitudes_; }
    cdouble amp(std::uint64_t i) const { return amplitudes_[i]; }
    double norm_sq() const;

private:
    friend void apply_gate_in_place(StateVector& state, const Gate& gate);

    int num_qubits_;
    std::vector<cdouble> amplitudes_;
};

void apply_gate_in_place(StateVector& state, const Gate& gate);
void apply_circuit_in_place(StateVector& state, const Circuit& circuit);
StateVector apply_gate(StateVector state, const Gate& gate);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

cdouble inner_product(const StateVector& a, const StateVector& b);  // <a|b>
double fidelity_pure(const StateVector& a, const StateVector& b);   // |<a|b>|^2

// Exact QFT circuit: n Hadamards, n(n-1)/2 controlled rotations, final swaps.
// Its dense matrix is exactly [omega_N^{jk} / sqrt(N)].
Circuit qft_circuit(int n);

// Coppersmith truncation: qft_circuit(n) minus every controlled R_s with
// s > ceil(cutoff_c * log2(n)).
Circuit approx_qft_circuit(int n, double cutoff_c);

// F_N|k> built as a product of n single-qubit preparations, never via a QFT
// circuit. phase_bits > 0 truncates each qubit phase to that many binary
// digits (0 keeps full machine precision).
StateVector prepare_fourier_basis_state(int n, std::uint64_t k, int phase_bits = 0);

// (1/sqrt(2^n)) sum_j e^{2 pi i j phase} |j>
StateVector prepare_phase_state(int n, double phase);

// Sample a basis index with probability |amp|^2; requires norm within 1e-6.
std::uint64_t measure_computational(const StateVector& state, RandomStream& rng);

}  // namespace qftv
