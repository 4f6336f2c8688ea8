#include "qftv/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qftv/kernels.hpp"

namespace qftv {

cdouble unit_phase(double phi) {
    return std::polar(1.0, 2.0 * std::numbers::pi * phi);
}

double frac_turn(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards against floor rounding at the boundary
    return f;
}

namespace {

void check_qubit_count(int n, int cap) {
    if (n < 1 || n > cap) {
        throw std::out_of_range("qubit count " + std::to_string(n) + " outside [1, " +
                                std::to_string(cap) + "]");
    }
}

void check_gate_indices(const Gate& gate, int n) {
    if (gate.target < 0 || gate.target >= n) {
        throw std::out_of_range("gate target qubit out of range");
    }
    const bool two_qubit =
        gate.kind == GateKind::controlled_phase_turn || gate.kind == GateKind::swap_qubits;
    if (two_qubit) {
        if (gate.control < 0 || gate.control >= n) {
            throw std::out_of_range("gate control qubit out of range");
        }
        if (gate.control == gate.target) {
            throw std::invalid_argument("gate qubit indices must be distinct");
        }
    }
}

}  // namespace

Gate Gate::hadamard(int target) { return Gate{GateKind::hadamard, target, -1, 0.0}; }

Gate Gate::single_qubit_phase(double phi, int target) {
    if (phi < 0.0 || phi >= 1.0) throw std::invalid_argument("phase must lie in [0, 1) turns");
    return Gate{GateKind::phase_turn, target, -1, phi};
}

Gate Gate::phase_rot(int s, int target) {
    if (s < 1) throw std::invalid_argument("R_s requires s >= 1");
    return single_qubit_phase(std::ldexp(1.0, -s), target);
}

Gate Gate::controlled_phase(double phi, int control, int target) {
    if (phi < 0.0 || phi >= 1.0) throw std::invalid_argument("phase must lie in [0, 1) turns");
    return Gate{GateKind::controlled_phase_turn, target, control, phi};
}

Gate Gate::controlled_phase_rot(int s, int control, int target) {
    if (s < 1) throw std::invalid_argument("R_s requires s >= 1");
    return controlled_phase(std::ldexp(1.0, -s), control, target);
}

Gate Gate::swap(int a, int b) { return Gate{GateKind::swap_qubits, b, a, 0.0}; }

Gate Gate::inverse() const {
    switch (kind) {
        case GateKind::hadamard:
        case GateKind::swap_qubits:
            return *this;
        case GateKind::phase_turn:
        case GateKind::controlled_phase_turn: {
            Gate g = *this;
            g.phi = phi == 0.0 ? 0.0 : 1.0 - phi;
            return g;
        }
    }
    throw std::logic_error("unknown gate kind");
}

Circuit Circuit::inverse() const {
    Circuit inv{num_qubits, {}};
    inv.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        inv.gates.push_back(it->inverse());
    }
    return inv;
}

Circuit Circuit::then(const Circuit& next) const {
    if (num_qubits != next.num_qubits) {
        throw std::invalid_argument("cannot compose circuits on different qubit counts");
    }
    Circuit out = *this;
    out.gates.insert(out.gates.end(), next.gates.begin(), next.gates.end());
    return out;
}

void Circuit::append_x(int qubit) {
    gates.push_back(Gate::hadamard(qubit));
    gates.push_back(Gate::single_qubit_phase(0.5, qubit));
    gates.push_back(Gate::hadamard(qubit));
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits, kMaxQubits);
    amplitudes_.assign(1ull << num_qubits, cdouble{0.0, 0.0});
    amplitudes_[0] = cdouble{1.0, 0.0};
}

StateVector::StateVector(int num_qubits, std::vector<cdouble> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(num_qubits, kMaxQubits);
    if (amplitudes_.size() != (1ull << num_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^n");
    }
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector state(num_qubits);
    if (index >= state.dim()) throw std::out_of_range("basis index out of range");
    state.amplitudes_[0] = cdouble{0.0, 0.0};
    state.amplitudes_[index] = cdouble{1.0, 0.0};
    return state;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const cdouble& a : amplitudes_) s += std::norm(a);
    return s;
}

void apply_gate_in_place(StateVector& state, const Gate& gate) {
    const int n = state.num_qubits();
    check_gate_indices(gate, n);
    cdouble* amps = state.amplitudes_.data();
    const std::uint64_t dim = state.dim();
    const int target_bit = n - 1 - gate.target;  // qubit 0 is the most significant bit
    switch (gate.kind) {
        case GateKind::hadamard:
            kernels::hadamard(amps, dim, target_bit);
            break;
        case GateKind::phase_turn:
            kernels::phase_turn(amps, dim, target_bit, gate.phi);
            break;
        case GateKind::controlled_phase_turn:
            kernels::controlled_phase_turn(amps, dim, n - 1 - gate.control, target_bit, gate.phi);
            break;
        case GateKind::swap_qubits:
            kernels::swap_bits(amps, dim, n - 1 - gate.control, target_bit);
            break;
    }
}

void apply_circuit_in_place(StateVector& state, const Circuit& circuit) {
    if (circuit.num_qubits != state.num_qubits()) {
        throw std::invalid_argument("circuit and state qubit counts differ");
    }
    for (const Gate& gate : circuit.gates) apply_gate_in_place(state, gate);
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    apply_gate_in_place(state, gate);
    return state;
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
    apply_circuit_in_place(state, circuit);
    return state;
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("states have different qubit counts");
    }
    cdouble acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amp(i)) * b.amp(i);
    return acc;
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

namespace {

// Shared builder: emits the textbook circuit, keeping only rotations R_s with
// s <= max_s. max_s >= n reproduces the exact QFT.
Circuit qft_builder(int n, double max_s) {
    Circuit circuit{n, {}};
    for (int t = 0; t < n; ++t) {
        circuit.gates.push_back(Gate::hadamard(t));
        for (int c = t + 1; c < n; ++c) {
            const int s = c - t + 1;
            if (static_cast<double>(s) > max_s) continue;
            circuit.gates.push_back(Gate::controlled_phase_rot(s, c, t));
        }
    }
    for (int t = 0; t < n / 2; ++t) {
        circuit.gates.push_back(Gate::swap(t, n - 1 - t));
    }
    return circuit;
}

}  // namespace

Circuit qft_circuit(int n) {
    check_qubit_count(n, kMaxQubits);
    return qft_builder(n, static_cast<double>(n));
}

Circuit approx_qft_circuit(int n, double cutoff_c) {
    check_qubit_count(n, kMaxQubits);
    if (n < 2) throw std::out_of_range("approximate QFT requires n >= 2");
    if (!(cutoff_c > 0.0)) throw std::invalid_argument("cutoff_c must be positive");
    return qft_builder(n, cutoff_c * std::log2(static_cast<double>(n)));
}

StateVector prepare_fourier_basis_state(int n, std::uint64_t k, int phase_bits) {
    check_qubit_count(n, kMaxQubits);
    StateVector state(n);
    if (k >= state.dim()) throw std::out_of_range("Fourier basis index k out of range");
    for (int m = 0; m < n; ++m) {
        // qubit m carries e^{2 pi i k / 2^(m+1)} on |1>
        double phi = frac_turn(std::ldexp(static_cast<double>(k), -(m + 1)));
        if (phase_bits > 0 && phase_bits < 64) {
            phi = std::floor(std::ldexp(phi, phase_bits)) * std::ldexp(1.0, -phase_bits);
        }
        apply_gate_in_place(state, Gate::hadamard(m));
        if (phi != 0.0) apply_gate_in_place(state, Gate::single_qubit_phase(phi, m));
    }
    return state;
}

StateVector prepare_phase_state(int n, double phase) {
    check_qubit_count(n, kMaxQubits);
    if (phase < 0.0 || phase >= 1.0) throw std::invalid_argument("phase must lie in [0, 1)");
    const std::uint64_t dim = 1ull << n;
    std::vector<cdouble> amps(dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t j = 0; j < dim; ++j) {
        amps[j] = scale * unit_phase(frac_turn(static_cast<double>(j) * phase));
    }
    return StateVector(n, std::move(amps));
}

std::uint64_t measure_computational(const StateVector& state, RandomStream& rng) {
    const double norm = state.norm_sq();
    if (std::abs(norm - 1.0) > 1e-6) {
        throw std::invalid_argument("cannot measure an unnormalized state");
    }
    const double u = rng.next_double() * norm;
    double cumulative = 0.0;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        cumulative += std::norm(state.amp(i));
        if (u < cumulative) return i;
    }
    return dim - 1;
}

}  // namespace qftv
