#include "qftv/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qftv {

bool AdversarialFourierCorruptor::is_bad(std::uint64_t k) const {
    return remap_of(k).has_value();
}

std::optional<std::uint64_t> AdversarialFourierCorruptor::remap_of(std::uint64_t k) const {
    auto it = std::lower_bound(remap.begin(), remap.end(), k,
                               [](const auto& entry, std::uint64_t key) { return entry.first < key; });
    if (it != remap.end() && it->first == k) return it->second;
    return std::nullopt;
}

namespace {

int circuit_qubits_checked(const Circuit& circuit) {
    if (circuit.num_qubits < 1 || circuit.num_qubits > kMaxQubits) {
        throw std::invalid_argument("channel circuit has invalid qubit count");
    }
    return circuit.num_qubits;
}

}  // namespace

Channel::Channel(Variant variant, int num_qubits)
    : variant_(std::move(variant)), num_qubits_(num_qubits) {}

Channel Channel::exact_unitary(Circuit circuit) {
    const int n = circuit_qubits_checked(circuit);
    return Channel(ExactUnitary{std::move(circuit)}, n);
}

Channel Channel::stochastic_mixture(std::vector<MixtureBranch> branches) {
    if (branches.empty()) throw std::invalid_argument("stochastic mixture needs >= 1 branch");
    const int n = circuit_qubits_checked(branches.front().circuit);
    double total = 0.0;
    for (const MixtureBranch& branch : branches) {
        if (branch.probability < 0.0) {
            throw std::invalid_argument("mixture probabilities must be nonnegative");
        }
        if (circuit_qubits_checked(branch.circuit) != n) {
            throw std::invalid_argument("mixture branches act on different qubit counts");
        }
        total += branch.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture probabilities must sum to 1");
    }
    return Channel(StochasticMixture{std::move(branches)}, n);
}

Channel Channel::adversarial(int num_qubits,
                             std::vector<std::pair<std::uint64_t, std::uint64_t>> remap) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("invalid qubit count");
    }
    const std::uint64_t dim = 1ull << num_qubits;
    std::sort(remap.begin(), remap.end());
    std::vector<std::uint64_t> targets;
    targets.reserve(remap.size());
    for (std::size_t i = 0; i < remap.size(); ++i) {
        const auto [k, target] = remap[i];
        if (k >= dim || target >= dim) throw std::invalid_argument("remap entry out of range");
        if (k == target) throw std::invalid_argument("remap must be fixed-point-free");
        if (i > 0 && remap[i - 1].first == k) throw std::invalid_argument("duplicate bad k");
        targets.push_back(target);
    }
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
        throw std::invalid_argument("remap must be injective");
    }
    return Channel(AdversarialFourierCorruptor{num_qubits, std::move(remap)}, num_qubits);
}

Channel Channel::per_gate_noise(Circuit circuit_template, double over_rotation_stddev,
                                double drop_probability) {
    const int n = circuit_qubits_checked(circuit_template);
    if (over_rotation_stddev < 0.0) throw std::invalid_argument("stddev must be nonnegative");
    if (drop_probability < 0.0 || drop_probability > 1.0) {
        throw std::invalid_argument("drop probability must lie in [0, 1]");
    }
    return Channel(PerGateNoise{std::move(circuit_template), over_rotation_stddev,
                                drop_probability},
                   n);
}

Circuit sample_noisy_circuit(const PerGateNoise& noise, RandomStream& rng) {
    Circuit realized{noise.circuit_template.num_qubits, {}};
    realized.gates.reserve(noise.circuit_template.gates.size());
    for (const Gate& gate : noise.circuit_template.gates) {
        const bool phase_gate =
            gate.kind == GateKind::phase_turn || gate.kind == GateKind::controlled_phase_turn;
        if (!phase_gate) {
            realized.gates.push_back(gate);
            continue;
        }
        if (rng.next_double() < noise.drop_probability) continue;
        Gate g = gate;
        g.phi = frac_turn(g.phi + noise.over_rotation_stddev * rng.next_normal());
        realized.gates.push_back(g);
    }
    return realized;
}

namespace {

void check_dimension(const Channel& channel, const StateVector& state) {
    if (channel.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("channel and state qubit counts differ");
    }
}

// Fourier coefficients b_k = <k^|psi>, obtained by applying the exact
// inverse-QFT circuit.
StateVector fourier_decompose(const StateVector& state) {
    return apply_circuit(state, qft_circuit(state.num_qubits()).inverse());
}

StateVector adversarial_shot(const AdversarialFourierCorruptor& adversary,
                             const StateVector& state, RandomStream& rng) {
    const StateVector coeffs = fourier_decompose(state);
    const std::uint64_t dim = coeffs.dim();

    double good_weight = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) good_weight += std::norm(coeffs.amp(k));
    std::vector<double> bad_weights(adversary.remap.size());
    for (std::size_t i = 0; i < adversary.remap.size(); ++i) {
        bad_weights[i] = std::norm(coeffs.amp(adversary.remap[i].first));
        good_weight -= bad_weights[i];
    }
    good_weight = std::max(good_weight, 0.0);

    double total = good_weight;
    for (double w : bad_weights) total += w;
    double u = rng.next_double() * total;

    std::size_t last_bad = adversary.remap.size();
    for (std::size_t i = 0; i < adversary.remap.size(); ++i) {
        if (bad_weights[i] == 0.0) continue;
        last_bad = i;
        if (u < bad_weights[i]) {
            return StateVector::basis(adversary.num_qubits, adversary.remap[i].second);
        }
        u -= bad_weights[i];
    }
    if (good_weight < 1e-30 && last_bad < adversary.remap.size()) {
        // rounding fallback when the input has no good component
        return StateVector::basis(adversary.num_qubits, adversary.remap[last_bad].second);
    }

    // good branch: F^-1 of the non-bad Fourier components, renormalized
    std::vector<cdouble> amps(coeffs.amplitudes().begin(), coeffs.amplitudes().end());
    for (const auto& [bad_k, target] : adversary.remap) amps[bad_k] = cdouble{0.0, 0.0};
    const double scale = 1.0 / std::sqrt(good_weight);
    for (cdouble& a : amps) a *= scale;
    return StateVector(adversary.num_qubits, std::move(amps));
}

}  // namespace

StateVector apply_channel_shot(const Channel& channel, const StateVector& state,
                               RandomStream& rng) {
    check_dimension(channel, state);
    return std::visit(
        [&](const auto& variant) -> StateVector {
            using T = std::decay_t<decltype(variant)>;
            if constexpr (std::is_same_v<T, ExactUnitary>) {
                return apply_circuit(state, variant.circuit);
            } else if constexpr (std::is_same_v<T, StochasticMixture>) {
                double u = rng.next_double();
                for (const MixtureBranch& branch : variant.branches) {
                    if (u < branch.probability) return apply_circuit(state, branch.circuit);
                    u -= branch.probability;
                }
                return apply_circuit(state, variant.branches.back().circuit);
            } else if constexpr (std::is_same_v<T, AdversarialFourierCorruptor>) {
                return adversarial_shot(variant, state, rng);
            } else {
                return apply_circuit(state, sample_noisy_circuit(variant, rng));
            }
        },
        channel.variant());
}

std::vector<double> output_distribution(const Channel& channel, const StateVector& state) {
    check_dimension(channel, state);
    const std::uint64_t dim = state.dim();
    return std::visit(
        [&](const auto& variant) -> std::vector<double> {
            using T = std::decay_t<decltype(variant)>;
            if constexpr (std::is_same_v<T, ExactUnitary>) {
                const StateVector out = apply_circuit(state, variant.circuit);
                std::vector<double> dist(dim);
                for (std::uint64_t j = 0; j < dim; ++j) dist[j] = std::norm(out.amp(j));
                return dist;
            } else if constexpr (std::is_same_v<T, StochasticMixture>) {
                std::vector<double> dist(dim, 0.0);
                for (const MixtureBranch& branch : variant.branches) {
                    const StateVector out = apply_circuit(state, branch.circuit);
                    for (std::uint64_t j = 0; j < dim; ++j) {
                        dist[j] += branch.probability * std::norm(out.amp(j));
                    }
                }
                return dist;
            } else if constexpr (std::is_same_v<T, AdversarialFourierCorruptor>) {
                const StateVector coeffs = fourier_decompose(state);
                std::vector<double> dist(dim);
                for (std::uint64_t j = 0; j < dim; ++j) dist[j] = std::norm(coeffs.amp(j));
                // reroute the bad Fourier masses in one step: zero them all
                // first so a remap target that is itself a bad key keeps the
                // mass it receives
                std::vector<double> rerouted(variant.remap.size());
                for (std::size_t i = 0; i < variant.remap.size(); ++i) {
                    rerouted[i] = dist[variant.remap[i].first];
                    dist[variant.remap[i].first] = 0.0;
                }
                for (std::size_t i = 0; i < variant.remap.size(); ++i) {
                    dist[variant.remap[i].second] += rerouted[i];
                }
                return dist;
            } else {
                throw std::invalid_argument(
                    "PerGateNoise has no exact output distribution; sample shots instead");
            }
        },
        channel.variant());
}

namespace {

double unitary_eta_for_basis_state(const Circuit& circuit, int n, std::uint64_t k) {
    const StateVector out = apply_circuit(prepare_fourier_basis_state(n, k), circuit);
    return std::clamp(1.0 - std::norm(out.amp(k)), 0.0, 1.0);
}

}  // namespace

PerBasisInfidelity exact_per_basis_infidelity(const Channel& channel, std::uint64_t shot_budget,
                                              std::uint64_t seed) {
    const int n = channel.num_qubits();
    if (n > kMaxExhaustiveQubits) {
        throw std::out_of_range("exhaustive infidelity limited to n <= " +
                                std::to_string(kMaxExhaustiveQubits));
    }
    const std::uint64_t dim = 1ull << n;
    PerBasisInfidelity result{n, std::vector<double>(dim, 0.0), 0.0, 0};

    std::visit(
        [&](const auto& variant) {
            using T = std::decay_t<decltype(variant)>;
            if constexpr (std::is_same_v<T, ExactUnitary>) {
#pragma omp parallel for schedule(dynamic)
                for (std::int64_t k = 0; k < static_cast<std::int64_t>(dim); ++k) {
                    result.eta_k[k] = unitary_eta_for_basis_state(variant.circuit, n, k);
                }
            } else if constexpr (std::is_same_v<T, StochasticMixture>) {
#pragma omp parallel for schedule(dynamic)
                for (std::int64_t k = 0; k < static_cast<std::int64_t>(dim); ++k) {
                    double eta = 0.0;
                    for (const MixtureBranch& branch : variant.branches) {
                        eta += branch.probability *
                               unitary_eta_for_basis_state(branch.circuit, n, k);
                    }
                    result.eta_k[k] = eta;
                }
            } else if constexpr (std::is_same_v<T, AdversarialFourierCorruptor>) {
                for (const auto& [bad_k, target] : variant.remap) result.eta_k[bad_k] = 1.0;
            } else {
                if (shot_budget == 0) {
                    throw std::invalid_argument(
                        "PerGateNoise requires a shot budget for infidelity estimation");
                }
                result.shots_per_state = shot_budget;
#pragma omp parallel for schedule(dynamic)
                for (std::int64_t k = 0; k < static_cast<std::int64_t>(dim); ++k) {
                    const StateVector input = prepare_fourier_basis_state(n, k);
                    double eta = 0.0;
                    for (std::uint64_t shot = 0; shot < shot_budget; ++shot) {
                        RandomStream rng =
                            RandomStream::derive(seed, static_cast<std::uint64_t>(k) * shot_budget + shot);
                        const StateVector out =
                            apply_circuit(input, sample_noisy_circuit(variant, rng));
                        eta += std::clamp(1.0 - std::norm(out.amp(k)), 0.0, 1.0);
                    }
                    result.eta_k[k] = eta / static_cast<double>(shot_budget);
                }
            }
        },
        channel.variant());

    double sum = 0.0;
    for (double eta : result.eta_k) sum += eta;
    result.eta_avg = sum / static_cast<double>(dim);
    return result;
}

}  // namespace qftv
