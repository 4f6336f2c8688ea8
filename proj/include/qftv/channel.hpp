#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qftv/rng.hpp"
#include "qftv/statevector.hpp"

namespace qftv {

// cap for exhaustive per-basis-state evaluation (2^n circuit applications)
inline constexpr int kMaxExhaustiveQubits = 14;

// A fixed unitary, e.g. a perfect or approximate inverse QFT, possibly
// composed with a fixed corruption.
struct ExactUnitary {
    Circuit circuit;
};

struct MixtureBranch {
    double probability = 0.0;
    Circuit circuit;
};

// Convex mixture of unitaries, sampled independently per shot.
struct StochasticMixture {
    std::vector<MixtureBranch> branches;
};

// Acts as a perfect inverse QFT on Fourier basis states |k^> with k outside
// bad_set, and maps |k^> for bad k to the computational basis state
// |remap(k)>. On superpositions the good subspace and each bad component form
// separate branches, sampled by squared norm; interference between branches
// is destroyed.
struct AdversarialFourierCorruptor {
    int num_qubits = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> remap;  // sorted by bad k

    bool is_bad(std::uint64_t k) const;
    std::optional<std::uint64_t> remap_of(std::uint64_t k) const;
};

// Per shot, every phase rotation in the template is dropped independently
// with drop_probability and otherwise over-rotated by a Gaussian phase error
// (stddev in turns). Hadamards and swaps are untouched.
struct PerGateNoise {
    Circuit circuit_template;
    double over_rotation_stddev = 0.0;
    double drop_probability = 0.0;
};

// A purported inverse-QFT implementation, realized as a stochastic mixture of
// pure-state maps. Immutable and shareable across threads.
class Channel {
public:
    using Variant =
        std::variant<ExactUnitary, StochasticMixture, AdversarialFourierCorruptor, PerGateNoise>;

    static Channel exact_unitary(Circuit circuit);
    static Channel stochastic_mixture(std::vector<MixtureBranch> branches);
    static Channel adversarial(int num_qubits,
                               std::vector<std::pair<std::uint64_t, std::uint64_t>> remap);
    static Channel per_gate_noise(Circuit circuit_template, double over_rotation_stddev,
                                  double drop_probability);

    int num_qubits() const { return num_qubits_; }
    const Variant& variant() const { return variant_; }

private:
    Channel(Variant variant, int num_qubits);

    Variant variant_;
    int num_qubits_;
};

// One sampled pure-state realization of the channel.
StateVector apply_channel_shot(const Channel& channel, const StateVector& state,
                               RandomStream& rng);

// Exact computational-basis outcome distribution of the channel on `state`.
// Not available for PerGateNoise (use sampling).
std::vector<double> output_distribution(const Channel& channel, const StateVector& state);

struct PerBasisInfidelity {
    int num_qubits = 0;
    std::vector<double> eta_k;
    double eta_avg = 0.0;
    std::uint64_t shots_per_state = 0;  // 0 means analytically exact
};

// eta_k = 1 - <k| C(|k^>) |k> for every k, evaluated analytically for all
// variants except PerGateNoise, which requires a per-state shot budget and
// yields a Monte-Carlo estimate (shots_per_state records it).
PerBasisInfidelity exact_per_basis_infidelity(const Channel& channel,
                                              std::uint64_t shot_budget = 0,
                                              std::uint64_t seed = 0);

// One noise realization of a PerGateNoise template.
Circuit sample_noisy_circuit(const PerGateNoise& noise, RandomStream& rng);

}  // namespace qftv
