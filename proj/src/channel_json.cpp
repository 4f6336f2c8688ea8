#include "qftv/channel_json.hpp"

#include <stdexcept>
#include <string>

namespace qftv {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("channel document: " + message);
}

int require_int(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
        fail(std::string("missing integer field '") + key + "'");
    }
    return doc[key].get<int>();
}

double require_double(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
        fail(std::string("missing numeric field '") + key + "'");
    }
    return doc[key].get<double>();
}

void append_gate_from_json(const json& doc, Circuit& circuit) {
    if (!doc.is_object() || !doc.contains("gate")) fail("gate entries need a 'gate' tag");
    const std::string kind = doc["gate"].get<std::string>();
    if (kind == "h") {
        circuit.gates.push_back(Gate::hadamard(require_int(doc, "target")));
    } else if (kind == "phase") {
        circuit.gates.push_back(
            Gate::single_qubit_phase(require_double(doc, "phi"), require_int(doc, "target")));
    } else if (kind == "phase_rot") {
        circuit.gates.push_back(Gate::phase_rot(require_int(doc, "s"), require_int(doc, "target")));
    } else if (kind == "cphase") {
        circuit.gates.push_back(Gate::controlled_phase(
            require_double(doc, "phi"), require_int(doc, "control"), require_int(doc, "target")));
    } else if (kind == "cphase_rot") {
        circuit.gates.push_back(Gate::controlled_phase_rot(
            require_int(doc, "s"), require_int(doc, "control"), require_int(doc, "target")));
    } else if (kind == "swap") {
        circuit.gates.push_back(Gate::swap(require_int(doc, "a"), require_int(doc, "b")));
    } else if (kind == "x") {
        circuit.append_x(require_int(doc, "target"));  // sugar: expands to H, Z, H
    } else {
        fail("unknown gate kind '" + kind + "'");
    }
}

Circuit named_circuit(const std::string& name, const json& doc, int num_qubits) {
    if (name == "identity") return Circuit{num_qubits, {}};
    if (name == "qft") return qft_circuit(num_qubits);
    if (name == "inverse_qft") return qft_circuit(num_qubits).inverse();
    if (name == "approx_qft" || name == "approx_inverse_qft") {
        const double cutoff = require_double(doc, "cutoff");
        Circuit circuit = approx_qft_circuit(num_qubits, cutoff);
        return name == "approx_qft" ? circuit : circuit.inverse();
    }
    fail("unknown circuit name '" + name + "'");
}

}  // namespace

Circuit circuit_from_json(const json& doc, int num_qubits) {
    if (doc.is_array()) {
        Circuit combined{num_qubits, {}};
        for (const json& part : doc) combined = combined.then(circuit_from_json(part, num_qubits));
        return combined;
    }
    if (!doc.is_object()) fail("circuit must be an object or an array of circuits");
    if (doc.contains("name")) return named_circuit(doc["name"].get<std::string>(), doc, num_qubits);
    if (doc.contains("gates")) {
        Circuit circuit{num_qubits, {}};
        for (const json& entry : doc["gates"]) append_gate_from_json(entry, circuit);
        return circuit;
    }
    fail("circuit needs either 'name' or 'gates'");
}

json circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::hadamard:
                gates.push_back({{"gate", "h"}, {"target", gate.target}});
                break;
            case GateKind::phase_turn:
                gates.push_back({{"gate", "phase"}, {"phi", gate.phi}, {"target", gate.target}});
                break;
            case GateKind::controlled_phase_turn:
                gates.push_back({{"gate", "cphase"},
                                 {"phi", gate.phi},
                                 {"control", gate.control},
                                 {"target", gate.target}});
                break;
            case GateKind::swap_qubits:
                gates.push_back({{"gate", "swap"}, {"a", gate.control}, {"b", gate.target}});
                break;
        }
    }
    return json{{"gates", gates}};
}

Channel channel_from_json(const json& doc) {
    if (!doc.is_object()) fail("document must be a JSON object");
    if (!doc.contains("type")) fail("missing 'type'");
    const std::string type = doc["type"].get<std::string>();
    const int n = require_int(doc, "n");

    if (type == "exact_unitary") {
        if (!doc.contains("circuit")) fail("exact_unitary needs 'circuit'");
        return Channel::exact_unitary(circuit_from_json(doc["circuit"], n));
    }
    if (type == "stochastic_mixture") {
        if (!doc.contains("branches") || !doc["branches"].is_array()) {
            fail("stochastic_mixture needs a 'branches' array");
        }
        std::vector<MixtureBranch> branches;
        for (const json& entry : doc["branches"]) {
            if (!entry.contains("circuit")) fail("each branch needs 'circuit'");
            branches.push_back(MixtureBranch{require_double(entry, "probability"),
                                             circuit_from_json(entry["circuit"], n)});
        }
        return Channel::stochastic_mixture(std::move(branches));
    }
    if (type == "adversarial_fourier_corruptor") {
        if (!doc.contains("remap") || !doc["remap"].is_array()) fail("needs a 'remap' array");
        std::vector<std::pair<std::uint64_t, std::uint64_t>> remap;
        for (const json& entry : doc["remap"]) {
            if (!entry.is_array() || entry.size() != 2) fail("remap entries are [bad_k, target]");
            remap.emplace_back(entry[0].get<std::uint64_t>(), entry[1].get<std::uint64_t>());
        }
        return Channel::adversarial(n, std::move(remap));
    }
    if (type == "per_gate_noise") {
        if (!doc.contains("template")) fail("per_gate_noise needs 'template'");
        return Channel::per_gate_noise(circuit_from_json(doc["template"], n),
                                       require_double(doc, "over_rotation_stddev"),
                                       require_double(doc, "drop_probability"));
    }
    fail("unknown channel type '" + type + "'");
}

json channel_to_json(const Channel& channel) {
    json doc;
    doc["n"] = channel.num_qubits();
    std::visit(
        [&](const auto& variant) {
            using T = std::decay_t<decltype(variant)>;
            if constexpr (std::is_same_v<T, ExactUnitary>) {
                doc["type"] = "exact_unitary";
                doc["circuit"] = circuit_to_json(variant.circuit);
            } else if constexpr (std::is_same_v<T, StochasticMixture>) {
                doc["type"] = "stochastic_mixture";
                json branches = json::array();
                for (const MixtureBranch& branch : variant.branches) {
                    branches.push_back({{"probability", branch.probability},
                                        {"circuit", circuit_to_json(branch.circuit)}});
                }
                doc["branches"] = branches;
            } else if constexpr (std::is_same_v<T, AdversarialFourierCorruptor>) {
                doc["type"] = "adversarial_fourier_corruptor";
                json remap = json::array();
                for (const auto& [bad_k, target] : variant.remap) {
                    remap.push_back({bad_k, target});
                }
                doc["remap"] = remap;
            } else {
                doc["type"] = "per_gate_noise";
                doc["template"] = circuit_to_json(variant.circuit_template);
                doc["over_rotation_stddev"] = variant.over_rotation_stddev;
                doc["drop_probability"] = variant.drop_probability;
            }
        },
        channel.variant());
    return doc;
}

}  // namespace qftv
