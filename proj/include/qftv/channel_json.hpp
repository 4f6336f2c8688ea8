#pragma once

#include <json.hpp>

#include "qftv/channel.hpp"

namespace qftv {

// Channel documents: {"type": ..., "n": ..., <variant parameters>} with
//   exact_unitary:                 "circuit"
//   stochastic_mixture:            "branches" = [{"probability", "circuit"}, ...]
//   adversarial_fourier_corruptor: "remap" = sorted [[bad_k, target], ...]
//   per_gate_noise:                "template", "over_rotation_stddev", "drop_probability"
//
// A circuit is one of
//   {"name": "qft" | "inverse_qft" | "approx_qft" | "approx_inverse_qft"
//            [, "cutoff": c]} ,
//   {"gates": [{"gate": "h"|"phase"|"phase_rot"|"cphase"|"cphase_rot"|"swap"|"x",
//               ...}, ...]} ,
//   or an array of circuits applied in order.
Channel channel_from_json(const nlohmann::json& doc);
nlohmann::json channel_to_json(const Channel& channel);

Circuit circuit_from_json(const nlohmann::json& doc, int num_qubits);
nlohmann::json circuit_to_json(const Circuit& circuit);

}  // namespace qftv
