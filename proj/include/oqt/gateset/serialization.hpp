#pragma once

#include <json.hpp>

#include "oqt/gateset/operational_rep.hpp"

namespace oqt {

// JSON forms carry a schema version and tag numeric payloads with the basis
// ("pauli-normalized") so files are self-describing. Round trips are exact:
// doubles are serialized losslessly.

nlohmann::json gate_set_to_json(const GateSet& gs);
GateSet gate_set_from_json(const nlohmann::json& j);

nlohmann::json rep_template_to_json(const RepTemplate& t);
RepTemplate rep_template_from_json(const nlohmann::json& j);

nlohmann::json operational_rep_to_json(const OperationalRep& rep);
OperationalRep operational_rep_from_json(const nlohmann::json& j);

}  // namespace oqt
