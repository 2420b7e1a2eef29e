#pragma once

#include <string>

#include "satham/circuit.hpp"
#include "satham/hamiltonian.hpp"
#include "satham/qpf.hpp"
#include "satham/reductions.hpp"
#include "satham/spectrum.hpp"

#include <json.hpp>

namespace satham {

using json = nlohmann::ordered_json;

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json hamiltonian_to_json(const LocalHamiltonian& h);
LocalHamiltonian hamiltonian_from_json(const json& j);

json spectrum_report_to_json(const SpectrumReport& rep);
json provenance_to_json(const Provenance& p);
json thresholds_to_json(const Thresholds& t);
json lh_instance_to_json(const LhInstance& inst, bool include_hamiltonian);
json qpf_estimate_to_json(const QpfEstimate& est, bool include_grids);
json verifier_layout_to_json(const VerifierLayout& lay);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace satham
