#include "satham/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace satham {

json circuit_to_json(const Circuit& c) {
    json j;
    j["width"] = c.width;
    j["proof_size"] = c.proof_size;
    j["ancilla_size"] = c.ancilla_size;
    j["out_index"] = c.out_index;
    json gates = json::array();
    for (const Gate& g : c.gates) {
        json gj;
        gj["kind"] = gate_kind_name(g.kind);
        gj["qubits"] = g.qubits;
        gates.push_back(std::move(gj));
    }
    j["gates"] = std::move(gates);
    return j;
}

Circuit circuit_from_json(const json& j) {
    Circuit c;
    c.width = j.at("width").get<int>();
    c.proof_size = j.at("proof_size").get<int>();
    c.ancilla_size = j.at("ancilla_size").get<int>();
    c.out_index = j.at("out_index").get<int>();
    for (const auto& gj : j.at("gates")) {
        Gate g;
        g.kind = gate_kind_from_name(gj.at("kind").get<std::string>());
        g.qubits = gj.at("qubits").get<std::vector<int>>();
        c.gates.push_back(std::move(g));
    }
    c.validate();
    return c;
}

json hamiltonian_to_json(const LocalHamiltonian& h) {
    json j;
    j["width"] = h.width();
    j["locality"] = h.locality();
    json terms = json::array();
    for (const LocalTerm& t : h.terms()) {
        json tj;
        tj["support"] = t.support;
        tj["coefficient"] = t.coefficient;
        json rows = json::array();
        for (const cplx& v : t.block.a) rows.push_back(json::array({v.real(), v.imag()}));
        tj["matrix"] = std::move(rows);
        terms.push_back(std::move(tj));
    }
    j["terms"] = std::move(terms);
    return j;
}

LocalHamiltonian hamiltonian_from_json(const json& j) {
    const int width = j.at("width").get<int>();
    LocalHamiltonian h(width, {});
    for (const auto& tj : j.at("terms")) {
        LocalTerm t;
        t.support = tj.at("support").get<std::vector<int>>();
        t.coefficient = tj.at("coefficient").get<double>();
        const auto& m = tj.at("matrix");
        const int dim = 1 << t.support.size();
        if (static_cast<int>(m.size()) != dim * dim)
            throw std::invalid_argument("hamiltonian_from_json: matrix size mismatch");
        t.block = CMat(dim);
        for (int i = 0; i < dim * dim; ++i)
            t.block.a[static_cast<size_t>(i)] =
                cplx(m[i][0].get<double>(), m[i][1].get<double>());
        h.add_term(std::move(t));
    }
    return h;
}

json spectrum_report_to_json(const SpectrumReport& rep) {
    json j;
    j["lambda"] = rep.lambda;
    j["method"] = rep.method;
    j["residual"] = rep.residual;
    j["iterations"] = rep.iterations;
    if (rep.eigenvalues) j["eigenvalues"] = *rep.eigenvalues;
    return j;
}

json provenance_to_json(const Provenance& p) {
    json j;
    j["source"] = p.source;
    j["n"] = p.n;
    j["m"] = p.m;
    j["k"] = p.k;
    j["epsilon"] = p.epsilon;
    j["d"] = p.d;
    j["a"] = p.a;
    j["T"] = p.T;
    j["circuit_width"] = p.circuit_width;
    j["ancilla_width"] = p.ancilla_width;
    j["clock_width"] = p.clock_width;
    j["total_width"] = p.total_width;
    j["elementary_gates"] = p.elementary_gates;
    return j;
}

json thresholds_to_json(const Thresholds& t) {
    json j;
    j["e_yes"] = t.e_yes;
    j["e_no"] = t.e_no;
    return j;
}

json lh_instance_to_json(const LhInstance& inst, bool include_hamiltonian) {
    json j;
    j["thresholds"] = thresholds_to_json(inst.thresholds);
    j["provenance"] = provenance_to_json(inst.provenance);
    j["width"] = inst.hamiltonian.width();
    j["locality"] = inst.hamiltonian.locality();
    j["term_count"] = inst.hamiltonian.term_count();
    j["norm_bound"] = inst.hamiltonian.norm_bound();
    if (include_hamiltonian) j["hamiltonian"] = hamiltonian_to_json(inst.hamiltonian);
    return j;
}

json qpf_estimate_to_json(const QpfEstimate& est, bool include_grids) {
    json j;
    j["z_tilde"] = est.z_tilde;
    j["backend"] = est.backend;
    j["n"] = est.n;
    j["beta"] = est.beta;
    j["beta_eff"] = est.beta_eff;
    j["shift"] = est.shift;
    j["L"] = est.L;
    j["delta_c"] = est.delta_c;
    j["c"] = est.c_exponent;
    j["repetitions"] = est.repetitions;
    j["seed"] = est.seed;
    if (include_grids) {
        j["z_k"] = est.z_k;
        j["counts"] = est.counts;
    }
    return j;
}

json verifier_layout_to_json(const VerifierLayout& lay) {
    json j;
    j["n"] = lay.n;
    j["m"] = lay.m;
    j["r"] = lay.r;
    j["k_max"] = lay.k_max;
    j["cls"] = lay.cls;
    j["cnt_offset"] = lay.cnt_offset;
    j["out"] = lay.out;
    j["work_offset"] = lay.work_offset;
    j["pool_size"] = lay.pool_size;
    j["ancilla_total"] = lay.ancilla_total;
    j["ancilla_bound"] = lay.ancilla_bound;
    j["ancilla_bound_ok"] = lay.ancilla_bound_ok;
    j["macro_gate_count"] = lay.macro_gate_count;
    j["toffoli_count"] = lay.toffoli_count;
    j["elementary_count"] = lay.elementary_count;
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace satham
