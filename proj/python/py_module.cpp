#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "satham/canonical.hpp"
#include "satham/circuit.hpp"
#include "satham/clock.hpp"
#include "satham/cnf.hpp"
#include "satham/hamiltonian.hpp"
#include "satham/json_io.hpp"
#include "satham/qpf.hpp"
#include "satham/reductions.hpp"
#include "satham/spectrum.hpp"

namespace py = pybind11;
using namespace satham;

namespace {

LocalHamiltonian ham_from_json_str(const std::string& text) {
    return hamiltonian_from_json(json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_satham, m) {
    m.doc() = "size-preserving circuit-to-Hamiltonian constructions and the "
              "shifted-grid partition-function estimator";

    // --- formulas ---
    m.def("parse_dimacs_summary", [](const std::string& text) {
        const CnfFormula f = parse_dimacs(text);
        py::dict d;
        d["n"] = f.num_vars;
        d["m"] = f.num_clauses();
        d["k_max"] = f.max_clause_width();
        return d;
    }, py::arg("text"), "parse DIMACS text and report (n, m, k_max)");

    m.def("brute_force_sat", [](const std::string& text) -> std::optional<std::string> {
        const CnfFormula f = parse_dimacs(text);
        const auto model = brute_force_sat(f);
        if (!model) return std::nullopt;
        return assignment_to_string(*model, f.num_vars);
    }, py::arg("text"), "exhaustive satisfiability check; returns the smallest model or None");

    m.def("evaluate", [](const std::string& text, const std::string& assignment) {
        const CnfFormula f = parse_dimacs(text);
        std::vector<bool> bits;
        for (char ch : assignment) bits.push_back(ch == '1');
        return evaluate(f, bits);
    }, py::arg("text"), py::arg("assignment"));

    // --- verifier circuit ---
    m.def("build_sat_verifier", [](const std::string& text) {
        const CnfFormula f = parse_dimacs(text);
        const VerifierCircuit ver = build_sat_verifier(f);
        py::dict d;
        d["circuit_json"] = circuit_to_json(ver.circuit).dump();
        d["layout_json"] = verifier_layout_to_json(ver.layout).dump();
        d["ancilla_total"] = ver.layout.ancilla_total;
        d["ancilla_bound_ok"] = ver.layout.ancilla_bound_ok;
        d["elementary_count"] = ver.layout.elementary_count;
        return d;
    }, py::arg("text"));

    m.def("verifier_output_bit", [](const std::string& text, const std::string& assignment) {
        const CnfFormula f = parse_dimacs(text);
        const VerifierCircuit ver = build_sat_verifier(f);
        uint64_t x = 0;
        for (char ch : assignment) x = (x << 1) | (ch == '1' ? 1u : 0u);
        const uint64_t bits = classical_track(ver.circuit, x << ver.circuit.ancilla_size);
        return bit_of(bits, ver.layout.out, ver.circuit.width) == 1;
    }, py::arg("text"), py::arg("assignment"));

    // --- clocks ---
    m.def("clock_table", [](const std::string& variant, int a, int d, int64_t T) {
        ClockSchedule sched = variant == "unary" ? ClockSchedule::unary(T)
                            : variant == "johnson" ? ClockSchedule::johnson(a, d)
                                                   : ClockSchedule::dual(a, d);
        std::vector<std::string> rows;
        for (int64_t t = 0; t <= sched.T(); ++t) rows.push_back(sched.legal_state_string(t));
        return rows;
    }, py::arg("variant"), py::arg("a") = 3, py::arg("d") = 2, py::arg("T") = 4);

    m.def("clock_conditions_ok", [](const std::string& variant, int a, int d, int64_t T) {
        ClockSchedule sched = variant == "unary" ? ClockSchedule::unary(T)
                            : variant == "johnson" ? ClockSchedule::johnson(a, d)
                                                   : ClockSchedule::dual(a, d);
        return sched.verify_conditions().ok;
    }, py::arg("variant"), py::arg("a") = 3, py::arg("d") = 2, py::arg("T") = 4);

    // --- constructions and spectra ---
    m.def("circuit_to_hamiltonian", [](const std::string& circuit_json, int d) {
        const Circuit c = circuit_from_json(json::parse(circuit_json));
        const CanonicalCircuit canon = canonicalize_for_construction(c, d);
        const LocalHamiltonian h =
            circuit_to_hamiltonian(canon, CoefficientSet::defaults_for(canon.T));
        return hamiltonian_to_json(h).dump();
    }, py::arg("circuit_json"), py::arg("d") = 2);

    m.def("sat_to_klh_trivial", [](const std::string& text) {
        const CnfFormula f = parse_dimacs(text);
        const LhInstance inst = sat_to_klh_trivial(f);
        py::dict d;
        d["hamiltonian_json"] = hamiltonian_to_json(inst.hamiltonian).dump();
        d["e_yes"] = inst.thresholds.e_yes;
        d["e_no"] = inst.thresholds.e_no;
        return d;
    }, py::arg("text"));

    m.def("sat_to_3lh_summary", [](const std::string& text, double epsilon, int d) {
        const CnfFormula f = parse_dimacs(text);
        const LhInstance inst = sat_to_3lh(f, epsilon, d);
        return lh_instance_to_json(inst, false).dump();
    }, py::arg("text"), py::arg("epsilon") = 0.125, py::arg("d") = 2);

    m.def("ground_energy", [](const std::string& ham_json, const std::string& method,
                              uint64_t seed) {
        const LocalHamiltonian h = ham_from_json_str(ham_json);
        const SpectrumReport rep = method == "dense"
                                       ? ground_energy_dense(h, false)
                                       : ground_energy_lanczos(h, 300, 1e-9, seed);
        py::dict d;
        d["lambda"] = rep.lambda;
        d["method"] = rep.method;
        d["residual"] = rep.residual;
        d["iterations"] = rep.iterations;
        return d;
    }, py::arg("ham_json"), py::arg("method") = "dense", py::arg("seed") = 1);

    m.def("exact_partition_function", [](const std::string& ham_json, double beta) {
        return exact_partition_function(ham_from_json_str(ham_json), beta);
    }, py::arg("ham_json"), py::arg("beta"));

    m.def("approximate_qpf", [](const std::string& ham_json, double beta, int c,
                                const std::string& backend, uint64_t seed) {
        const QpfEstimate est = approximate_qpf(ham_from_json_str(ham_json), beta, c,
                                                qpf_backend_from_name(backend), seed);
        return qpf_estimate_to_json(est, false).dump();
    }, py::arg("ham_json"), py::arg("beta"), py::arg("c") = 1, py::arg("backend") = "oracle",
       py::arg("seed") = 1);
}
