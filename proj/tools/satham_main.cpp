// Command-line front end: one subcommand per pipeline stage, JSON reports on
// stdout, human-readable notes on stderr. Exit codes: 0 success, 1 domain
// rejection or indeterminate outcome, 2 I/O or guard errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "satham/canonical.hpp"
#include "satham/circuit.hpp"
#include "satham/clock.hpp"
#include "satham/cnf.hpp"
#include "satham/hamiltonian.hpp"
#include "satham/json_io.hpp"
#include "satham/qpf.hpp"
#include "satham/reductions.hpp"
#include "satham/spectrum.hpp"

using namespace satham;

namespace {

struct GlobalOptions {
    std::string out_path;
    std::string config_path;
    uint64_t seed = 1;
};

void emit(const GlobalOptions& g, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (g.out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(g.out_path, text);
    }
}

// key = value lines; '#' comments. Recognized keys: alpha_in, alpha_out,
// alpha_a, alpha_b, alpha_clock, dense_guard (informational).
std::map<std::string, double> load_config(const std::string& path) {
    std::map<std::string, double> kv;
    if (path.empty()) return kv;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [](std::string& s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        };
        strip(key);
        strip(val);
        if (!key.empty()) kv[key] = std::stod(val);
    }
    return kv;
}

CoefficientSet coefficients_for(int64_t T, const std::map<std::string, double>& cfg) {
    CoefficientSet c = CoefficientSet::defaults_for(T);
    auto pick = [&](const char* key, double& slot) {
        auto it = cfg.find(key);
        if (it != cfg.end()) slot = it->second;
    };
    pick("alpha_in", c.alpha_in);
    pick("alpha_out", c.alpha_out);
    pick("alpha_a", c.alpha_a);
    pick("alpha_b", c.alpha_b);
    pick("alpha_clock", c.alpha_clock);
    return c;
}

LocalHamiltonian load_hamiltonian(const std::string& path) {
    return hamiltonian_from_json(json::parse(read_text_file(path)));
}

int run_cnf_validate(const GlobalOptions& g, const std::string& path, int k) {
    const CnfFormula f = parse_dimacs(read_text_file(path));
    const KcnfReport rep = validate_kcnf(f, k);
    json j;
    j["command"] = "cnf-validate";
    j["n"] = f.num_vars;
    j["m"] = f.num_clauses();
    j["k"] = k;
    j["k_max"] = rep.k_max;
    j["valid"] = rep.valid;
    json off = json::array();
    for (const auto& [idx, what] : rep.offenders)
        off.push_back(json{{"clause", idx}, {"reason", what}});
    j["offenders"] = std::move(off);
    emit(g, j);
    return rep.valid ? 0 : 1;
}

int run_cnf_solve(const GlobalOptions& g, const std::string& path) {
    const CnfFormula f = parse_dimacs(read_text_file(path));
    const auto model = brute_force_sat(f);
    json j;
    j["command"] = "cnf-solve";
    j["n"] = f.num_vars;
    j["m"] = f.num_clauses();
    j["satisfiable"] = model.has_value();
    if (model) j["model"] = assignment_to_string(*model, f.num_vars);
    emit(g, j);
    return 0;
}

int run_verifier(const GlobalOptions& g, const std::string& path, bool check,
                 const std::string& emit_circuit) {
    const CnfFormula f = parse_dimacs(read_text_file(path));
    const VerifierCircuit ver = build_sat_verifier(f);
    json j;
    j["command"] = "verifier-build";
    j["layout"] = verifier_layout_to_json(ver.layout);
    j["gate_bound"] = verifier_gate_bound(f.num_vars, f.num_clauses(), f.max_clause_width());
    if (check && f.num_vars <= 16) {
        bool all_ok = true;
        for (uint64_t x = 0; x < (1ull << f.num_vars); ++x) {
            const uint64_t bits = classical_track(ver.circuit, x << ver.circuit.ancilla_size);
            const bool got = bit_of(bits, ver.layout.out, ver.circuit.width) == 1;
            if (got != evaluate(f, x)) { all_ok = false; break; }
        }
        j["exhaustive_check"] = all_ok;
        if (!all_ok) {
            emit(g, j);
            return 1;
        }
    }
    if (!emit_circuit.empty())
        write_text_file(emit_circuit, circuit_to_json(ver.circuit).dump(2) + "\n");
    emit(g, j);
    return 0;
}

int run_clock_table(const GlobalOptions& g, const std::string& variant, int a, int d, int64_t T) {
    ClockSchedule sched = [&] {
        if (variant == "unary") return ClockSchedule::unary(T);
        if (variant == "johnson") return ClockSchedule::johnson(a, d);
        if (variant == "dual") return ClockSchedule::dual(a, d);
        throw std::invalid_argument("unknown clock variant '" + variant + "'");
    }();
    std::ostringstream csv;
    csv << "t,t1,t2,state\n";
    for (int64_t t = 0; t <= sched.T(); ++t) {
        if (sched.variant() == ClockVariant::Dual) {
            const auto [t1, t2] = g_map(t, a);
            csv << t << "," << t1 << "," << t2 << "," << sched.legal_state_string(t) << "\n";
        } else {
            csv << t << ",," << "," << sched.legal_state_string(t) << "\n";
        }
    }
    if (g.out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(g.out_path, csv.str());
    return 0;
}

int run_clock_verify(const GlobalOptions& g, const std::string& variant, int a, int d, int64_t T) {
    ClockSchedule sched = [&] {
        if (variant == "unary") return ClockSchedule::unary(T);
        if (variant == "johnson") return ClockSchedule::johnson(a, d);
        if (variant == "dual") return ClockSchedule::dual(a, d);
        throw std::invalid_argument("unknown clock variant '" + variant + "'");
    }();
    const ConditionReport rep = sched.verify_conditions();
    json j;
    j["command"] = "clock-verify";
    j["variant"] = variant;
    j["T"] = sched.T();
    j["width"] = sched.width();
    j["ok"] = rep.ok;
    j["checks"] = rep.checks;
    j["excluded_slots"] = rep.excluded.size();
    json v = json::array();
    for (const auto& viol : rep.violations)
        v.push_back(json{{"role", clock_role_name(viol.role)},
                         {"t", viol.t},
                         {"state", viol.state},
                         {"what", viol.what}});
    j["violations"] = std::move(v);
    emit(g, j);
    return rep.ok ? 0 : 1;
}

int run_ham_build(const GlobalOptions& g, const std::string& circuit_path, int d,
                  const std::string& emit_ham) {
    const Circuit circ = circuit_from_json(json::parse(read_text_file(circuit_path)));
    const CanonicalCircuit canon = canonicalize_for_construction(circ, d);
    const auto cfg = load_config(g.config_path);
    const LocalHamiltonian ham = circuit_to_hamiltonian(canon, coefficients_for(canon.T, cfg));
    json j;
    j["command"] = "ham-build";
    j["d"] = d;
    j["T"] = canon.T;
    j["a"] = canon.a;
    j["dummy_slots"] = canon.dummy_slots;
    j["two_qubit_steps"] = canon.two_qubit_steps;
    j["width"] = ham.width();
    j["locality"] = ham.locality();
    j["terms"] = ham.term_count();
    j["norm_bound"] = ham.norm_bound();
    if (!emit_ham.empty()) write_text_file(emit_ham, hamiltonian_to_json(ham).dump() + "\n");
    emit(g, j);
    return 0;
}

int run_spectrum(const GlobalOptions& g, const std::string& ham_path, const std::string& method,
                 int max_iters, double tol, bool keep_eigenvalues) {
    const LocalHamiltonian ham = load_hamiltonian(ham_path);
    SpectrumReport rep;
    if (method == "dense")
        rep = ground_energy_dense(ham, keep_eigenvalues);
    else if (method == "lanczos")
        rep = ground_energy_lanczos(ham, max_iters, tol, g.seed);
    else
        throw std::invalid_argument("unknown method '" + method + "'");
    json j = spectrum_report_to_json(rep);
    j["command"] = "spectrum";
    emit(g, j);
    return 0;
}

int run_partition(const GlobalOptions& g, const std::string& ham_path, double beta) {
    const LocalHamiltonian ham = load_hamiltonian(ham_path);
    json j;
    j["command"] = "spectrum-z";
    j["beta"] = beta;
    j["z"] = exact_partition_function(ham, beta);
    emit(g, j);
    return 0;
}

int run_reduce_trivial(const GlobalOptions& g, const std::string& path, bool emit_ham,
                       bool decide) {
    const CnfFormula f = parse_dimacs(read_text_file(path));
    const LhInstance inst = sat_to_klh_trivial(f);
    json j = lh_instance_to_json(inst, emit_ham);
    j["command"] = "reduce-trivial";
    int rc = 0;
    if (decide) {
        const LhAnswer ans = decide_lh(inst.hamiltonian, inst.thresholds);
        j["answer"] = lh_answer_name(ans);
        rc = ans == LhAnswer::Indeterminate ? 1 : 0;
    }
    emit(g, j);
    return rc;
}

int run_reduce_3lh(const GlobalOptions& g, const std::string& path, double epsilon, int d,
                   const std::string& emit_ham) {
    const CnfFormula f = parse_dimacs(read_text_file(path));
    const auto cfg = load_config(g.config_path);
    const LhInstance inst = sat_to_3lh(f, epsilon, d, [&](int64_t T) {
        return coefficients_for(T, cfg);
    });
    json j = lh_instance_to_json(inst, false);
    j["command"] = "reduce-3lh";
    if (!emit_ham.empty())
        write_text_file(emit_ham, hamiltonian_to_json(inst.hamiltonian).dump() + "\n");
    emit(g, j);
    return 0;
}

int run_reduce_qpf(const GlobalOptions& g, const std::string& ham_path, double e_yes, double e_no,
                   bool decide_exact) {
    LhInstance inst;
    inst.hamiltonian = load_hamiltonian(ham_path);
    inst.thresholds = Thresholds{e_yes, e_no};
    inst.provenance.source = "cli";
    inst.provenance.total_width = inst.hamiltonian.width();
    const QpfInstance q = lh_to_qpf(inst);
    json j;
    j["command"] = "reduce-qpf";
    j["n"] = q.n;
    j["beta"] = q.beta;
    j["delta"] = q.delta;
    j["z_yes"] = q.z_yes;
    j["z_no"] = q.z_no;
    int rc = 0;
    if (decide_exact) {
        const LhAnswer ans = decide_lh_via_qpf(
            q, [](const LocalHamiltonian& h, double beta, double) {
                return exact_partition_function(h, beta);
            });
        j["answer"] = lh_answer_name(ans);
        rc = ans == LhAnswer::Indeterminate ? 1 : 0;
    }
    emit(g, j);
    return rc;
}

int run_qpf(const GlobalOptions& g, const std::string& ham_path, double beta, int c,
            const std::string& backend_name, bool compare_exact, bool grids,
            double confidence) {
    const LocalHamiltonian ham = load_hamiltonian(ham_path);
    const QpfBackend backend = qpf_backend_from_name(backend_name);
    const QpfEstimate est = approximate_qpf(ham, beta, c, backend, g.seed, 1.0 - confidence);
    json j = qpf_estimate_to_json(est, grids);
    j["command"] = "qpf-run";
    if (compare_exact && ham.width() <= kDenseGuardQubits) {
        const double z = exact_partition_function(ham, beta);
        j["z_exact"] = z;
        j["relative_error"] = z != 0.0 ? est.z_tilde / z - 1.0 : 0.0;
    }
    emit(g, j);
    return 0;
}

int run_pipeline(const GlobalOptions& g, const std::string& path, int d, double epsilon,
                 const std::string& emit_ham) {
    const CnfFormula f = parse_dimacs(read_text_file(path));
    const auto cfg = load_config(g.config_path);
    const VerifierCircuit ver = build_sat_verifier(f);
    const LhInstance inst = sat_to_3lh(f, epsilon, d, [&](int64_t T) {
        return coefficients_for(T, cfg);
    });
    json j = lh_instance_to_json(inst, false);
    j["command"] = "pipeline-sat-to-lh";
    j["verifier"] = verifier_layout_to_json(ver.layout);
    j["gate_bound"] = verifier_gate_bound(f.num_vars, f.num_clauses(), f.max_clause_width());
    j["gate_bound_ok"] =
        static_cast<double>(ver.layout.elementary_count) <=
        verifier_gate_bound(f.num_vars, f.num_clauses(), f.max_clause_width());
    if (!emit_ham.empty())
        write_text_file(emit_ham, hamiltonian_to_json(inst.hamiltonian).dump() + "\n");
    emit(g, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"size-preserving circuit-to-Hamiltonian toolkit"};
    app.require_subcommand(1);

    GlobalOptions g;
    if (const char* env = std::getenv("SATHAM_SEED")) g.seed = std::strtoull(env, nullptr, 10);
    app.add_option("--out", g.out_path, "write the report to a file instead of stdout");
    app.add_option("--config", g.config_path, "key=value file overriding coefficients");
    app.add_option("--seed", g.seed, "seed for randomized stages");

    // cnf
    auto* cnf = app.add_subcommand("cnf", "parse and check DIMACS formulas");
    std::string cnf_path;
    int cnf_k = 3;
    auto* cnf_validate = cnf->add_subcommand("validate", "check width-k clause hygiene");
    cnf_validate->add_option("path", cnf_path)->required();
    cnf_validate->add_option("--k", cnf_k, "clause width bound");
    auto* cnf_solve = cnf->add_subcommand("solve", "exhaustive satisfiability check");
    cnf_solve->add_option("path", cnf_path)->required();

    // verifier
    auto* verifier = app.add_subcommand("verifier", "clause-counting verification circuit");
    std::string ver_path, ver_emit;
    bool ver_check = false;
    auto* ver_build = verifier->add_subcommand("build", "build and report the circuit");
    ver_build->add_option("path", ver_path)->required();
    ver_build->add_flag("--check-exhaustive", ver_check, "simulate all basis inputs (n <= 16)");
    ver_build->add_option("--emit-circuit", ver_emit, "write the circuit JSON here");

    // clock
    auto* clock = app.add_subcommand("clock", "clock schedules and their checks");
    std::string clock_variant = "dual";
    int clock_a = 3, clock_d = 2;
    int64_t clock_T = 4;
    auto* clock_table = clock->add_subcommand("table", "CSV dump of the legal states");
    clock_table->add_option("--variant", clock_variant)->check(CLI::IsMember({"unary", "johnson", "dual"}));
    clock_table->add_option("--a", clock_a);
    clock_table->add_option("--d", clock_d);
    clock_table->add_option("--T", clock_T);
    auto* clock_verify = clock->add_subcommand("verify", "check the operator conditions");
    clock_verify->add_option("--variant", clock_variant)->check(CLI::IsMember({"unary", "johnson", "dual"}));
    clock_verify->add_option("--a", clock_a);
    clock_verify->add_option("--d", clock_d);
    clock_verify->add_option("--T", clock_T);

    // ham
    auto* ham = app.add_subcommand("ham", "circuit-to-Hamiltonian assembly");
    std::string ham_circuit, ham_emit;
    int ham_d = 2;
    auto* ham_build = ham->add_subcommand("build", "canonicalize and assemble");
    ham_build->add_option("--circuit", ham_circuit)->required();
    ham_build->add_option("--d", ham_d);
    ham_build->add_option("--emit-ham", ham_emit);

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "ground energy and partition function");
    std::string spec_ham, spec_method = "dense";
    int spec_iters = 300;
    double spec_tol = 1e-9, spec_beta = 1.0;
    bool spec_eigs = false;
    auto* spec_ground = spectrum->add_subcommand("ground", "smallest eigenvalue");
    spec_ground->add_option("--ham", spec_ham)->required();
    spec_ground->add_option("--method", spec_method)->check(CLI::IsMember({"dense", "lanczos"}));
    spec_ground->add_option("--max-iters", spec_iters);
    spec_ground->add_option("--tol", spec_tol);
    spec_ground->add_flag("--eigenvalues", spec_eigs, "include the full spectrum");
    auto* spec_z = spectrum->add_subcommand("z", "exact partition function");
    spec_z->add_option("--ham", spec_ham)->required();
    spec_z->add_option("--beta", spec_beta);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "the three reductions");
    std::string red_path, red_ham, red_emit;
    double red_eps = 0.125, red_eyes = 0.0, red_eno = 1.0;
    int red_d = 2;
    bool red_emit_flag = false, red_decide = false, red_decide_exact = false;
    auto* red_trivial = reduce->add_subcommand("trivial", "clause projectors");
    red_trivial->add_option("path", red_path)->required();
    red_trivial->add_flag("--emit-ham", red_emit_flag, "inline the Hamiltonian JSON");
    red_trivial->add_flag("--decide", red_decide, "diagonalize and answer");
    auto* red_3lh = reduce->add_subcommand("sat3lh", "verifier construction");
    red_3lh->add_option("path", red_path)->required();
    red_3lh->add_option("--epsilon", red_eps);
    red_3lh->add_option("--d", red_d);
    red_3lh->add_option("--emit-ham", red_emit);
    auto* red_qpf = reduce->add_subcommand("lhqpf", "decision thresholds for the trace estimate");
    red_qpf->add_option("--ham", red_ham)->required();
    red_qpf->add_option("--e-yes", red_eyes)->required();
    red_qpf->add_option("--e-no", red_eno)->required();
    red_qpf->add_flag("--decide-exact", red_decide_exact, "answer with the exact trace");

    // qpf
    auto* qpf = app.add_subcommand("qpf", "shifted-grid partition-function estimate");
    std::string qpf_ham, qpf_backend = "oracle";
    double qpf_beta = 1.0;
    int qpf_c = 1;
    bool qpf_compare = false, qpf_grids = false;
    double qpf_confidence = 0.99;
    auto* qpf_run = qpf->add_subcommand("run", "run the estimator");
    qpf_run->add_option("--ham", qpf_ham)->required();
    qpf_run->add_option("--beta", qpf_beta);
    qpf_run->add_option("--c", qpf_c);
    qpf_run->add_option("--backend", qpf_backend)->check(CLI::IsMember({"exact", "oracle", "statevector"}));
    qpf_run->add_option("--confidence", qpf_confidence, "target success probability in (0,1)");
    qpf_run->add_flag("--compare-exact", qpf_compare);
    qpf_run->add_flag("--grids", qpf_grids, "include the per-grid breakdown");

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "end-to-end stages");
    std::string pipe_path, pipe_emit;
    double pipe_eps = 0.125;
    int pipe_d = 2;
    auto* pipe_sat = pipeline->add_subcommand("sat-to-lh", "formula to local Hamiltonian");
    pipe_sat->add_option("path", pipe_path)->required();
    pipe_sat->add_option("--d", pipe_d);
    pipe_sat->add_option("--epsilon", pipe_eps);
    pipe_sat->add_option("--emit-ham", pipe_emit);

    // let global options appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* leaf : sub->get_subcommands({})) leaf->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (cnf_validate->parsed()) return run_cnf_validate(g, cnf_path, cnf_k);
        if (cnf_solve->parsed()) return run_cnf_solve(g, cnf_path);
        if (ver_build->parsed()) return run_verifier(g, ver_path, ver_check, ver_emit);
        if (clock_table->parsed())
            return run_clock_table(g, clock_variant, clock_a, clock_d, clock_T);
        if (clock_verify->parsed())
            return run_clock_verify(g, clock_variant, clock_a, clock_d, clock_T);
        if (ham_build->parsed()) return run_ham_build(g, ham_circuit, ham_d, ham_emit);
        if (spec_ground->parsed())
            return run_spectrum(g, spec_ham, spec_method, spec_iters, spec_tol, spec_eigs);
        if (spec_z->parsed()) return run_partition(g, spec_ham, spec_beta);
        if (red_trivial->parsed()) return run_reduce_trivial(g, red_path, red_emit_flag, red_decide);
        if (red_3lh->parsed()) return run_reduce_3lh(g, red_path, red_eps, red_d, red_emit);
        if (red_qpf->parsed()) return run_reduce_qpf(g, red_ham, red_eyes, red_eno, red_decide_exact);
        if (qpf_run->parsed())
            return run_qpf(g, qpf_ham, qpf_beta, qpf_c, qpf_backend, qpf_compare, qpf_grids,
                           qpf_confidence);
        if (pipe_sat->parsed()) return run_pipeline(g, pipe_path, pipe_d, pipe_eps, pipe_emit);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand action selected\n";
    return 2;
}
