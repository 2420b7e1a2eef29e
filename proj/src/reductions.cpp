#include "satham/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satham {

LhInstance sat_to_klh_trivial(const CnfFormula& f) {
    if (f.num_vars < 1) throw std::invalid_argument("sat_to_klh_trivial: empty formula");
    const KcnfReport rep = validate_kcnf(f, std::max(1, f.max_clause_width()));
    if (!rep.valid) throw std::invalid_argument("sat_to_klh_trivial: invalid formula");

    LocalHamiltonian ham(f.num_vars, {});
    for (const Clause& clause : f.clauses) {
        // the unique falsifying sub-assignment sets every literal false; the
        // clause term is the projector onto it, so a basis state pays one unit
        // of energy per clause it falsifies
        std::vector<std::pair<int, int>> bits;  // (qubit, falsifying bit)
        for (const Literal& l : clause) bits.push_back({l.variable - 1, l.negated ? 1 : 0});
        std::sort(bits.begin(), bits.end());
        const int k = static_cast<int>(bits.size());
        int falsify = 0;
        LocalTerm t;
        for (int j = 0; j < k; ++j) {
            t.support.push_back(bits[static_cast<size_t>(j)].first);
            falsify = (falsify << 1) | bits[static_cast<size_t>(j)].second;
        }
        t.block = CMat(1 << k);
        t.block.at(falsify, falsify) = 1.0;
        t.coefficient = 1.0;
        ham.add_term(std::move(t));
    }

    LhInstance inst;
    inst.hamiltonian = std::move(ham);
    const double n = static_cast<double>(f.num_vars);
    inst.thresholds = Thresholds{1.0 / n, 1.0 - 1.0 / n};
    if (f.num_vars <= 2) inst.thresholds = Thresholds{0.25, 0.75};  // keep e_no > e_yes
    inst.provenance.source = "trivial";
    inst.provenance.n = f.num_vars;
    inst.provenance.m = f.num_clauses();
    inst.provenance.k = f.max_clause_width();
    inst.provenance.total_width = f.num_vars;
    return inst;
}

LhInstance sat_to_3lh(const CnfFormula& f, double epsilon, int d) {
    return sat_to_3lh(f, epsilon, d,
                      [](int64_t T) { return CoefficientSet::defaults_for(T); });
}

LhInstance sat_to_3lh(const CnfFormula& f, double epsilon, int d,
                      const std::function<CoefficientSet(int64_t)>& coeffs_for) {
    if (!(epsilon > 0.0 && epsilon < 0.25))
        throw std::invalid_argument("sat_to_3lh: epsilon must lie in (0, 1/4)");
    if (d < 1) throw std::invalid_argument("sat_to_3lh: d must be >= 1");

    const VerifierCircuit ver = build_sat_verifier(f);
    std::vector<int> pool;
    for (int i = 0; i < ver.layout.pool_size; ++i) pool.push_back(ver.layout.work_offset + i);
    const Circuit lowered = lower_to_elementary(ver.circuit, pool);
    const CanonicalCircuit canon = canonicalize_for_construction(lowered, d);
    const CoefficientSet coeffs = coeffs_for(canon.T);
    LocalHamiltonian ham = circuit_to_hamiltonian(canon, coeffs);

    LhInstance inst;
    inst.thresholds = Thresholds{epsilon, 0.5 - epsilon};
    inst.provenance.source = "verifier";
    inst.provenance.n = f.num_vars;
    inst.provenance.m = f.num_clauses();
    inst.provenance.k = f.max_clause_width();
    inst.provenance.epsilon = epsilon;
    inst.provenance.d = d;
    inst.provenance.a = canon.a;
    inst.provenance.T = canon.T;
    inst.provenance.circuit_width = lowered.width;
    inst.provenance.ancilla_width = lowered.ancilla_size;
    inst.provenance.clock_width = d == 1 ? static_cast<int>(canon.T) : 2 * canon.a;
    inst.provenance.total_width = ham.width();
    inst.provenance.elementary_gates = lowered.gate_count();
    inst.hamiltonian = std::move(ham);
    return inst;
}

QpfInstance lh_to_qpf(const LhInstance& instance) {
    instance.thresholds.validate();
    const int n = instance.hamiltonian.width();
    const double gap = instance.thresholds.e_no - instance.thresholds.e_yes;
    const double beta = static_cast<double>(n) / gap;
    const double e3 = std::exp(-0.3 * static_cast<double>(n));
    // boundary value of (1-delta)/(1+delta) = e^{-0.3 n}; stepping delta a
    // hair inside makes the separation strict instead of exactly tight
    double delta = (1.0 - e3) / (1.0 + e3);
    delta *= 1.0 - 1e-9;

    QpfInstance q;
    q.hamiltonian = instance.hamiltonian;
    q.beta = beta;
    q.delta = delta;
    q.n = n;
    q.thresholds = instance.thresholds;
    q.z_yes = (1.0 - delta) * std::exp(-beta * instance.thresholds.e_yes);
    q.z_no = (1.0 + delta) * std::exp(-beta * instance.thresholds.e_no + 0.7 * n);
    if (!(q.z_yes > q.z_no))
        throw std::runtime_error("lh_to_qpf: thresholds do not separate");
    return q;
}

LhAnswer decide_lh_via_qpf(const QpfInstance& instance, const QpfSolver& solver) {
    const double z = solver(instance.hamiltonian, instance.beta, instance.delta);
    if (z >= instance.z_yes) return LhAnswer::Yes;
    if (z <= instance.z_no) return LhAnswer::No;
    return LhAnswer::Indeterminate;
}

}  // namespace satham
