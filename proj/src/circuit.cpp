#include "satham/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace satham {

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::Identity: return "I";
        case GateKind::Hadamard: return "H";
        case GateKind::PiOver8: return "T";
        case GateKind::PiOver8Inv: return "Tdg";
        case GateKind::PauliZ: return "Z";
        case GateKind::Not: return "X";
        case GateKind::ControlledNot: return "CX";
        case GateKind::ControlledZ: return "CZ";
        case GateKind::Toffoli: return "CCX";
        case GateKind::MultiControlledNot: return "MCX";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "I") return GateKind::Identity;
    if (name == "H") return GateKind::Hadamard;
    if (name == "T") return GateKind::PiOver8;
    if (name == "Tdg") return GateKind::PiOver8Inv;
    if (name == "Z") return GateKind::PauliZ;
    if (name == "X") return GateKind::Not;
    if (name == "CX") return GateKind::ControlledNot;
    if (name == "CZ") return GateKind::ControlledZ;
    if (name == "CCX") return GateKind::Toffoli;
    if (name == "MCX") return GateKind::MultiControlledNot;
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

bool is_macro(GateKind k) {
    return k == GateKind::Toffoli || k == GateKind::MultiControlledNot;
}

bool is_permutation_gate(GateKind k) {
    switch (k) {
        case GateKind::Identity:
        case GateKind::Not:
        case GateKind::ControlledNot:
        case GateKind::Toffoli:
        case GateKind::MultiControlledNot:
            return true;
        default:
            return false;
    }
}

int gate_arity(GateKind k, int declared) {
    switch (k) {
        case GateKind::Identity:
        case GateKind::Hadamard:
        case GateKind::PiOver8:
        case GateKind::PiOver8Inv:
        case GateKind::PauliZ:
        case GateKind::Not:
            return 1;
        case GateKind::ControlledNot:
        case GateKind::ControlledZ:
            return 2;
        case GateKind::Toffoli:
            return 3;
        case GateKind::MultiControlledNot:
            return declared;  // k controls + target, k >= 2
    }
    return declared;
}

CMat gate_matrix(const Gate& g) {
    using std::numbers::pi;
    const cplx t_phase = std::exp(cplx(0.0, pi / 4.0));
    switch (g.kind) {
        case GateKind::Identity:
            return CMat::identity(2);
        case GateKind::Hadamard: {
            CMat m(2);
            const double s = 1.0 / std::sqrt(2.0);
            m.at(0, 0) = s; m.at(0, 1) = s;
            m.at(1, 0) = s; m.at(1, 1) = -s;
            return m;
        }
        case GateKind::PiOver8: {
            CMat m = CMat::identity(2);
            m.at(1, 1) = t_phase;
            return m;
        }
        case GateKind::PiOver8Inv: {
            CMat m = CMat::identity(2);
            m.at(1, 1) = std::conj(t_phase);
            return m;
        }
        case GateKind::PauliZ: {
            CMat m = CMat::identity(2);
            m.at(1, 1) = -1.0;
            return m;
        }
        case GateKind::Not: {
            CMat m(2);
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            return m;
        }
        case GateKind::ControlledZ: {
            CMat m = CMat::identity(4);
            m.at(3, 3) = -1.0;
            return m;
        }
        case GateKind::ControlledNot:
        case GateKind::Toffoli:
        case GateKind::MultiControlledNot: {
            const int k = g.arity() - 1;
            const int d = 1 << (k + 1);
            CMat m = CMat::identity(d);
            // controls are the high block bits; swap the last two rows
            m.at(d - 2, d - 2) = 0.0;
            m.at(d - 1, d - 1) = 0.0;
            m.at(d - 2, d - 1) = 1.0;
            m.at(d - 1, d - 2) = 1.0;
            return m;
        }
    }
    throw std::logic_error("unreachable gate kind");
}

void Circuit::validate() const {
    if (width != proof_size + ancilla_size)
        throw std::invalid_argument("circuit width != proof_size + ancilla_size");
    if (out_index < 0 || out_index >= width)
        throw std::invalid_argument("out_index out of range");
    for (const Gate& g : gates) {
        const int expect = gate_arity(g.kind, g.arity());
        if (g.arity() != expect || (g.kind == GateKind::MultiControlledNot && g.arity() < 3))
            throw std::invalid_argument("bad qubit count for gate " +
                                        std::string(gate_kind_name(g.kind)));
        std::unordered_set<int> seen;
        for (int q : g.qubits) {
            if (q < 0 || q >= width) throw std::invalid_argument("gate qubit out of range");
            if (!seen.insert(q).second)
                throw std::invalid_argument("repeated qubit in gate");
        }
    }
}

StateVector simulate(const Circuit& c, const StateVector& input) {
    c.validate();
    if (input.num_qubits != c.proof_size)
        throw std::invalid_argument("simulate: input width must equal proof_size");
    StateVector s(c.width);
    // proof register occupies the most significant bits, ancillas are |0...0>
    const int shift = c.ancilla_size;
    for (uint64_t i = 0; i < input.amp.size(); ++i) s.amp[i << shift] = input.amp[i];
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::Identity) continue;
        apply_local(s, g.qubits, gate_matrix(g));
    }
    return s;
}

double accept_probability(const Circuit& c, const StateVector& input) {
    const StateVector s = simulate(c, input);
    double p = 0.0;
    for (uint64_t i = 0; i < s.amp.size(); ++i)
        if (bit_of(i, c.out_index, c.width)) p += std::norm(s.amp[i]);
    return p;
}

bool is_permutation_circuit(const Circuit& c) {
    return std::all_of(c.gates.begin(), c.gates.end(),
                       [](const Gate& g) { return is_permutation_gate(g.kind); });
}

uint64_t classical_track(const Circuit& c, uint64_t input_bits) {
    uint64_t s = input_bits;
    auto bit = [&](int q) { return (s >> (c.width - 1 - q)) & 1ull; };
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::Identity:
                break;
            case GateKind::Not:
                s ^= 1ull << (c.width - 1 - g.qubits[0]);
                break;
            case GateKind::ControlledNot:
            case GateKind::Toffoli:
            case GateKind::MultiControlledNot: {
                bool all = true;
                for (int i = 0; i + 1 < g.arity(); ++i)
                    if (!bit(g.qubits[i])) { all = false; break; }
                if (all) s ^= 1ull << (c.width - 1 - g.target());
                break;
            }
            default:
                throw std::invalid_argument("classical_track: non-permutation gate " +
                                            std::string(gate_kind_name(g.kind)));
        }
    }
    return s;
}

McxDecomposition decompose_mcx(const std::vector<int>& controls, int target,
                               const std::vector<int>& work) {
    const int k = static_cast<int>(controls.size());
    if (k < 2) throw std::invalid_argument("decompose_mcx needs at least 2 controls");
    McxDecomposition out;
    if (k == 2) {
        out.gates.push_back(Gate{GateKind::Toffoli, {controls[0], controls[1], target}});
        return out;
    }
    if (static_cast<int>(work.size()) < k - 2)
        throw std::invalid_argument("decompose_mcx: need " + std::to_string(k - 2) +
                                    " work qubits");
    out.work_qubits_used = k - 2;
    // compute chain: work[i] accumulates the AND of the first i+2 controls
    std::vector<Gate> chain;
    chain.push_back(Gate{GateKind::Toffoli, {controls[0], controls[1], work[0]}});
    for (int i = 2; i < k - 1; ++i)
        chain.push_back(Gate{GateKind::Toffoli, {controls[i], work[i - 2], work[i - 1]}});
    out.gates = chain;
    out.gates.push_back(Gate{GateKind::Toffoli, {controls[k - 1], work[k - 3], target}});
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.gates.push_back(*it);
    return out;
}

std::vector<Gate> decompose_toffoli(int c1, int c2, int t) {
    auto g = [](GateKind k, std::vector<int> q) { return Gate{k, std::move(q)}; };
    return {
        g(GateKind::Hadamard, {t}),
        g(GateKind::ControlledNot, {c2, t}),
        g(GateKind::PiOver8Inv, {t}),
        g(GateKind::ControlledNot, {c1, t}),
        g(GateKind::PiOver8, {t}),
        g(GateKind::ControlledNot, {c2, t}),
        g(GateKind::PiOver8Inv, {t}),
        g(GateKind::ControlledNot, {c1, t}),
        g(GateKind::PiOver8, {c2}),
        g(GateKind::PiOver8, {t}),
        g(GateKind::Hadamard, {t}),
        g(GateKind::ControlledNot, {c1, c2}),
        g(GateKind::PiOver8, {c1}),
        g(GateKind::PiOver8Inv, {c2}),
        g(GateKind::ControlledNot, {c1, c2}),
    };
}

Circuit lower_to_elementary(const Circuit& c, const std::vector<int>& work_pool) {
    c.validate();
    int max_k = 0;
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::MultiControlledNot)
            max_k = std::max(max_k, g.arity() - 1);
    const int need = std::max(0, max_k - 2);

    Circuit out = c;
    std::vector<int> pool = work_pool;
    if (static_cast<int>(pool.size()) < need) {
        for (int i = static_cast<int>(pool.size()); i < need; ++i) {
            pool.push_back(out.width);
            out.width += 1;
            out.ancilla_size += 1;
        }
    }

    std::vector<Gate> toffoli_stage;
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::MultiControlledNot) {
            std::vector<int> controls(g.qubits.begin(), g.qubits.end() - 1);
            const auto dec = decompose_mcx(controls, g.target(), pool);
            toffoli_stage.insert(toffoli_stage.end(), dec.gates.begin(), dec.gates.end());
        } else {
            toffoli_stage.push_back(g);
        }
    }

    std::vector<Gate> elem;
    for (const Gate& g : toffoli_stage) {
        if (g.kind == GateKind::Toffoli) {
            const auto dec = decompose_toffoli(g.qubits[0], g.qubits[1], g.qubits[2]);
            elem.insert(elem.end(), dec.begin(), dec.end());
        } else {
            elem.push_back(g);
        }
    }
    out.gates = std::move(elem);
    return out;
}

std::vector<Gate> build_addone(int cnt_offset, int r, int control) {
    if (r < 1) throw std::invalid_argument("build_addone: r must be >= 1");
    std::vector<Gate> gates;
    // layer q (1-based) flips counter bit q when all lower-order bits are 1
    for (int q = 1; q <= r - 1; ++q) {
        std::vector<int> qs;
        if (control >= 0) qs.push_back(control);
        for (int j = q + 1; j <= r; ++j) qs.push_back(cnt_offset + j - 1);
        qs.push_back(cnt_offset + q - 1);
        const int k = static_cast<int>(qs.size()) - 1;
        GateKind kind = k == 1 ? GateKind::ControlledNot
                               : (k == 2 ? GateKind::Toffoli : GateKind::MultiControlledNot);
        gates.push_back(Gate{kind, std::move(qs)});
    }
    if (control >= 0)
        gates.push_back(Gate{GateKind::ControlledNot, {control, cnt_offset + r - 1}});
    else
        gates.push_back(Gate{GateKind::Not, {cnt_offset + r - 1}});
    return gates;
}

std::vector<Gate> build_compare(int cnt_offset, int r, int m, int out) {
    if (m < 0 || (r < 63 && m >= (1 << r)))
        throw std::invalid_argument("build_compare: m not representable in r bits");
    std::vector<Gate> gates;
    std::vector<Gate> mask;
    for (int j = 1; j <= r; ++j) {
        const bool bit = ((m >> (r - j)) & 1) != 0;
        if (!bit) mask.push_back(Gate{GateKind::Not, {cnt_offset + j - 1}});
    }
    gates.insert(gates.end(), mask.begin(), mask.end());
    std::vector<int> qs;
    for (int j = 0; j < r; ++j) qs.push_back(cnt_offset + j);
    qs.push_back(out);
    GateKind kind = r == 1 ? GateKind::ControlledNot
                           : (r == 2 ? GateKind::Toffoli : GateKind::MultiControlledNot);
    gates.push_back(Gate{kind, std::move(qs)});
    gates.insert(gates.end(), mask.begin(), mask.end());
    return gates;
}

namespace {

// W_i computes clause i into the cls qubit: NOT the positive-literal inputs,
// AND the (now negated) literals into cls, then NOT cls.
std::vector<Gate> build_clause_gadget(const Clause& clause, int cls) {
    std::vector<Gate> gates;
    for (const Literal& l : clause)
        if (!l.negated) gates.push_back(Gate{GateKind::Not, {l.variable - 1}});
    std::vector<int> qs;
    for (const Literal& l : clause) qs.push_back(l.variable - 1);
    std::sort(qs.begin(), qs.end());
    qs.push_back(cls);
    const int k = static_cast<int>(qs.size()) - 1;
    GateKind kind = k == 1 ? GateKind::ControlledNot
                           : (k == 2 ? GateKind::Toffoli : GateKind::MultiControlledNot);
    gates.push_back(Gate{kind, std::move(qs)});
    gates.push_back(Gate{GateKind::Not, {cls}});
    return gates;
}

int count_toffolis_after_mcx_lowering(const std::vector<Gate>& gates) {
    int n = 0;
    for (const Gate& g : gates) {
        if (g.kind == GateKind::Toffoli) n += 1;
        else if (g.kind == GateKind::MultiControlledNot) n += 2 * (g.arity() - 1) - 3;
    }
    return n;
}

}  // namespace

VerifierCircuit build_sat_verifier(const CnfFormula& f) {
    const int n = f.num_vars;
    const int m = f.num_clauses();
    if (m < 1) throw std::invalid_argument("build_sat_verifier: formula has no clauses");
    const KcnfReport rep = validate_kcnf(f, std::max(1, f.max_clause_width()));
    if (!rep.valid) throw std::invalid_argument("build_sat_verifier: invalid formula");

    // counter must hold counts 0..m, so width covers m+1 values
    int r = 1;
    while ((1 << r) < m + 1) ++r;

    VerifierLayout lay;
    lay.n = n;
    lay.m = m;
    lay.r = r;
    lay.k_max = f.max_clause_width();
    lay.cls = n;
    lay.cnt_offset = n + 1;
    lay.out = n + 1 + r;
    lay.work_offset = n + 2 + r;
    // widest multi-controlled NOT: clause gadgets use k_max controls, the
    // first increment layer and the compare each use r controls
    lay.pool_size = std::max(0, std::max(lay.k_max, r) - 2);

    Circuit c;
    c.proof_size = n;
    c.ancilla_size = 2 + r + lay.pool_size;
    c.width = c.proof_size + c.ancilla_size;
    c.out_index = lay.out;

    std::vector<Gate>& gates = c.gates;
    for (const Clause& clause : f.clauses) {
        const auto w = build_clause_gadget(clause, lay.cls);
        gates.insert(gates.end(), w.begin(), w.end());
        const auto inc = build_addone(lay.cnt_offset, r, lay.cls);
        gates.insert(gates.end(), inc.begin(), inc.end());
        gates.insert(gates.end(), w.rbegin(), w.rend());  // all gates are involutions
    }
    const auto cmp = build_compare(lay.cnt_offset, r, m, lay.out);
    gates.insert(gates.end(), cmp.begin(), cmp.end());

    // the controlled increment's first layer controls on cls + counter bits
    int max_controls = 0;
    for (const Gate& g : gates)
        if (g.kind == GateKind::MultiControlledNot || g.kind == GateKind::Toffoli ||
            g.kind == GateKind::ControlledNot)
            max_controls = std::max(max_controls, g.arity() - 1);
    lay.pool_size = std::max(0, max_controls - 2);
    c.ancilla_size = 2 + r + lay.pool_size;
    c.width = c.proof_size + c.ancilla_size;
    c.validate();

    lay.ancilla_total = 2 + r + lay.pool_size;
    lay.ancilla_bound = 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(m)))) + 2;
    lay.ancilla_bound_ok = lay.ancilla_total <= lay.ancilla_bound;
    lay.macro_gate_count = c.gate_count();
    lay.toffoli_count = count_toffolis_after_mcx_lowering(gates);

    std::vector<int> pool;
    for (int i = 0; i < lay.pool_size; ++i) pool.push_back(lay.work_offset + i);
    lay.elementary_count = lower_to_elementary(c, pool).gate_count();

    return VerifierCircuit{std::move(c), lay};
}

double verifier_gate_bound(int n, int m, int k) {
    const double logn = std::log2(static_cast<double>(std::max(2, n)));
    const double c = std::max(1.0, std::log2(static_cast<double>(std::max(2, m))) / logn);
    const double nc = std::pow(static_cast<double>(n), c);
    return 34.0 * c * c * nc * logn * logn + (70.0 * k + 2.0) * nc + 35.0 * c * logn;
}

}  // namespace satham
