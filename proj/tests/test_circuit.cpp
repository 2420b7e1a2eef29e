#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satham/circuit.hpp"
#include "satham/canonical.hpp"
#include "satham/rng.hpp"

using namespace satham;

namespace {

// dense unitary of a circuit by applying it to every basis state
CMat circuit_unitary(const Circuit& c) {
    const int dim = 1 << c.width;
    CMat u(dim);
    for (int col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(c.width, static_cast<uint64_t>(col));
        for (const Gate& g : c.gates)
            if (g.kind != GateKind::Identity) apply_local(s, g.qubits, gate_matrix(g));
        for (int row = 0; row < dim; ++row) u.at(row, col) = s.amp[static_cast<size_t>(row)];
    }
    return u;
}

CMat gates_unitary(int width, const std::vector<Gate>& gates) {
    Circuit c;
    c.width = width;
    c.proof_size = width;
    c.ancilla_size = 0;
    c.out_index = 0;
    c.gates = gates;
    return circuit_unitary(c);
}

CnfFormula random_kcnf(std::mt19937_64& gen, int n, int m, int k) {
    CnfFormula f;
    f.num_vars = n;
    for (int i = 0; i < m; ++i) {
        Clause c;
        std::vector<int> vars;
        const int width = 1 + static_cast<int>(gen() % std::min(k, n));
        while (static_cast<int>(vars.size()) < width) {
            const int v = 1 + static_cast<int>(gen() % n);
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        for (int v : vars) c.push_back(Literal{v, (gen() & 1) != 0});
        f.clauses.push_back(c);
    }
    return f;
}

StateVector random_state(int n, std::mt19937_64& gen) {
    StateVector s(n);
    for (auto& a : s.amp) a = cplx(uniform_pm1(gen), uniform_pm1(gen));
    s.normalize();
    return s;
}

}  // namespace

TEST_CASE("simulate: identity, NOT, double Hadamard") {
    Circuit c;
    c.width = 2;
    c.proof_size = 1;
    c.ancilla_size = 1;
    c.out_index = 1;

    StateVector psi(1);
    psi.amp[0] = cplx(0.6, 0.0);
    psi.amp[1] = cplx(0.0, 0.8);
    const StateVector s0 = simulate(c, psi);
    CHECK(std::abs(s0.amp[0] - psi.amp[0]) < 1e-12);   // |00>
    CHECK(std::abs(s0.amp[2] - psi.amp[1]) < 1e-12);   // |10>

    c.gates = {Gate{GateKind::Not, {0}}};
    const StateVector s1 = simulate(c, StateVector::basis(1, 0));
    CHECK(std::abs(s1.amp[2] - cplx(1.0, 0.0)) < 1e-12);

    c.gates = {Gate{GateKind::Hadamard, {0}}, Gate{GateKind::Hadamard, {0}}};
    const StateVector s2 = simulate(c, StateVector::basis(1, 0));
    CHECK(std::abs(s2.amp[0] - cplx(1.0, 0.0)) < 1e-10);
}

TEST_CASE("accept probability basics") {
    Circuit c;
    c.width = 2;
    c.proof_size = 1;
    c.ancilla_size = 1;
    c.out_index = 1;
    auto gen = substream(3, 0, 0);
    const StateVector psi = random_state(1, gen);

    CHECK(accept_probability(c, psi) == doctest::Approx(0.0).epsilon(1e-12));
    c.gates = {Gate{GateKind::Not, {1}}};
    CHECK(accept_probability(c, psi) == doctest::Approx(1.0).epsilon(1e-12));
    c.gates = {Gate{GateKind::Hadamard, {1}}};
    CHECK(accept_probability(c, psi) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("unitarity is preserved on random circuits") {
    auto gen = substream(11, 0, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c;
        c.width = 4;
        c.proof_size = 2;
        c.ancilla_size = 2;
        c.out_index = 2;
        const GateKind kinds[] = {GateKind::Hadamard, GateKind::PiOver8, GateKind::PiOver8Inv,
                                  GateKind::Not, GateKind::PauliZ, GateKind::ControlledNot,
                                  GateKind::ControlledZ, GateKind::Toffoli};
        for (int i = 0; i < 20; ++i) {
            const GateKind k = kinds[gen() % 8];
            const int arity = gate_arity(k, 0);
            std::vector<int> qs;
            while (static_cast<int>(qs.size()) < arity) {
                const int q = static_cast<int>(gen() % 4);
                if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
            }
            c.gates.push_back(Gate{k, qs});
        }
        const StateVector out = simulate(c, random_state(2, gen));
        CHECK(std::abs(out.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("mcx decomposition: counts, ancilla restoration, truth table") {
    for (int k = 2; k <= 5; ++k) {
        std::vector<int> controls, work;
        for (int i = 0; i < k; ++i) controls.push_back(i);
        const int target = k;
        for (int i = 0; i < k - 2; ++i) work.push_back(k + 1 + i);
        const auto dec = decompose_mcx(controls, target, work);
        CHECK(static_cast<int>(dec.gates.size()) <= 2 * k - 3);
        CHECK(dec.work_qubits_used <= k - 2);

        const int width = k + 1 + std::max(0, k - 2);
        Circuit c;
        c.width = width;
        c.proof_size = width;
        c.ancilla_size = 0;
        c.out_index = 0;
        c.gates = dec.gates;
        // exhaustive truth-table check over control/target inputs, zeroed work
        for (uint64_t x = 0; x < (1ull << (k + 1)); ++x) {
            const uint64_t input = x << std::max(0, k - 2);
            const uint64_t got = classical_track(c, input);
            uint64_t want = input;
            const bool all = (x >> 1) == (1ull << k) - 1;
            if (all) want ^= 1ull << std::max(0, k - 2);
            CHECK(got == want);  // includes the work qubits returning to zero
        }
    }
    CHECK_THROWS(decompose_mcx({0}, 1, {}));
}

TEST_CASE("toffoli decomposition: at most 17 gates from the elementary set, exact unitary") {
    const auto dec = decompose_toffoli(0, 1, 2);
    CHECK(static_cast<int>(dec.size()) <= 17);
    for (const Gate& g : dec) {
        const bool allowed = g.kind == GateKind::Hadamard || g.kind == GateKind::PiOver8 ||
                             g.kind == GateKind::PiOver8Inv || g.kind == GateKind::ControlledNot;
        CHECK(allowed);
    }
    const CMat got = gates_unitary(3, dec);
    const CMat want = gate_matrix(Gate{GateKind::Toffoli, {0, 1, 2}});
    CHECK(got.max_abs_diff(want) < 1e-10);

    // double application is the identity
    auto twice = dec;
    twice.insert(twice.end(), dec.begin(), dec.end());
    CHECK(gates_unitary(3, twice).max_abs_diff(CMat::identity(8)) < 1e-10);
}

TEST_CASE("pi/8 gate has order eight") {
    const CMat t = gate_matrix(Gate{GateKind::PiOver8, {0}});
    CMat acc = CMat::identity(2);
    for (int i = 0; i < 7; ++i) acc = acc.mul(t);
    CHECK(acc.max_abs_diff(gate_matrix(Gate{GateKind::PiOver8Inv, {0}})) < 1e-12);
    CHECK(acc.mul(t).max_abs_diff(CMat::identity(2)) < 1e-12);
}

TEST_CASE("addone increments the counter") {
    for (int r = 1; r <= 3; ++r) {
        Circuit c;
        c.width = r;
        c.proof_size = r;
        c.ancilla_size = 0;
        c.out_index = 0;
        c.gates = build_addone(0, r);
        for (uint64_t y = 0; y + 1 < (1ull << r); ++y)
            CHECK(classical_track(c, y) == y + 1);
    }
    // controlled variant: off-control leaves the counter alone
    Circuit c;
    c.width = 4;  // cls + 3 counter bits
    c.proof_size = 4;
    c.ancilla_size = 0;
    c.out_index = 0;
    c.gates = build_addone(1, 3, 0);
    for (uint64_t y = 0; y < 8; ++y) {
        CHECK(classical_track(c, y) == y);                    // cls = 0
        if (y != 7) CHECK(classical_track(c, 0b1000u | y) == (0b1000u | (y + 1)));
    }
}

TEST_CASE("compare marks equality and preserves the counter") {
    for (const auto& [r, m] : std::vector<std::pair<int, int>>{{2, 3}, {2, 2}, {3, 5}, {1, 1}}) {
        Circuit c;
        c.width = r + 1;
        c.proof_size = r + 1;
        c.ancilla_size = 0;
        c.out_index = r;
        c.gates = build_compare(0, r, m, r);
        for (uint64_t y = 0; y < (1ull << r); ++y) {
            const uint64_t input = y << 1;
            const uint64_t got = classical_track(c, input);
            const uint64_t want = input | (y == static_cast<uint64_t>(m) ? 1u : 0u);
            CHECK(got == want);
        }
    }
    CHECK_THROWS(build_compare(0, 2, 4, 2));
}

TEST_CASE("compare places NOT gates on the zero bits of the target pattern") {
    // bin(5) over 3 bits = 101: a single masked position
    const auto gates = build_compare(0, 3, 5, 3);
    int nots = 0;
    for (const Gate& g : gates)
        if (g.kind == GateKind::Not) ++nots;
    CHECK(nots == 2);  // mask applied and undone
    CHECK(gates[0].qubits[0] == 1);
}

TEST_CASE("sat verifier computes the formula on every basis input") {
    auto gen = substream(23, 0, 0);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 4);
        const int m = 1 + static_cast<int>(gen() % 6);
        const CnfFormula f = random_kcnf(gen, n, m, 3);
        const VerifierCircuit ver = build_sat_verifier(f);
        const Circuit& c = ver.circuit;
        REQUIRE(is_permutation_circuit(c));
        for (uint64_t x = 0; x < (1ull << n); ++x) {
            const uint64_t out_bits = classical_track(c, x << c.ancilla_size);
            const int out_bit = bit_of(out_bits, ver.layout.out, c.width);
            CHECK(out_bit == (evaluate(f, x) ? 1 : 0));
            // clause scratch restored
            CHECK(bit_of(out_bits, ver.layout.cls, c.width) == 0);
            // counter holds the number of satisfied clauses
            int sat_count = 0;
            for (const Clause& cl : f.clauses) {
                CnfFormula single;
                single.num_vars = n;
                single.clauses = {cl};
                if (evaluate(single, x)) ++sat_count;
            }
            int counter = 0;
            for (int j = 0; j < ver.layout.r; ++j)
                counter = (counter << 1) | bit_of(out_bits, ver.layout.cnt_offset + j, c.width);
            CHECK(counter == sat_count);
        }
    }
}

TEST_CASE("sat verifier statevector determinism at small width") {
    auto gen = substream(29, 0, 0);
    const CnfFormula f = random_kcnf(gen, 3, 3, 3);
    const VerifierCircuit ver = build_sat_verifier(f);
    for (uint64_t x = 0; x < 8; ++x) {
        const StateVector out = simulate(ver.circuit, StateVector::basis(3, x));
        double best = 0.0;
        uint64_t arg = 0;
        for (uint64_t i = 0; i < out.amp.size(); ++i)
            if (std::norm(out.amp[i]) > best) { best = std::norm(out.amp[i]); arg = i; }
        CHECK(best >= 1.0 - 1e-9);
        CHECK(arg == classical_track(ver.circuit, x << ver.circuit.ancilla_size));
    }
}

TEST_CASE("verifier ancilla and gate-count accounting") {
    auto gen = substream(31, 0, 0);
    // published ancilla budget holds for every m >= 3 we emit
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 6);
        const int m = 3 + static_cast<int>(gen() % 10);
        const CnfFormula f = random_kcnf(gen, n, m, 3);
        const VerifierCircuit ver = build_sat_verifier(f);
        CHECK(ver.layout.ancilla_bound_ok);
        CHECK(ver.layout.elementary_count <= verifier_gate_bound(n, m, 3));
    }
    // the degenerate two-clause case overruns the budget and says so
    const CnfFormula tiny = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    const VerifierCircuit ver = build_sat_verifier(tiny);
    CHECK_FALSE(ver.layout.ancilla_bound_ok);
    CHECK(ver.layout.ancilla_total == ver.layout.ancilla_bound + 1);
}

TEST_CASE("lowering to elementary gates preserves the verifier unitary") {
    const CnfFormula f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n");
    const VerifierCircuit ver = build_sat_verifier(f);
    std::vector<int> pool;
    for (int i = 0; i < ver.layout.pool_size; ++i)
        pool.push_back(ver.layout.work_offset + i);
    const Circuit lowered = lower_to_elementary(ver.circuit, pool);
    CHECK(lowered.width == ver.circuit.width);
    for (const Gate& g : lowered.gates) CHECK_FALSE(is_macro(g.kind));
    const CMat a = circuit_unitary(ver.circuit);
    const CMat b = circuit_unitary(lowered);
    CHECK(a.max_abs_diff(b) < 1e-9);
}

TEST_CASE("canonicalization: rewrite preserves acceptance and spaces gates") {
    auto gen = substream(37, 0, 0);
    Circuit c;
    c.width = 3;
    c.proof_size = 2;
    c.ancilla_size = 1;
    c.out_index = 2;
    c.gates = {Gate{GateKind::Hadamard, {0}}, Gate{GateKind::ControlledNot, {0, 2}},
               Gate{GateKind::PiOver8, {1}}, Gate{GateKind::ControlledNot, {1, 2}},
               Gate{GateKind::Not, {1}}};

    for (int d : {1, 2, 3}) {
        const CanonicalCircuit canon = canonicalize_for_construction(c, d);
        CHECK(static_cast<int64_t>(canon.circuit.gates.size()) == canon.T);
        const StateVector psi = random_state(2, gen);
        const double before = accept_probability(c, psi);
        const double after = accept_probability(canon.circuit, psi);
        CHECK(std::abs(before - after) < 1e-10);

        // two-qubit steps leave room for the six-step window and keep stride
        int64_t prev = -1000;
        for (int64_t t : canon.two_qubit_steps) {
            CHECK(t - 3 >= 1);
            CHECK(t + 2 <= canon.T);
            CHECK(t - prev >= kTwoQubitStride);
            prev = t;
            // flanked by Z gates on the gate qubits
            const Gate& cz = canon.circuit.gates[static_cast<size_t>(t - 1)];
            CHECK(cz.kind == GateKind::ControlledZ);
            CHECK(canon.circuit.gates[static_cast<size_t>(t - 3)].kind == GateKind::PauliZ);
            CHECK(canon.circuit.gates[static_cast<size_t>(t - 2)].kind == GateKind::PauliZ);
            CHECK(canon.circuit.gates[static_cast<size_t>(t)].kind == GateKind::PauliZ);
            CHECK(canon.circuit.gates[static_cast<size_t>(t + 1)].kind == GateKind::PauliZ);
        }
    }
}

TEST_CASE("canonicalization capacity arithmetic for a small one-qubit stream") {
    Circuit c;
    c.width = 1;
    c.proof_size = 0;
    c.ancilla_size = 1;
    c.out_index = 0;
    for (int i = 0; i < 5; ++i) c.gates.push_back(Gate{GateKind::Hadamard, {0}});
    const CanonicalCircuit canon = canonicalize_for_construction(c, 2);
    CHECK(canon.a == 3);
    CHECK(canon.T == 11);
    // forced identity at every subset-advance slot
    const ClockSchedule sched = canon.make_schedule();
    for (int64_t t = 1; t <= canon.T; ++t)
        if (sched.op(ClockRole::Add, t - 1).vertex_advance)
            CHECK(canon.circuit.gates[static_cast<size_t>(t - 1)].kind == GateKind::Identity);
    CHECK(canon.dummy_slots == 2);
}

TEST_CASE("canonicalization rejects macro gates") {
    Circuit c;
    c.width = 3;
    c.proof_size = 3;
    c.ancilla_size = 0;
    c.out_index = 0;
    c.gates = {Gate{GateKind::Toffoli, {0, 1, 2}}};
    CHECK_THROWS(canonicalize_for_construction(c, 2));
}
