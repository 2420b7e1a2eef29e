#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satham/cnf.hpp"
#include "satham/linalg.hpp"

namespace satham {

// Gate kinds. Toffoli and MultiControlledNot are macro gates: the simulator
// applies them natively, but they must be lowered before the Hamiltonian
// construction. Identity and PauliZ exist because the canonicalized schedule
// stores one gate per time step and flanks every controlled-phase gate with
// Z gates. PiOver8Inv is the inverse pi/8 gate kept as a single gate so that
// lowered circuits stay within the published gate-count bounds.
enum class GateKind {
    Identity,
    Hadamard,
    PiOver8,
    PiOver8Inv,
    PauliZ,
    Not,
    ControlledNot,
    ControlledZ,
    Toffoli,
    MultiControlledNot,
};

// Qubit list is controls first, target last.
struct Gate {
    GateKind kind = GateKind::Identity;
    std::vector<int> qubits;

    int arity() const { return static_cast<int>(qubits.size()); }
    int target() const { return qubits.back(); }
};

const char* gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);
bool is_macro(GateKind k);
bool is_permutation_gate(GateKind k);
int gate_arity(GateKind k, int declared);  // expected arity; -1 for MCX (variable)

// Unitary block for a gate, on its own qubits in list order.
CMat gate_matrix(const Gate& g);

struct Circuit {
    int width = 0;
    int proof_size = 0;    // proof qubits occupy indices [0, proof_size)
    int ancilla_size = 0;  // ancillas occupy [proof_size, width)
    int out_index = 0;
    std::vector<Gate> gates;

    int gate_count() const { return static_cast<int>(gates.size()); }
    void validate() const;
};

// Exact statevector simulation. Ancillas start in |0...0>.
StateVector simulate(const Circuit& c, const StateVector& input);
double accept_probability(const Circuit& c, const StateVector& input);

// Classical tracking for permutation-only circuits (Not/CNOT/Toffoli/MCX/I).
uint64_t classical_track(const Circuit& c, uint64_t input_bits);
bool is_permutation_circuit(const Circuit& c);

// --- decompositions ---

// Multi-controlled NOT with k >= 2 controls into exactly 2k-3 Toffoli gates
// using k-2 work qubits, which end in their initial all-zero state.
struct McxDecomposition {
    std::vector<Gate> gates;
    int work_qubits_used = 0;
};
McxDecomposition decompose_mcx(const std::vector<int>& controls, int target,
                               const std::vector<int>& work);

// Toffoli into {Hadamard, PiOver8, PiOver8Inv, ControlledNot}; 15 gates.
std::vector<Gate> decompose_toffoli(int c1, int c2, int target);

// Lower every macro gate. MCX work qubits are taken from `work_pool`; the
// pool must hold max(k)-2 free zero-initialized qubits. When the pool is
// empty fresh ancillas are appended to the circuit.
Circuit lower_to_elementary(const Circuit& c, const std::vector<int>& work_pool = {});

// --- SAT verification circuit ---

struct VerifierLayout {
    int n = 0;            // input variables
    int m = 0;            // clauses
    int r = 0;            // counter width
    int k_max = 0;        // widest clause
    int cls = 0;          // clause scratch qubit
    int cnt_offset = 0;   // first counter qubit
    int out = 0;
    int work_offset = 0;  // first MCX work qubit
    int pool_size = 0;

    int ancilla_total = 0;    // cls + cnt + out + pool
    int ancilla_bound = 0;    // 2*ceil(log2 m) + 2
    bool ancilla_bound_ok = false;

    int macro_gate_count = 0;
    int toffoli_count = 0;     // after lowering MCX to Toffolis
    int elementary_count = 0;  // after full lowering
};

struct VerifierCircuit {
    Circuit circuit;  // macro-level: Not / CNOT / Toffoli / MCX
    VerifierLayout layout;
};

// Counter increment on r qubits (most significant first); +1 mod wraparound
// excluded by construction (the counter never reaches all-ones). When
// `control` is nonnegative every layer is additionally controlled on it.
std::vector<Gate> build_addone(int cnt_offset, int r, int control = -1);

// Maps |y>|0> -> |y>|delta_{m,int(y)}>; the mask NOTs are undone afterwards
// so the counter register is preserved.
std::vector<Gate> build_compare(int cnt_offset, int r, int m, int out);

// Clause-counting verifier: out qubit ends at Phi(x) for every basis input,
// the cls scratch returns to |0>, and the counter holds the number of
// satisfied clauses.
VerifierCircuit build_sat_verifier(const CnfFormula& f);

// Published bound on the fully lowered gate count for m = O(n^c) clauses.
double verifier_gate_bound(int n, int m, int k);

}  // namespace satham
