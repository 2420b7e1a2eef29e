#pragma once

#include <vector>

#include "satham/circuit.hpp"
#include "satham/clock.hpp"

namespace satham {

// Schedule-ready circuit: one gate per time step t = 1..T, two-qubit gates
// are controlled-phase only, each flanked by Z pairs, spaced at the fixed
// stride, and clear of every slot whose incoming clock transition advances
// the subset clock (those slots carry identity gates).
struct CanonicalCircuit {
    Circuit circuit;          // gates[t-1] is the gate at time step t
    int d = 1;                // locality parameter of the target construction
    int a = 0;                // dual-clock register half-width (d >= 2 only)
    int64_t T = 0;            // total time steps; equals circuit.gate_count()
    std::vector<int64_t> two_qubit_steps;
    int dummy_slots = 0;      // forced identity slots

    ClockSchedule make_schedule() const;
};

// Minimum spacing between consecutive controlled-phase gates; keeps their
// six-step clock windows disjoint.
inline constexpr int kTwoQubitStride = 6;

// Rewrites CNOT as H-conjugated CZ, flanks every CZ with Z pairs on its two
// qubits, places gates one per time step with identity padding, and for
// d >= 2 sizes the dual clock to the smallest sufficient register.
CanonicalCircuit canonicalize_for_construction(const Circuit& circuit, int d);

}  // namespace satham
