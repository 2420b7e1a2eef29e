#include "satham/canonical.hpp"

#include <algorithm>
#include <stdexcept>

namespace satham {

ClockSchedule CanonicalCircuit::make_schedule() const {
    if (d == 1) return ClockSchedule::unary(T);
    return ClockSchedule::dual(a, d);
}

namespace {

struct Slot {
    Gate gate;
    bool two_qubit = false;
};

// Gate stream after the two-qubit rewrite: CZ entries are atomic five-slot
// gadgets [Z f][Z s][CZ][Z f][Z s].
std::vector<Slot> rewrite_stream(const Circuit& c) {
    std::vector<Slot> out;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::Toffoli:
            case GateKind::MultiControlledNot:
                throw std::invalid_argument(
                    "canonicalize_for_construction: macro gates must be lowered first");
            case GateKind::ControlledNot: {
                const int f = g.qubits[0], s = g.qubits[1];
                out.push_back({Gate{GateKind::Hadamard, {s}}, false});
                out.push_back({Gate{GateKind::ControlledZ, {f, s}}, true});
                out.push_back({Gate{GateKind::Hadamard, {s}}, false});
                break;
            }
            case GateKind::ControlledZ:
                out.push_back({g, true});
                break;
            default:
                out.push_back({g, false});
        }
    }
    return out;
}

struct Placement {
    bool ok = false;
    std::vector<Gate> gates;  // index t-1 holds the gate of step t
    std::vector<int64_t> two_qubit_steps;
    int dummy_slots = 0;
};

// True when the incoming transition t-1 -> t advances the subset clock;
// those steps must carry identity gates so that every propagation term
// stays within the target locality.
bool is_dummy_slot(const ClockSchedule& sched, int64_t t) {
    if (sched.variant() != ClockVariant::Dual) return false;
    return sched.op(ClockRole::Add, t - 1).vertex_advance;
}

bool two_qubit_slot_ok(const ClockSchedule& sched, int64_t t) {
    const int64_t T = sched.T();
    if (t - 3 < 1 || t + 2 > T) return false;
    if (sched.op(ClockRole::Add, t - 1).vertex_advance) return false;
    // the six-step window needs both double-step operators
    if (!sched.op_available(ClockRole::Add2, t) ||
        !sched.op_available(ClockRole::Add2, t - 1))
        return false;
    return true;
}

// Walk the stream over the slots of a fixed-length schedule. Fails when the
// schedule is too short.
Placement place_on_schedule(const std::vector<Slot>& stream, const ClockSchedule& sched) {
    Placement p;
    const int64_t T = sched.T();
    p.gates.assign(static_cast<size_t>(T), Gate{GateKind::Identity, {0}});
    int64_t cursor = 1;
    int64_t last_two = -1000;

    auto mark_dummies_until = [&](int64_t limit) {
        for (; cursor <= limit; ++cursor) {
            if (is_dummy_slot(sched, cursor)) p.dummy_slots += 1;
        }
    };

    size_t i = 0;
    while (i < stream.size()) {
        if (cursor > T) return p;
        if (is_dummy_slot(sched, cursor)) {
            p.dummy_slots += 1;
            ++cursor;
            continue;
        }
        if (!stream[i].two_qubit) {
            p.gates[static_cast<size_t>(cursor - 1)] = stream[i].gate;
            ++cursor;
            ++i;
            continue;
        }
        // CZ gadget: find a start s >= cursor with five non-dummy slots and a
        // legal centre slot at the stride from the previous CZ
        const Gate cz = stream[i].gate;
        const int f = cz.qubits[0], s_q = cz.qubits[1];
        int64_t s = cursor;
        bool placed = false;
        for (; s + 4 <= T; ++s) {
            const int64_t centre = s + 2;
            if (centre - last_two < kTwoQubitStride) continue;
            bool clear = true;
            for (int64_t u = s; u <= s + 4; ++u)
                if (is_dummy_slot(sched, u)) { clear = false; break; }
            if (!clear) continue;
            if (!two_qubit_slot_ok(sched, centre)) continue;
            placed = true;
            break;
        }
        if (!placed) return p;
        mark_dummies_until(s - 1);
        p.gates[static_cast<size_t>(s - 1)] = Gate{GateKind::PauliZ, {f}};
        p.gates[static_cast<size_t>(s)] = Gate{GateKind::PauliZ, {s_q}};
        p.gates[static_cast<size_t>(s + 1)] = cz;
        p.gates[static_cast<size_t>(s + 2)] = Gate{GateKind::PauliZ, {f}};
        p.gates[static_cast<size_t>(s + 3)] = Gate{GateKind::PauliZ, {s_q}};
        p.two_qubit_steps.push_back(s + 2);
        last_two = s + 2;
        cursor = s + 5;
        ++i;
    }
    mark_dummies_until(T);
    p.ok = true;
    return p;
}

}  // namespace

CanonicalCircuit canonicalize_for_construction(const Circuit& circuit, int d) {
    circuit.validate();
    if (d < 1) throw std::invalid_argument("canonicalize_for_construction: d must be >= 1");
    const std::vector<Slot> stream = rewrite_stream(circuit);

    CanonicalCircuit out;
    out.d = d;

    if (d == 1) {
        // unary schedule: grow T until the stream fits
        int64_t T = std::max<int64_t>(1, static_cast<int64_t>(stream.size()));
        for (;; ++T) {
            const ClockSchedule sched = ClockSchedule::unary(T);
            Placement p = place_on_schedule(stream, sched);
            if (p.ok) {
                out.a = 0;
                out.T = T;
                out.circuit = circuit;
                out.circuit.gates = std::move(p.gates);
                out.two_qubit_steps = std::move(p.two_qubit_steps);
                out.dummy_slots = p.dummy_slots;
                return out;
            }
        }
    }

    for (int a = d;; ++a) {
        if (2 * a > 62)
            throw std::invalid_argument("canonicalize_for_construction: circuit too long");
        const ClockSchedule sched = ClockSchedule::dual(a, d);
        if (sched.T() < static_cast<int64_t>(stream.size())) continue;
        Placement p = place_on_schedule(stream, sched);
        if (!p.ok) continue;
        out.a = a;
        out.T = sched.T();
        out.circuit = circuit;
        out.circuit.gates = std::move(p.gates);
        out.two_qubit_steps = std::move(p.two_qubit_steps);
        out.dummy_slots = p.dummy_slots;
        return out;
    }
}

}  // namespace satham
