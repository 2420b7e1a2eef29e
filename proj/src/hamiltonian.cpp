#include "satham/hamiltonian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satham {

void LocalTerm::validate(int width) const {
    if (block.dim != (1 << support.size()))
        throw std::invalid_argument("LocalTerm: block dimension mismatch");
    if (!block.is_hermitian(1e-12))
        throw std::invalid_argument("LocalTerm: block is not Hermitian");
    if (coefficient < 0.0 || !std::isfinite(coefficient))
        throw std::invalid_argument("LocalTerm: coefficient must be a finite nonnegative real");
    int prev = -1;
    for (int q : support) {
        if (q < 0 || q >= width) throw std::invalid_argument("LocalTerm: support out of range");
        if (q <= prev) throw std::invalid_argument("LocalTerm: support must be ascending");
        prev = q;
    }
}

LocalHamiltonian::LocalHamiltonian(int width, std::vector<LocalTerm> terms)
    : width_(width), terms_(std::move(terms)) {
    for (const LocalTerm& t : terms_) {
        t.validate(width_);
        locality_ = std::max(locality_, t.locality());
    }
}

void LocalHamiltonian::add_term(LocalTerm t) {
    t.validate(width_);
    locality_ = std::max(locality_, t.locality());
    norm_bound_.reset();
    diagonal_.reset();
    terms_.push_back(std::move(t));
}

namespace {

double block_norm(const CMat& m) {
    Eigen::MatrixXcd e(m.dim, m.dim);
    for (int r = 0; r < m.dim; ++r)
        for (int c = 0; c < m.dim; ++c) e(r, c) = m.at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace

double LocalHamiltonian::norm_bound() const {
    if (!norm_bound_) {
        double b = 0.0;
        for (const LocalTerm& t : terms_) b += t.coefficient * block_norm(t.block);
        norm_bound_ = b;
    }
    return *norm_bound_;
}

bool LocalHamiltonian::is_diagonal() const {
    if (!diagonal_) {
        diagonal_ = std::all_of(terms_.begin(), terms_.end(),
                                [](const LocalTerm& t) { return t.block.is_diagonal(1e-14); });
    }
    return *diagonal_;
}

StateVector apply(const LocalHamiltonian& h, const StateVector& v) {
    if (v.num_qubits != h.width()) throw std::invalid_argument("apply: width mismatch");
    StateVector out(h.width());
    for (const LocalTerm& t : h.terms())
        accumulate_local(v, out, t.support, t.block, cplx(t.coefficient, 0.0));
    return out;
}

CMat to_dense(const LocalHamiltonian& h) {
    if (h.width() > kDenseGuardQubits)
        throw std::invalid_argument("to_dense: width " + std::to_string(h.width()) +
                                    " exceeds the dense guard of " +
                                    std::to_string(kDenseGuardQubits) + " qubits");
    const uint64_t dim = 1ull << h.width();
    CMat out(static_cast<int>(dim));
    for (const LocalTerm& t : h.terms()) {
        const int k = t.locality();
        const int bd = 1 << k;
        std::vector<int> shifts(k);
        for (int j = 0; j < k; ++j) shifts[j] = h.width() - 1 - t.support[j];
        uint64_t smask = 0;
        std::vector<uint64_t> spread(bd, 0);
        for (int b = 0; b < bd; ++b) {
            uint64_t x = 0;
            for (int j = 0; j < k; ++j)
                if ((b >> (k - 1 - j)) & 1) x |= 1ull << shifts[j];
            spread[b] = x;
            smask |= x;
        }
        for (uint64_t base = 0; base < dim; ++base) {
            if (base & smask) continue;
            for (int r = 0; r < bd; ++r)
                for (int c = 0; c < bd; ++c) {
                    const cplx v = t.block.at(r, c);
                    if (v == cplx(0.0, 0.0)) continue;
                    out.at(static_cast<int>(base | spread[r]),
                           static_cast<int>(base | spread[c])) += t.coefficient * v;
                }
        }
    }
    return out;
}

std::vector<double> dense_diagonal(const LocalHamiltonian& h) {
    if (!h.is_diagonal())
        throw std::invalid_argument("dense_diagonal: Hamiltonian has off-diagonal terms");
    const uint64_t dim = 1ull << h.width();
    std::vector<double> diag(dim, 0.0);
    for (const LocalTerm& t : h.terms()) {
        const int k = t.locality();
        for (uint64_t i = 0; i < dim; ++i) {
            int block = 0;
            for (int j = 0; j < k; ++j) block = (block << 1) | bit_of(i, t.support[j], h.width());
            diag[i] += t.coefficient * t.block.at(block, block).real();
        }
    }
    return diag;
}

// ---------------------------------------------------------------------------

CoefficientSet CoefficientSet::defaults_for(int64_t T) {
    const double steps = static_cast<double>(T) + 1.0;
    CoefficientSet c;
    c.alpha_in = steps;
    c.alpha_out = steps;
    c.alpha_a = 8.0 * steps * steps;
    c.alpha_b = c.alpha_a;
    c.alpha_clock = 16.0 * c.alpha_a * c.alpha_a;
    return c;
}

namespace {

CMat hermitize(const CMat& m) { return m.plus(m.adjoint()); }

}  // namespace

LocalHamiltonian circuit_to_hamiltonian(const CanonicalCircuit& canonical,
                                        const CoefficientSet& coeffs) {
    const Circuit& c = canonical.circuit;
    c.validate();
    const ClockSchedule sched = canonical.make_schedule();
    const int64_t T = sched.T();
    if (static_cast<int64_t>(c.gates.size()) != T)
        throw std::invalid_argument("circuit_to_hamiltonian: circuit is not canonicalized");
    for (const Gate& g : c.gates)
        if (is_macro(g.kind))
            throw std::invalid_argument("circuit_to_hamiltonian: macro gate present");

    const int clock_offset = c.width;
    LocalHamiltonian ham(c.width + sched.width(), {});

    auto clock_support = [&](const ClockOp& op) {
        std::vector<int> s;
        s.reserve(op.support.size());
        for (int q : op.support) s.push_back(clock_offset + q);
        return s;
    };
    auto add_clock_only = [&](const ClockOp& op, const CMat& matrix, double coeff) {
        if (coeff == 0.0) return;
        LocalTerm t;
        t.support = clock_support(op);
        t.block = matrix;
        t.coefficient = coeff;
        ham.add_term(std::move(t));
    };
    // (block on one circuit qubit) (x) (matrix on the op's clock support)
    auto add_mixed = [&](int circuit_qubit, const CMat& circuit_block, const ClockOp& op,
                         const CMat& clock_matrix, double coeff) {
        if (coeff == 0.0) return;
        LocalTerm t;
        t.support = {circuit_qubit};
        for (int q : op.support) t.support.push_back(clock_offset + q);
        t.block = CMat::kron(circuit_block, clock_matrix);
        t.coefficient = coeff;
        ham.add_term(std::move(t));
    };

    // initialization: ancillas must be |0> at step 0
    {
        const ClockOp stay0 = sched.op(ClockRole::Stay, 0);
        CMat one(2);
        one.at(1, 1) = 1.0;
        for (int q = c.proof_size; q < c.width; ++q)
            add_mixed(q, one, stay0, stay0.matrix, coeffs.alpha_in);
    }
    // output: penalize |0> on the out qubit at step T
    {
        const ClockOp stayT = sched.op(ClockRole::Stay, T);
        CMat zero(2);
        zero.at(0, 0) = 1.0;
        add_mixed(c.out_index, zero, stayT, stayT.matrix, coeffs.alpha_out);
    }

    std::vector<bool> is_two(static_cast<size_t>(T + 1), false);
    for (int64_t t : canonical.two_qubit_steps) is_two[static_cast<size_t>(t)] = true;

    for (int64_t t = 1; t <= T; ++t) {
        const Gate& g = c.gates[static_cast<size_t>(t - 1)];
        const ClockOp add_prev = sched.op(ClockRole::Add, t - 1);

        if (!is_two[static_cast<size_t>(t)]) {
            // propagation for a one-qubit step
            const ClockOp stay_t = sched.op(ClockRole::Stay, t);
            const ClockOp stay_p = sched.op(ClockRole::Stay, t - 1);
            add_clock_only(stay_t, stay_t.matrix, 0.5 * coeffs.alpha_a);
            add_clock_only(stay_p, stay_p.matrix, 0.5 * coeffs.alpha_a);
            if (g.kind == GateKind::Identity) {
                add_clock_only(add_prev, hermitize(add_prev.matrix).scaled(-1.0),
                               0.5 * coeffs.alpha_a);
            } else {
                if (g.arity() != 1)
                    throw std::invalid_argument(
                        "circuit_to_hamiltonian: two-qubit gate outside a scheduled slot");
                LocalTerm cross;
                cross.support = {g.qubits[0]};
                for (int q : add_prev.support) cross.support.push_back(clock_offset + q);
                cross.block = hermitize(CMat::kron(gate_matrix(g), add_prev.matrix)).scaled(-1.0);
                cross.coefficient = 0.5 * coeffs.alpha_a;
                ham.add_term(std::move(cross));
            }
            continue;
        }

        // two-qubit step: controlled phase with the qubit and window terms
        if (g.kind != GateKind::ControlledZ)
            throw std::logic_error("two-qubit step does not hold a controlled-phase gate");
        const CMat add_h = hermitize(add_prev.matrix);
        CMat qpiece(2);
        qpiece.at(0, 0) = -2.0;
        qpiece.at(1, 1) = 1.0;
        add_mixed(g.qubits[0], qpiece, add_prev, add_h, 0.5 * coeffs.alpha_b);
        add_mixed(g.qubits[1], qpiece, add_prev, add_h, 0.5 * coeffs.alpha_b);

        auto stay_w = [&](int64_t u, double w) {
            const ClockOp op = sched.op(ClockRole::Stay, u);
            add_clock_only(op, op.matrix, w * coeffs.alpha_b / 8.0);
        };
        auto add_w = [&](int64_t u, double w) {
            const ClockOp op = sched.op(ClockRole::Add, u);
            add_clock_only(op, hermitize(op.matrix), w * coeffs.alpha_b / 8.0);
        };
        auto add2_w = [&](int64_t u, double w) {
            const ClockOp op = sched.op(ClockRole::Add2, u);
            add_clock_only(op, hermitize(op.matrix), w * coeffs.alpha_b / 8.0);
        };
        stay_w(t, 1.0);
        stay_w(t + 1, 6.0);
        stay_w(t + 2, 1.0);
        add2_w(t, 2.0);
        add_w(t, 1.0);
        add_w(t + 1, 1.0);
        stay_w(t - 3, 1.0);
        stay_w(t - 2, 6.0);
        stay_w(t - 1, 1.0);
        add2_w(t - 1, 2.0);
        add_w(t - 3, 1.0);
        add_w(t - 1, 1.0);
    }

    // clock penalty
    for (const ClockTerm& ct : sched.h_clock_terms()) {
        LocalTerm t;
        t.support.reserve(ct.support.size());
        for (int q : ct.support) t.support.push_back(clock_offset + q);
        t.block = ct.matrix;
        t.coefficient = coeffs.alpha_clock * ct.coefficient;
        if (t.coefficient < 0.0) {
            t.block = t.block.scaled(-1.0);
            t.coefficient = -t.coefficient;
        }
        ham.add_term(std::move(t));
    }

    return ham;
}

StateVector history_state(const CanonicalCircuit& canonical, const ClockSchedule& schedule,
                          const StateVector& proof_state) {
    const Circuit& c = canonical.circuit;
    if (proof_state.num_qubits != c.proof_size)
        throw std::invalid_argument("history_state: proof width mismatch");
    const int64_t T = schedule.T();
    if (static_cast<int64_t>(c.gates.size()) != T)
        throw std::invalid_argument("history_state: circuit/schedule length mismatch");
    StateVector out(c.width + schedule.width());

    // embed |psi>|0...0> and walk the gate list, accumulating each partial
    // execution against its clock state
    StateVector phi(c.width);
    for (uint64_t i = 0; i < proof_state.amp.size(); ++i)
        phi.amp[i << c.ancilla_size] = proof_state.amp[i];

    const double scale = 1.0 / std::sqrt(static_cast<double>(T + 1));
    const int clock_bits = schedule.width();
    for (int64_t t = 0; t <= T; ++t) {
        if (t > 0) {
            const Gate& g = c.gates[static_cast<size_t>(t - 1)];
            if (g.kind != GateKind::Identity) apply_local(phi, g.qubits, gate_matrix(g));
        }
        const uint64_t clock_index = schedule.legal_state(t);
        for (uint64_t i = 0; i < phi.amp.size(); ++i) {
            if (phi.amp[i] == cplx(0.0, 0.0)) continue;
            out.amp[(i << clock_bits) | clock_index] += scale * phi.amp[i];
        }
    }
    return out;
}

}  // namespace satham
