#pragma once

#include <functional>
#include <string>

#include "satham/cnf.hpp"
#include "satham/hamiltonian.hpp"
#include "satham/spectrum.hpp"

namespace satham {

// Stage-by-stage record of how an instance was produced.
struct Provenance {
    std::string source;  // "trivial" or "verifier"
    int n = 0;           // formula variables
    int m = 0;           // clauses
    int k = 0;           // clause width bound
    double epsilon = 0.0;
    int d = 0;
    int a = 0;
    int64_t T = 0;
    int circuit_width = 0;   // N of the verifier circuit
    int ancilla_width = 0;   // verifier ancillas
    int clock_width = 0;
    int total_width = 0;     // qubits of the emitted Hamiltonian
    int64_t elementary_gates = 0;
};

struct LhInstance {
    LocalHamiltonian hamiltonian;
    Thresholds thresholds;
    Provenance provenance;
};

struct QpfInstance {
    LocalHamiltonian hamiltonian;  // same operator as the LH side
    double beta = 0.0;
    double delta = 0.0;
    double z_yes = 0.0;  // answer YES when the estimate is at least this
    double z_no = 0.0;   // answer NO when the estimate is at most this
    Thresholds thresholds;
    int n = 0;
};

// One projector per clause onto its unique falsifying sub-assignment;
// thresholds (1/n, 1-1/n).
LhInstance sat_to_klh_trivial(const CnfFormula& f);

// Verifier circuit -> canonicalized schedule -> dual-clock Hamiltonian with
// d=2; 3-local output, thresholds (epsilon, 1/2-epsilon).
LhInstance sat_to_3lh(const CnfFormula& f, double epsilon, int d = 2);
LhInstance sat_to_3lh(const CnfFormula& f, double epsilon, int d,
                      const std::function<CoefficientSet(int64_t)>& coeffs_for);

// Decision thresholds for the partition-function route: beta = n/(E_no-E_yes)
// and the largest delta with (1-delta)/(1+delta) >= e^{-0.3 n}, pulled a hair
// inside the boundary so the separation z_yes > z_no is strict.
QpfInstance lh_to_qpf(const LhInstance& instance);

using QpfSolver = std::function<double(const LocalHamiltonian&, double beta, double delta)>;

LhAnswer decide_lh_via_qpf(const QpfInstance& instance, const QpfSolver& solver);

}  // namespace satham
