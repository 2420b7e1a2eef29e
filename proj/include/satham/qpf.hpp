#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "satham/hamiltonian.hpp"
#include "satham/spectrum.hpp"

namespace satham {

// Affine rescaling H = scale * H' + shift * I placing the spectrum of H'
// inside [0, 1), with tr exp(-beta H) = exp(-beta*shift) tr exp(-beta*scale H').
struct NormalizedHamiltonian {
    LocalHamiltonian h_prime;
    double scale = 1.0;
    double shift = 0.0;
};

inline constexpr double kNormalizeMargin = 0.01;

NormalizedHamiltonian normalize(const LocalHamiltonian& h);

// One shifted grid: slot ell has anchor (ell-1)/L + k/L^2 and covers the
// half-open interval of width 1/L above it. Grid 0 drops the top slot.
struct GridPartition {
    int L = 0;
    int k = 0;

    int num_slots() const { return k == 0 ? L : L + 1; }
    double anchor(int ell) const {
        return (static_cast<double>(ell) - 1.0) / L + static_cast<double>(k) / (static_cast<double>(L) * L);
    }
    double lo(int ell) const { return anchor(ell); }
    double hi(int ell) const { return anchor(ell) + 1.0 / L; }
};

struct EnergyEstimationParams {
    double delta_e = 0.0;
    int phase_bits = 0;     // b
    int register_bits = 0;  // r = b + 2
    int repetitions = 1;    // median repetitions

    static EnergyEstimationParams for_tolerance(double delta_e, int repetitions);
};

enum class QpfBackend { Exact, Oracle, Statevector };
const char* qpf_backend_name(QpfBackend b);
QpfBackend qpf_backend_from_name(const std::string& name);

struct QpfEstimate {
    double z_tilde = 0.0;
    std::vector<double> z_k;
    std::vector<std::vector<double>> counts;  // [k][ell]
    std::string backend;
    double delta_c = 0.0;
    int L = 0;
    int grid_count = 0;
    double beta = 0.0;
    double beta_eff = 0.0;  // scale * beta, used on the normalized operator
    double shift = 0.0;
    int n = 0;
    int c_exponent = 1;
    int repetitions = 0;
    uint64_t seed = 0;
};

// ---- phase estimation ----

// Exact outcome law of textbook phase estimation with `register_bits` bits
// reading an eigenphase of `phase_turns` full turns; index x estimates
// phase x / 2^register_bits.
std::vector<double> pe_distribution(double phase_turns, int register_bits);

// Same distribution obtained by running the explicit circuit on
// register_bits + system qubits; for cross-checking at small sizes.
std::vector<double> pe_distribution_circuit(const CMat& u, const StateVector& eigenstate,
                                            int register_bits);

// Samples of the estimated phase, in radians in [0, 2pi). The action is
// queried once to read off the eigenphase; a residual above 1e-8 is an error.
using UnitaryAction = std::function<StateVector(const StateVector&)>;
std::vector<double> phase_estimate(const UnitaryAction& action, const StateVector& eigenstate,
                                   int register_bits, int samples, uint64_t seed);

double median_amplify(std::vector<double> estimates);

// ---- Hamiltonian evolution ----

struct EvolutionOp {
    std::function<StateVector(const StateVector&)> map;
    double error_bound = 0.0;  // zero for the exact backend
};

EvolutionOp hamiltonian_evolution_exact(const LocalHamiltonian& h, double t);
EvolutionOp hamiltonian_evolution_trotter(const LocalHamiltonian& h, double t, int steps);

// ---- energy estimation ----

// Estimate of an eigenvalue of h_prime from `state`. The oracle backend
// returns the eigenvalue plus seeded uniform noise within delta_e; the
// statevector backend takes the median of phase-estimation samples.
// Superpositions of eigenstates collapse to one branch, seeded.
double energy_estimate(const NormalizedHamiltonian& h, const StateVector& state,
                       const EnergyEstimationParams& params, QpfBackend backend, uint64_t seed);

// ---- counting ----

StateVector epr_state(int n);

// Quantum counting against an explicit state preparer A on `width` qubits:
// marked basis states satisfy (index & marked_mask) == marked_value. With
// `extra_qubit` the register is extended by one uniform qubit so the marked
// fraction stays below one half.
struct CountingParams {
    int iteration_bits = 0;  // phase-register size for the Grover iterate
    int repetitions = 11;    // median repetitions
    static int default_iteration_bits(int n, int c_exponent);
};

double amplitude_estimate(const CMat& preparer, int width, uint64_t marked_mask,
                          uint64_t marked_value, bool extra_qubit,
                          const CountingParams& params, uint64_t seed);

// Exact outcome law of the counting phase estimation for marked fraction f.
std::vector<double> counting_distribution(double fraction, int iteration_bits);

// Number of eigenvalues of h_prime inside [lo, hi), estimated per backend:
// Exact counts the spectrum, Oracle counts worst-case inclusively within
// delta_e and applies seeded multiplicative noise bounded by delta_c plus a
// rare seeded failure, Statevector runs amplified phase-estimation counting
// on the maximally entangled input.
double count_in_interval(const NormalizedHamiltonian& h, double lo, double hi, double delta_e,
                         double delta_c, int repetitions, QpfBackend backend, uint64_t seed,
                         int c_exponent);

// ---- the full algorithm ----

inline constexpr int kStatevectorGuardQubits = 6;

// confidence_budget is the total failure probability split over all counts
// by a union bound; it sets the per-count repetition number.
QpfEstimate approximate_qpf(const LocalHamiltonian& h, double beta, int c_exponent,
                            QpfBackend backend, uint64_t seed,
                            double confidence_budget = 0.01);

}  // namespace satham
