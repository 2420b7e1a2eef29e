#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satham/canonical.hpp"
#include "satham/circuit.hpp"
#include "satham/clock.hpp"
#include "satham/linalg.hpp"

namespace satham {

struct LocalTerm {
    std::vector<int> support;  // ascending global qubit indices
    CMat block;                // Hermitian, dim 2^{|support|}
    double coefficient = 1.0;  // nonnegative weight

    int locality() const { return static_cast<int>(support.size()); }
    void validate(int width) const;
};

struct CoefficientSet {
    double alpha_in = 0.0;
    double alpha_out = 0.0;
    double alpha_a = 0.0;
    double alpha_b = 0.0;
    double alpha_clock = 0.0;

    // Penalty ladder that realizes the promise gap at small sizes: the
    // initialization/output penalties scale with T+1 so a history state pays
    // exactly its rejection probability, propagation dominates them, and the
    // clock penalty dominates everything.
    static CoefficientSet defaults_for(int64_t T);
};

class LocalHamiltonian {
  public:
    LocalHamiltonian() = default;
    LocalHamiltonian(int width, std::vector<LocalTerm> terms);

    int width() const { return width_; }
    int locality() const { return locality_; }
    const std::vector<LocalTerm>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    // sum over terms of coefficient * exact operator norm of the block
    double norm_bound() const;
    bool is_diagonal() const;

    void add_term(LocalTerm t);

  private:
    int width_ = 0;
    int locality_ = 0;
    std::vector<LocalTerm> terms_;
    mutable std::optional<double> norm_bound_;
    mutable std::optional<bool> diagonal_;
};

StateVector apply(const LocalHamiltonian& h, const StateVector& v);

inline constexpr int kDenseGuardQubits = 14;

// Full 2^n matrix; guarded by kDenseGuardQubits.
CMat to_dense(const LocalHamiltonian& h);

// Diagonal of the Hamiltonian, valid only when is_diagonal().
std::vector<double> dense_diagonal(const LocalHamiltonian& h);

// ---------------------------------------------------------------------------

// Circuit-to-Hamiltonian assembly over circuit (x) clock. The schedule is the
// unary clock for d=1 and the dual clock for d>=2; emitted locality is d+1.
LocalHamiltonian circuit_to_hamiltonian(const CanonicalCircuit& canonical,
                                        const CoefficientSet& coeffs);

// Uniform superposition over partial executions tensored with clock states.
StateVector history_state(const CanonicalCircuit& canonical, const ClockSchedule& schedule,
                          const StateVector& proof_state);

}  // namespace satham
