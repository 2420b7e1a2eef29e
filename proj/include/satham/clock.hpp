#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satham/linalg.hpp"

namespace satham {

// Hamiltonian path through the subsets-of-fixed-size graph: consecutive
// d-subsets of [a] differ by exactly one element exchange.
struct JohnsonPath {
    int a = 0;
    int d = 0;
    std::vector<std::vector<int>> subsets;  // elements 1-based, each sorted

    int length() const { return static_cast<int>(subsets.size()); }
    void validate() const;
};

// Revolving-door enumeration of d-subsets of [a]; deterministic, visits all
// binomial(a,d) subsets with one-exchange steps.
JohnsonPath revolving_door_path(int a, int d);

uint64_t binomial(int n, int k);

// Time-step pair map for the dual clock: t -> (t1, t2) with t1 in
// [1, binom(a,d-1)] and t2 in [0, a]; t2 sweeps up on odd t1, down on even.
std::pair<int, int> g_map(int64_t t, int a);

enum class ClockVariant { Unary, Johnson, Dual };
enum class ClockRole { Stay, Add, Add2 };

const char* clock_role_name(ClockRole r);

// Operator block on a subset of clock qubits (0-based within the clock
// register), plus a human-readable construction tag.
struct ClockOp {
    std::vector<int> support;
    CMat matrix;
    ClockRole role = ClockRole::Stay;
    int64_t t = 0;
    std::string tag;
    // true when the op uses the two-position vertex-advance block rather
    // than the vertex projector (relevant to locality accounting)
    bool vertex_advance = false;

    int locality() const { return static_cast<int>(support.size()); }
};

struct ClockTerm {
    std::vector<int> support;
    CMat matrix;
    double coefficient = 1.0;
};

struct ConditionViolation {
    ClockRole role;
    int64_t t;
    int64_t state;  // basis index of the offending legal state, -1 for action check
    std::string what;
};

struct ConditionReport {
    bool ok = true;
    std::vector<ConditionViolation> violations;
    // role/t pairs with no published implementation (dual schedule only)
    std::vector<std::pair<ClockRole, int64_t>> excluded;
    int64_t checks = 0;
};

class ClockSchedule {
  public:
    static ClockSchedule unary(int64_t T);
    static ClockSchedule johnson(int a, int d);
    // Dual clock for a (d+1)-local construction: a (a, d-1) subset clock next
    // to an a-qubit unary clock sweeping 0..a and back. d >= 2.
    static ClockSchedule dual(int a, int d);

    ClockVariant variant() const { return variant_; }
    int width() const { return width_; }
    int64_t num_steps() const { return T_ + 1; }
    int64_t T() const { return T_; }
    int a() const { return a_; }
    int d() const { return d_; }
    const JohnsonPath& path() const { return path_; }

    // basis index of the legal state at time t (qubit 0 = MSB)
    uint64_t legal_state(int64_t t) const;
    std::string legal_state_string(int64_t t) const;
    bool is_legal_state(uint64_t basis, int64_t* t_out = nullptr) const;

    ClockOp op(ClockRole role, int64_t t) const;
    bool op_available(ClockRole role, int64_t t) const;

    // Penalty Hamiltonian on the clock register: zero on every legal state,
    // at least one on every other basis state.
    std::vector<ClockTerm> h_clock_terms() const;

    ConditionReport verify_conditions() const;

  private:
    ClockVariant variant_ = ClockVariant::Unary;
    int width_ = 0;
    int64_t T_ = 0;
    int a_ = 0;
    int d_ = 0;
    JohnsonPath path_;  // Johnson: (a,d); Dual: (a, d-1)
    std::vector<uint64_t> legal_;

    void build_legal_states();
};

// Subset-occupancy stabilizer: binom(a,d)*H_over + H_under - (binom(a,d)-1)*I
// as local terms on an a-qubit register; kernel is exactly the weight-d
// basis states, every other basis state has diagonal value >= 1.
std::vector<ClockTerm> build_h_stab(int a, int d);

// Diagonal value <y|H|y> of a sum of local terms, for diagonal term lists.
double diagonal_value(const std::vector<ClockTerm>& terms, uint64_t basis, int width);

// Internal checker used by verify_conditions; exposed for negative-control
// tests that corrupt an operator on purpose.
void check_op_against_conditions(const ClockSchedule& sched, const ClockOp& op,
                                 ClockRole role, int64_t t, ConditionReport& rep);

}  // namespace satham
