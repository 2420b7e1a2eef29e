#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace satham {

// Signed literal: variable indices are 1-based as in DIMACS.
struct Literal {
    int variable = 0;
    bool negated = false;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    int max_clause_width() const;
};

struct KcnfReport {
    bool valid = false;
    int k_max = 0;
    // 0-based clause indices that violate either the width bound or the
    // one-variable-per-clause rule, with a message each.
    std::vector<std::pair<int, std::string>> offenders;
};

// DIMACS CNF. Rejected at parse time: empty clauses, repeated variables
// within a clause (same or opposite sign), out-of-range indices, and clause
// counts that disagree with the header.
CnfFormula parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfFormula& f);

KcnfReport validate_kcnf(const CnfFormula& f, int k);

// assignment bit i (0-based) is the value of variable i+1
bool evaluate(const CnfFormula& f, uint64_t assignment);
bool evaluate(const CnfFormula& f, const std::vector<bool>& assignment);

// Lexicographically smallest model (variable 1 = most significant bit), or
// nullopt when unsatisfiable. Guarded exhaustive search.
std::optional<uint64_t> brute_force_sat(const CnfFormula& f, int max_vars = 30);

std::string assignment_to_string(uint64_t assignment, int num_vars);

}  // namespace satham
