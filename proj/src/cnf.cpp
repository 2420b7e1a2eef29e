#include "satham/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace satham {

int CnfFormula::max_clause_width() const {
    int w = 0;
    for (const auto& c : clauses) w = std::max(w, static_cast<int>(c.size()));
    return w;
}

namespace {

void check_clause(const Clause& c, int num_vars, int index) {
    if (c.empty())
        throw std::invalid_argument("clause " + std::to_string(index + 1) + " is empty");
    std::unordered_set<int> seen;
    for (const Literal& l : c) {
        if (l.variable < 1 || l.variable > num_vars)
            throw std::invalid_argument("literal " + std::to_string(l.negated ? -l.variable : l.variable) +
                                        " out of range in clause " + std::to_string(index + 1));
        if (!seen.insert(l.variable).second)
            throw std::invalid_argument("variable " + std::to_string(l.variable) +
                                        " appears twice in clause " + std::to_string(index + 1));
    }
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula f;
    int declared_clauses = -1;
    Clause current;
    bool header_seen = false;

    auto finish_clause = [&]() {
        check_clause(current, f.num_vars, f.num_clauses());
        f.clauses.push_back(current);
        current.clear();
    };

    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok == "p") {
            std::string fmt;
            if (header_seen || !(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf")
                throw std::invalid_argument("malformed DIMACS header");
            if (f.num_vars < 0 || declared_clauses < 0)
                throw std::invalid_argument("malformed DIMACS header");
            header_seen = true;
            continue;
        }
        if (!header_seen) throw std::invalid_argument("clause data before DIMACS header");
        // first token of the line is part of the clause stream
        do {
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0')
                throw std::invalid_argument("bad literal token '" + tok + "'");
            if (v == 0) {
                finish_clause();
            } else {
                current.push_back(Literal{static_cast<int>(std::labs(v)), v < 0});
            }
        } while (ls >> tok);
    }
    if (!header_seen) throw std::invalid_argument("missing DIMACS header");
    if (!current.empty()) throw std::invalid_argument("unterminated clause at end of input");
    if (declared_clauses != f.num_clauses())
        throw std::invalid_argument("clause count mismatch: header says " +
                                    std::to_string(declared_clauses) + ", found " +
                                    std::to_string(f.num_clauses()));
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << " " << f.num_clauses() << "\n";
    for (const auto& c : f.clauses) {
        for (const Literal& l : c) out << (l.negated ? -l.variable : l.variable) << " ";
        out << "0\n";
    }
    return out.str();
}

KcnfReport validate_kcnf(const CnfFormula& f, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    KcnfReport rep;
    rep.valid = true;
    for (int i = 0; i < f.num_clauses(); ++i) {
        const Clause& c = f.clauses[i];
        rep.k_max = std::max(rep.k_max, static_cast<int>(c.size()));
        if (c.empty()) {
            rep.offenders.emplace_back(i, "empty clause");
            rep.valid = false;
            continue;
        }
        if (static_cast<int>(c.size()) > k) {
            rep.offenders.emplace_back(i, "width " + std::to_string(c.size()) +
                                              " exceeds k=" + std::to_string(k));
            rep.valid = false;
        }
        std::unordered_set<int> seen;
        for (const Literal& l : c) {
            if (l.variable < 1 || l.variable > f.num_vars) {
                rep.offenders.emplace_back(i, "variable out of range");
                rep.valid = false;
                break;
            }
            if (!seen.insert(l.variable).second) {
                rep.offenders.emplace_back(i, "duplicate variable " + std::to_string(l.variable));
                rep.valid = false;
                break;
            }
        }
    }
    return rep;
}

bool evaluate(const CnfFormula& f, uint64_t assignment) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (const Literal& l : c) {
            const bool v = ((assignment >> (f.num_vars - l.variable)) & 1ull) != 0;
            if (v != l.negated) { sat = true; break; }
        }
        if (!sat) return false;
    }
    return true;
}

bool evaluate(const CnfFormula& f, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != f.num_vars)
        throw std::invalid_argument("assignment length mismatch");
    uint64_t x = 0;
    for (int i = 0; i < f.num_vars; ++i)
        if (assignment[i]) x |= 1ull << (f.num_vars - 1 - i);
    return evaluate(f, x);
}

std::optional<uint64_t> brute_force_sat(const CnfFormula& f, int max_vars) {
    if (f.num_vars > max_vars)
        throw std::invalid_argument("brute_force_sat: " + std::to_string(f.num_vars) +
                                    " variables exceeds the enumeration guard of " +
                                    std::to_string(max_vars));
    const uint64_t total = 1ull << f.num_vars;
    for (uint64_t x = 0; x < total; ++x)
        if (evaluate(f, x)) return x;
    return std::nullopt;
}

std::string assignment_to_string(uint64_t assignment, int num_vars) {
    std::string s(num_vars, '0');
    for (int i = 0; i < num_vars; ++i)
        if ((assignment >> (num_vars - 1 - i)) & 1ull) s[i] = '1';
    return s;
}

}  // namespace satham
