#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "satham/cnf.hpp"
#include "satham/rng.hpp"

using namespace satham;

TEST_CASE("dimacs parse basics") {
    const auto f = parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n2 3 0\n");
    CHECK(f.num_vars == 3);
    CHECK(f.num_clauses() == 2);
    CHECK(f.clauses[0][0].variable == 1);
    CHECK_FALSE(f.clauses[0][0].negated);
    CHECK(f.clauses[0][1].variable == 2);
    CHECK(f.clauses[0][1].negated);
}

TEST_CASE("dimacs rejects a variable and its negation in one clause") {
    CHECK_THROWS(parse_dimacs("p cnf 1 1\n1 -1 0\n"));
}

TEST_CASE("dimacs rejects same-sign duplicates and empty clauses") {
    CHECK_THROWS(parse_dimacs("p cnf 2 1\n1 1 0\n"));
    CHECK_THROWS(parse_dimacs("p cnf 2 1\n0\n"));
    CHECK_THROWS(parse_dimacs("p cnf 2 2\n1 0\n"));     // count mismatch
    CHECK_THROWS(parse_dimacs("p cnf 2 1\n3 0\n"));     // out of range
    CHECK_THROWS(parse_dimacs("p cnf 2 1\n1 2\n"));     // unterminated
}

TEST_CASE("empty clause list is vacuously satisfiable") {
    const auto f = parse_dimacs("p cnf 2 0\n");
    CHECK(f.num_clauses() == 0);
    CHECK(evaluate(f, 0b00u));
    CHECK(evaluate(f, 0b11u));
    const auto model = brute_force_sat(f);
    REQUIRE(model.has_value());
    CHECK(*model == 0);
}

TEST_CASE("kcnf validation") {
    const auto f = parse_dimacs("p cnf 4 2\n1 2 3 0\n-1 4 0\n");
    CHECK(validate_kcnf(f, 3).valid);
    CHECK(validate_kcnf(f, 5).valid);
    const auto rep = validate_kcnf(f, 2);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.offenders.size() == 1);
    CHECK(rep.offenders[0].first == 0);
    CHECK(rep.k_max == 3);
}

TEST_CASE("evaluate against truth table") {
    const auto f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n");
    // Phi = (x1 or x2) and (not x1 or x2): satisfied exactly when x2 = 1
    CHECK_FALSE(evaluate(f, 0b00u));
    CHECK(evaluate(f, 0b01u));
    CHECK_FALSE(evaluate(f, 0b10u));
    CHECK(evaluate(f, 0b11u));
}

TEST_CASE("brute force returns the smallest model") {
    const auto f = parse_dimacs("p cnf 2 1\n1 2 0\n");
    const auto model = brute_force_sat(f);
    REQUIRE(model.has_value());
    CHECK(assignment_to_string(*model, 2) == "01");

    const auto unsat = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
    CHECK_FALSE(brute_force_sat(unsat).has_value());
}

TEST_CASE("brute force guard") {
    CnfFormula f;
    f.num_vars = 31;
    CHECK_THROWS(brute_force_sat(f));
}

TEST_CASE("round trip and model consistency on random formulas") {
    auto gen = substream(17, 0, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 7);
        const int m = 1 + static_cast<int>(gen() % 10);
        CnfFormula f;
        f.num_vars = n;
        for (int i = 0; i < m; ++i) {
            Clause c;
            const int k = 1 + static_cast<int>(gen() % std::min(3, n));
            std::vector<int> vars;
            while (static_cast<int>(vars.size()) < k) {
                const int v = 1 + static_cast<int>(gen() % n);
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
            }
            for (int v : vars) c.push_back(Literal{v, (gen() & 1) != 0});
            f.clauses.push_back(c);
        }
        const auto f2 = parse_dimacs(to_dimacs(f));
        CHECK(to_dimacs(f2) == to_dimacs(f));

        const auto model = brute_force_sat(f);
        if (model) {
            CHECK(evaluate(f, *model));
        } else {
            for (uint64_t x = 0; x < (1ull << n); ++x) CHECK_FALSE(evaluate(f, x));
        }
    }
}
