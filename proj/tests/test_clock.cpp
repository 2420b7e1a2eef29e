#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "satham/clock.hpp"

using namespace satham;

namespace {

// op acting on a basis state of the clock register: basis states map to a
// single basis state (possibly scaled) or to zero for every table operator
std::pair<double, uint64_t> act_on_basis(const ClockOp& op, uint64_t basis, int width) {
    int col = 0;
    for (int q : op.support) col = (col << 1) | bit_of(basis, q, width);
    for (int r = 0; r < op.matrix.dim; ++r) {
        const cplx v = op.matrix.at(r, col);
        if (std::abs(v) > 1e-14) {
            uint64_t out = basis;
            const int k = static_cast<int>(op.support.size());
            for (int j = 0; j < k; ++j) {
                const uint64_t bit = 1ull << (width - 1 - op.support[j]);
                if ((r >> (k - 1 - j)) & 1) out |= bit; else out &= ~bit;
            }
            return {v.real(), out};
        }
    }
    return {0.0, 0};
}

}  // namespace

TEST_CASE("binomials") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 4) == 0);
}

TEST_CASE("revolving door paths visit every subset with one-exchange steps") {
    for (const auto& [a, d] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}, {6, 3}, {7, 2}}) {
        const JohnsonPath p = revolving_door_path(a, d);
        CHECK(p.length() == static_cast<int>(binomial(a, d)));
        p.validate();  // throws on any defect
        // deterministic output
        const JohnsonPath q = revolving_door_path(a, d);
        CHECK(p.subsets == q.subsets);
    }
    CHECK_THROWS(revolving_door_path(3, 3));
    CHECK_THROWS(revolving_door_path(3, 0));
}

TEST_CASE("pair map matches the published example rows") {
    CHECK(g_map(4, 3) == std::pair<int, int>{2, 3});
    CHECK(g_map(0, 3) == std::pair<int, int>{1, 0});
    CHECK(g_map(7, 3) == std::pair<int, int>{2, 0});
}

TEST_CASE("pair map is a bijection onto blocks x sweep positions") {
    for (int a : {2, 3, 4}) {
        for (int d : {2, 3}) {
            if (a < d) continue;
            const int64_t blocks = static_cast<int64_t>(binomial(a, d - 1));
            const int64_t T = blocks * (a + 1) - 1;
            std::set<std::pair<int, int>> seen;
            for (int64_t t = 0; t <= T; ++t) {
                const auto p = g_map(t, a);
                CHECK(p.first >= 1);
                CHECK(p.first <= blocks);
                CHECK(p.second >= 0);
                CHECK(p.second <= a);
                seen.insert(p);
            }
            CHECK(static_cast<int64_t>(seen.size()) == T + 1);
            // sweep direction alternates with the block parity
            for (int64_t t = 0; t < T; ++t) {
                const auto [t1, t2] = g_map(t, a);
                const auto [u1, u2] = g_map(t + 1, a);
                if (t1 == u1) CHECK(u2 - t2 == (t1 % 2 == 1 ? 1 : -1));
            }
        }
    }
}

TEST_CASE("legal states: unary encoding and the twelve-row dual table") {
    const ClockSchedule u = ClockSchedule::unary(4);
    CHECK(u.legal_state_string(2) == "1100");
    CHECK(u.legal_state_string(0) == "0000");
    CHECK(u.legal_state_string(4) == "1111");

    const ClockSchedule dual = ClockSchedule::dual(3, 2);
    REQUIRE(dual.T() == 11);
    const char* expected[12] = {
        "100000", "100100", "100110", "100111",
        "010111", "010110", "010100", "010000",
        "001000", "001100", "001110", "001111",
    };
    for (int64_t t = 0; t <= 11; ++t) CHECK(dual.legal_state_string(t) == expected[t]);
}

TEST_CASE("unary operators match their table rows") {
    const ClockSchedule u = ClockSchedule::unary(4);
    const ClockOp stay0 = u.op(ClockRole::Stay, 0);
    CHECK(stay0.support == std::vector<int>{0});
    CHECK(stay0.locality() == 1);
    const ClockOp stay2 = u.op(ClockRole::Stay, 2);
    CHECK(stay2.support == std::vector<int>{1, 2});
    CHECK(stay2.locality() == 2);
    const ClockOp add1 = u.op(ClockRole::Add, 1);
    CHECK(add1.locality() == 1);
    const ClockOp add2 = u.op(ClockRole::Add2, 1);
    CHECK(add2.locality() == 2);
}

TEST_CASE("dual operators carry the published locality") {
    for (const auto& [a, d] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {4, 3}}) {
        const ClockSchedule sched = ClockSchedule::dual(a, d);
        for (int64_t t = 0; t <= sched.T(); ++t) {
            const auto [t1, t2] = g_map(t, a);
            (void)t1;
            const ClockOp stay = sched.op(ClockRole::Stay, t);
            CHECK(stay.locality() == ((t2 == 0 || t2 == a) ? d : d + 1));
            if (t < sched.T()) {
                const ClockOp add = sched.op(ClockRole::Add, t);
                CHECK(add.locality() == (add.vertex_advance ? d + 1 : d));
            }
            if (t + 1 < sched.T() && sched.op_available(ClockRole::Add2, t)) {
                const ClockOp add2 = sched.op(ClockRole::Add2, t);
                CHECK(add2.locality() == d + 1);
            }
        }
    }
}

TEST_CASE("forward, backward and pause relations over all legal pairs") {
    std::vector<ClockSchedule> schedules;
    schedules.push_back(ClockSchedule::unary(6));
    schedules.push_back(ClockSchedule::johnson(4, 2));
    schedules.push_back(ClockSchedule::johnson(5, 2));
    schedules.push_back(ClockSchedule::dual(3, 2));
    schedules.push_back(ClockSchedule::dual(4, 3));

    for (const ClockSchedule& s : schedules) {
        for (int64_t t = 0; t <= s.T(); ++t) {
            // pause: projector keeps exactly its own legal state
            const ClockOp stay = s.op(ClockRole::Stay, t);
            for (int64_t tp = 0; tp <= s.T(); ++tp) {
                const auto [v, img] = act_on_basis(stay, s.legal_state(tp), s.width());
                if (tp == t) {
                    CHECK(v == doctest::Approx(1.0));
                    CHECK(img == s.legal_state(tp));
                } else {
                    CHECK((v == 0.0 || !s.is_legal_state(img)));
                }
            }
            if (t == s.T()) continue;
            const ClockOp add = s.op(ClockRole::Add, t);
            for (int64_t tp = 0; tp <= s.T(); ++tp) {
                const auto [v, img] = act_on_basis(add, s.legal_state(tp), s.width());
                if (tp == t) {
                    CHECK(v == doctest::Approx(1.0));
                    CHECK(img == s.legal_state(t + 1));
                } else {
                    CHECK((v == 0.0 || !s.is_legal_state(img)));
                }
            }
        }
    }
}

TEST_CASE("stabilizer spectrum: kernel at weight d, unit penalty below, at least one above") {
    for (const auto& [a, d] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 3}}) {
        const auto terms = build_h_stab(a, d);
        for (uint64_t y = 0; y < (1ull << a); ++y) {
            const int wt = __builtin_popcountll(y);
            const double v = diagonal_value(terms, y, a);
            if (wt == d) {
                CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
            } else if (wt < d) {
                CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
            } else {
                CHECK(v >= 1.0 - 1e-12);
            }
        }
    }
}

TEST_CASE("clock penalty: zero on legal states, at least one elsewhere") {
    std::vector<ClockSchedule> schedules;
    schedules.push_back(ClockSchedule::unary(3));
    schedules.push_back(ClockSchedule::unary(6));
    schedules.push_back(ClockSchedule::johnson(4, 2));
    schedules.push_back(ClockSchedule::dual(3, 2));
    schedules.push_back(ClockSchedule::dual(4, 3));
    for (const ClockSchedule& s : schedules) {
        const auto terms = s.h_clock_terms();
        std::set<uint64_t> legal;
        for (int64_t t = 0; t <= s.T(); ++t) legal.insert(s.legal_state(t));
        for (uint64_t y = 0; y < (1ull << s.width()); ++y) {
            const double v = diagonal_value(terms, y, s.width());
            if (legal.count(y)) {
                CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
            } else {
                CHECK(v >= 1.0 - 1e-12);
            }
        }
    }
}

TEST_CASE("unary 010 state triggers the order penalty") {
    const ClockSchedule s = ClockSchedule::unary(3);
    CHECK(diagonal_value(s.h_clock_terms(), 0b010, 3) >= 1.0 - 1e-12);
}

TEST_CASE("conditions hold for every published operator") {
    std::vector<ClockSchedule> schedules;
    schedules.push_back(ClockSchedule::unary(4));
    schedules.push_back(ClockSchedule::unary(10));
    schedules.push_back(ClockSchedule::johnson(4, 2));
    schedules.push_back(ClockSchedule::dual(3, 2));
    schedules.push_back(ClockSchedule::dual(4, 2));
    schedules.push_back(ClockSchedule::dual(4, 3));
    for (const ClockSchedule& s : schedules) {
        const ConditionReport rep = s.verify_conditions();
        CHECK(rep.ok);
        CHECK(rep.violations.empty());
        CHECK(rep.checks > 0);
        if (s.variant() != ClockVariant::Dual) CHECK(rep.excluded.empty());
    }
}

TEST_CASE("a corrupted operator is reported with its role and step") {
    const ClockSchedule s = ClockSchedule::unary(4);
    ClockOp bad = s.op(ClockRole::Add, 1);
    bad.support = {3};  // wrong target qubit
    ConditionReport rep;
    check_op_against_conditions(s, bad, ClockRole::Add, 1, rep);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations[0].role == ClockRole::Add);
    CHECK(rep.violations[0].t == 1);
}

TEST_CASE("dual schedule rejects out-of-table requests") {
    const ClockSchedule s = ClockSchedule::dual(4, 2);
    // find an even block slot with no add2 row
    bool found = false;
    for (int64_t t = 0; t + 2 <= s.T(); ++t) {
        const auto [t1, t2] = g_map(t, 4);
        if (t1 % 2 == 0 && t2 == 4) {
            CHECK_FALSE(s.op_available(ClockRole::Add2, t));
            CHECK_THROWS(s.op(ClockRole::Add2, t));
            found = true;
            break;
        }
    }
    CHECK(found);
    CHECK_THROWS(s.op(ClockRole::Stay, s.T() + 1));
    CHECK_THROWS(s.op(ClockRole::Add, s.T()));
}

TEST_CASE("johnson add2 jumps two path steps") {
    const ClockSchedule s = ClockSchedule::johnson(5, 2);
    for (int64_t t = 0; t + 2 <= s.T(); ++t) {
        const ClockOp op = s.op(ClockRole::Add2, t);
        const auto [v, img] = act_on_basis(op, s.legal_state(t), s.width());
        CHECK(v == doctest::Approx(1.0));
        CHECK(img == s.legal_state(t + 2));
    }
}
