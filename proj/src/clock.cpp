#include "satham/clock.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace satham {

uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void JohnsonPath::validate() const {
    if (d < 1 || d >= a) throw std::invalid_argument("JohnsonPath: need 1 <= d < a");
    if (static_cast<uint64_t>(subsets.size()) != binomial(a, d))
        throw std::logic_error("JohnsonPath: wrong vertex count");
    std::vector<std::vector<int>> sorted = subsets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::logic_error("JohnsonPath: repeated subset");
    for (size_t i = 0; i + 1 < subsets.size(); ++i) {
        std::vector<int> inter;
        std::set_intersection(subsets[i].begin(), subsets[i].end(),
                              subsets[i + 1].begin(), subsets[i + 1].end(),
                              std::back_inserter(inter));
        if (static_cast<int>(inter.size()) != d - 1)
            throw std::logic_error("JohnsonPath: consecutive subsets are not adjacent");
    }
}

namespace {

// R(n,k) = R(n-1,k) followed by reversed R(n-1,k-1) with n appended; the
// seam is a single exchange, so the whole listing is too.
std::vector<std::vector<int>> revolving_door(int n, int k) {
    if (k == 0) return {{}};
    if (k == n) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i + 1;
        return {all};
    }
    auto head = revolving_door(n - 1, k);
    auto tail = revolving_door(n - 1, k - 1);
    std::reverse(tail.begin(), tail.end());
    for (auto& s : tail) s.push_back(n);
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

JohnsonPath revolving_door_path(int a, int d) {
    if (d < 1 || d >= a) throw std::invalid_argument("revolving_door_path: need 1 <= d < a");
    JohnsonPath p;
    p.a = a;
    p.d = d;
    p.subsets = revolving_door(a, d);
    for (auto& s : p.subsets) std::sort(s.begin(), s.end());
    p.validate();
    return p;
}

std::pair<int, int> g_map(int64_t t, int a) {
    if (t < 0) throw std::out_of_range("g_map: negative t");
    const int64_t m = t % (2 * a + 2);
    const int t1 = static_cast<int>(1 + t / (a + 1));
    const int t2 = static_cast<int>(std::min(m, 2 * a + 1 - m));
    return {t1, t2};
}

const char* clock_role_name(ClockRole r) {
    switch (r) {
        case ClockRole::Stay: return "stay";
        case ClockRole::Add: return "add";
        case ClockRole::Add2: return "add2";
    }
    return "?";
}

// ---------------------------------------------------------------------------

ClockSchedule ClockSchedule::unary(int64_t T) {
    if (T < 1 || T > 62) throw std::invalid_argument("unary clock: need 1 <= T <= 62");
    ClockSchedule s;
    s.variant_ = ClockVariant::Unary;
    s.T_ = T;
    s.width_ = static_cast<int>(T);
    s.build_legal_states();
    return s;
}

ClockSchedule ClockSchedule::johnson(int a, int d) {
    ClockSchedule s;
    s.variant_ = ClockVariant::Johnson;
    s.a_ = a;
    s.d_ = d;
    s.path_ = revolving_door_path(a, d);
    s.T_ = s.path_.length() - 1;
    s.width_ = a;
    s.build_legal_states();
    return s;
}

ClockSchedule ClockSchedule::dual(int a, int d) {
    if (d < 2) throw std::invalid_argument("dual clock: d must be >= 2 (use unary for d=1)");
    if (a < d) throw std::invalid_argument("dual clock: need a >= d");
    if (2 * a > 62) throw std::invalid_argument("dual clock: register too wide");
    ClockSchedule s;
    s.variant_ = ClockVariant::Dual;
    s.a_ = a;
    s.d_ = d;
    s.path_ = revolving_door_path(a, d - 1);
    s.T_ = static_cast<int64_t>(binomial(a, d - 1)) * (a + 1) - 1;
    s.width_ = 2 * a;
    s.build_legal_states();
    return s;
}

namespace {

uint64_t subset_mask(const std::vector<int>& subset, int offset, int width) {
    uint64_t m = 0;
    for (int e : subset) m |= 1ull << (width - 1 - (offset + e - 1));
    return m;
}

uint64_t unary_mask(int t2, int offset, int width) {
    uint64_t m = 0;
    for (int p = 1; p <= t2; ++p) m |= 1ull << (width - 1 - (offset + p - 1));
    return m;
}

}  // namespace

void ClockSchedule::build_legal_states() {
    legal_.clear();
    legal_.reserve(static_cast<size_t>(T_ + 1));
    for (int64_t t = 0; t <= T_; ++t) {
        uint64_t mask = 0;
        switch (variant_) {
            case ClockVariant::Unary:
                mask = unary_mask(static_cast<int>(t), 0, width_);
                break;
            case ClockVariant::Johnson:
                mask = subset_mask(path_.subsets[t], 0, width_);
                break;
            case ClockVariant::Dual: {
                const auto [t1, t2] = g_map(t, a_);
                mask = subset_mask(path_.subsets[t1 - 1], 0, width_) |
                       unary_mask(t2, a_, width_);
                break;
            }
        }
        legal_.push_back(mask);
    }
    auto copy = legal_;
    std::sort(copy.begin(), copy.end());
    if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
        throw std::logic_error("clock schedule produced repeated legal states");
}

uint64_t ClockSchedule::legal_state(int64_t t) const {
    if (t < 0 || t > T_) throw std::out_of_range("legal_state: t out of range");
    return legal_[static_cast<size_t>(t)];
}

std::string ClockSchedule::legal_state_string(int64_t t) const {
    const uint64_t m = legal_state(t);
    std::string s(static_cast<size_t>(width_), '0');
    for (int q = 0; q < width_; ++q)
        if ((m >> (width_ - 1 - q)) & 1ull) s[static_cast<size_t>(q)] = '1';
    return s;
}

bool ClockSchedule::is_legal_state(uint64_t basis, int64_t* t_out) const {
    for (int64_t t = 0; t <= T_; ++t) {
        if (legal_[static_cast<size_t>(t)] == basis) {
            if (t_out) *t_out = t;
            return true;
        }
    }
    return false;
}

namespace {

// |ket><bra| block over the listed qubits: per-qubit (ket_bit, bra_bit).
ClockOp ketbra_op(const std::vector<std::pair<int, std::pair<int, int>>>& factors) {
    std::vector<std::pair<int, std::pair<int, int>>> sorted = factors;
    std::sort(sorted.begin(), sorted.end());
    ClockOp op;
    int ket = 0, bra = 0;
    const int k = static_cast<int>(sorted.size());
    for (int j = 0; j < k; ++j) {
        op.support.push_back(sorted[j].first);
        ket = (ket << 1) | sorted[j].second.first;
        bra = (bra << 1) | sorted[j].second.second;
    }
    op.matrix = CMat(1 << k);
    op.matrix.at(ket, bra) = 1.0;
    return op;
}

}  // namespace

bool ClockSchedule::op_available(ClockRole role, int64_t t) const {
    switch (role) {
        case ClockRole::Stay: if (t < 0 || t > T_) return false; break;
        case ClockRole::Add: if (t < 0 || t > T_ - 1) return false; break;
        case ClockRole::Add2: if (t < 0 || t > T_ - 2) return false; break;
    }
    if (variant_ != ClockVariant::Dual || role != ClockRole::Add2) return true;
    const auto [t1, t2] = g_map(t, a_);
    // the published dual implementation has no add2 row for these slots
    if (t1 % 2 == 0 && t2 >= 2 && (t2 == a_ - 1 || t2 == a_)) return false;
    return true;
}

ClockOp ClockSchedule::op(ClockRole role, int64_t t) const {
    const int64_t max_t = role == ClockRole::Stay ? T_ : (role == ClockRole::Add ? T_ - 1 : T_ - 2);
    if (t < 0 || t > max_t)
        throw std::out_of_range(std::string(clock_role_name(role)) + ": t out of range");

    auto finish = [&](ClockOp op, std::string tag, bool advance) {
        op.role = role;
        op.t = t;
        op.tag = std::move(tag);
        op.vertex_advance = advance;
        return op;
    };

    if (variant_ == ClockVariant::Unary) {
        const int T = static_cast<int>(T_);
        const int ti = static_cast<int>(t);
        switch (role) {
            case ClockRole::Stay:
                if (ti == 0) return finish(ketbra_op({{0, {0, 0}}}), "stay:head", false);
                if (ti == T) return finish(ketbra_op({{T - 1, {1, 1}}}), "stay:tail", false);
                return finish(ketbra_op({{ti - 1, {1, 1}}, {ti, {0, 0}}}), "stay:interior", false);
            case ClockRole::Add:
                return finish(ketbra_op({{ti, {1, 0}}}), "add", false);
            case ClockRole::Add2:
                return finish(ketbra_op({{ti, {1, 0}}, {ti + 1, {1, 0}}}), "add2", false);
        }
    }

    if (variant_ == ClockVariant::Johnson) {
        const auto& cur = path_.subsets[static_cast<size_t>(t)];
        auto proj = [&](const std::vector<int>& s) {
            std::vector<std::pair<int, std::pair<int, int>>> f;
            for (int e : s) f.push_back({e - 1, {1, 1}});
            return ketbra_op(f);
        };
        auto hop = [&](const std::vector<int>& from, const std::vector<int>& to) {
            std::vector<std::pair<int, std::pair<int, int>>> f;
            for (int e : from) {
                const bool kept = std::binary_search(to.begin(), to.end(), e);
                f.push_back({e - 1, {kept ? 1 : 0, 1}});
            }
            for (int e : to)
                if (!std::binary_search(from.begin(), from.end(), e))
                    f.push_back({e - 1, {1, 0}});
            return ketbra_op(f);
        };
        switch (role) {
            case ClockRole::Stay:
                return finish(proj(cur), "pause", false);
            case ClockRole::Add:
                return finish(hop(cur, path_.subsets[static_cast<size_t>(t + 1)]), "forward", true);
            case ClockRole::Add2:
                return finish(hop(cur, path_.subsets[static_cast<size_t>(t + 2)]), "forward2", true);
        }
    }

    // dual schedule
    const auto [t1, t2] = g_map(t, a_);
    const bool odd = (t1 % 2) == 1;
    const int C = path_.length();

    auto vertex_proj = [&](int v) {
        std::vector<std::pair<int, std::pair<int, int>>> f;
        for (int e : path_.subsets[static_cast<size_t>(v - 1)]) f.push_back({e - 1, {1, 1}});
        return f;
    };
    auto vertex_adv = [&](int v) {
        if (v > C) throw std::out_of_range("dual clock: vertex advance past the last subset");
        const auto& from = path_.subsets[static_cast<size_t>(v - 2)];
        const auto& to = path_.subsets[static_cast<size_t>(v - 1)];
        std::vector<std::pair<int, std::pair<int, int>>> f;
        for (int e : from) {
            const bool kept = std::binary_search(to.begin(), to.end(), e);
            f.push_back({e - 1, {kept ? 1 : 0, 1}});
        }
        for (int e : to)
            if (!std::binary_search(from.begin(), from.end(), e))
                f.push_back({e - 1, {1, 0}});
        return f;
    };
    auto upos = [&](int p) { return a_ + p - 1; };  // unary position p (1-based)

    auto with_unary = [&](std::vector<std::pair<int, std::pair<int, int>>> f,
                          std::initializer_list<std::pair<int, std::pair<int, int>>> u) {
        for (const auto& x : u) f.push_back({upos(x.first), x.second});
        return ketbra_op(f);
    };

    switch (role) {
        case ClockRole::Stay: {
            if (t2 == 0) return finish(with_unary(vertex_proj(t1), {{1, {0, 0}}}), "stay:rest", false);
            if (t2 == a_) return finish(with_unary(vertex_proj(t1), {{a_, {1, 1}}}), "stay:full", false);
            return finish(with_unary(vertex_proj(t1), {{t2, {1, 1}}, {t2 + 1, {0, 0}}}),
                          "stay:interior", false);
        }
        case ClockRole::Add: {
            if (odd) {
                if (t2 <= a_ - 1)
                    return finish(with_unary(vertex_proj(t1), {{t2 + 1, {1, 0}}}), "add:up", false);
                return finish(with_unary(vertex_adv(t1 + 1), {{a_, {1, 1}}}), "add:advance", true);
            }
            if (t2 >= 1)
                return finish(with_unary(vertex_proj(t1), {{t2, {0, 1}}}), "add:down", false);
            return finish(with_unary(vertex_adv(t1 + 1), {{1, {0, 0}}}), "add:advance", true);
        }
        case ClockRole::Add2: {
            if (odd) {
                if (t2 <= a_ - 2)
                    return finish(with_unary(vertex_proj(t1), {{t2 + 1, {1, 0}}, {t2 + 2, {1, 0}}}),
                                  "add2:up", false);
                if (t2 == a_ - 1)
                    return finish(with_unary(vertex_adv(t1 + 1), {{a_, {1, 0}}}), "add2:advance", true);
                return finish(with_unary(vertex_adv(t1 + 1), {{a_, {0, 1}}}), "add2:advance", true);
            }
            if (t2 >= 2 && t2 <= a_ - 2)
                return finish(with_unary(vertex_proj(t1), {{t2 - 1, {0, 1}}, {t2, {0, 1}}}),
                              "add2:down", false);
            if (t2 == 1)
                return finish(with_unary(vertex_adv(t1 + 1), {{1, {0, 1}}}), "add2:advance", true);
            if (t2 == 0)
                return finish(with_unary(vertex_adv(t1 + 1), {{1, {1, 0}}}), "add2:advance", true);
            throw std::invalid_argument("dual clock: add2 has no implementation at t=" +
                                        std::to_string(t) + " (t1=" + std::to_string(t1) +
                                        " even, t2=" + std::to_string(t2) + ")");
        }
    }
    throw std::logic_error("unreachable clock role");
}

std::vector<ClockTerm> build_h_stab(int a, int d) {
    if (d < 1 || d >= a) throw std::invalid_argument("build_h_stab: need 1 <= d < a");
    std::vector<ClockTerm> terms;
    const double big = static_cast<double>(binomial(a, d));

    std::vector<int> idx;
    auto enumerate = [&](int size, auto&& emit) {
        idx.assign(size, 0);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            emit(idx);
            int i = size - 1;
            while (i >= 0 && idx[i] == a - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    };

    // penalty for d+1 ones anywhere
    enumerate(d + 1, [&](const std::vector<int>& s) {
        ClockTerm t;
        t.support = s;
        t.coefficient = big;
        t.matrix = CMat(1 << (d + 1));
        t.matrix.at((1 << (d + 1)) - 1, (1 << (d + 1)) - 1) = 1.0;
        terms.push_back(std::move(t));
    });
    // penalty for any d-subset not fully occupied
    enumerate(d, [&](const std::vector<int>& s) {
        ClockTerm t;
        t.support = s;
        t.coefficient = 1.0;
        t.matrix = CMat::identity(1 << d);
        t.matrix.at((1 << d) - 1, (1 << d) - 1) = 0.0;
        terms.push_back(std::move(t));
    });
    // constant shift
    ClockTerm shift;
    shift.support = {0};
    shift.coefficient = big - 1.0;
    shift.matrix = CMat::identity(2).scaled(-1.0);
    terms.push_back(std::move(shift));
    return terms;
}

std::vector<ClockTerm> ClockSchedule::h_clock_terms() const {
    std::vector<ClockTerm> terms;
    auto unary_pairs = [&](int offset, int count) {
        for (int i = 1; i <= count; ++i)
            for (int j = i + 1; j <= count; ++j) {
                ClockTerm t;
                t.support = {offset + i - 1, offset + j - 1};
                t.coefficient = 1.0;
                t.matrix = CMat(4);
                t.matrix.at(1, 1) = 1.0;  // |01><01| on (i, j)
                terms.push_back(std::move(t));
            }
    };
    switch (variant_) {
        case ClockVariant::Unary:
            unary_pairs(0, static_cast<int>(T_));
            break;
        case ClockVariant::Johnson:
            terms = build_h_stab(a_, d_);
            break;
        case ClockVariant::Dual: {
            terms = build_h_stab(a_, d_ - 1);
            unary_pairs(a_, a_);
            break;
        }
    }
    return terms;
}

double diagonal_value(const std::vector<ClockTerm>& terms, uint64_t basis, int width) {
    double v = 0.0;
    for (const ClockTerm& t : terms) {
        int block = 0;
        for (int q : t.support) block = (block << 1) | bit_of(basis, q, width);
        v += t.coefficient * t.matrix.at(block, block).real();
    }
    return v;
}

void check_op_against_conditions(const ClockSchedule& sched, const ClockOp& op,
                                 ClockRole role, int64_t t, ConditionReport& rep) {
    const int width = sched.width();
    const int64_t target = t + (role == ClockRole::Stay ? 0 : (role == ClockRole::Add ? 1 : 2));

    auto support_block = [&](uint64_t basis) {
        int block = 0;
        for (int q : op.support) block = (block << 1) | bit_of(basis, q, width);
        return block;
    };
    auto replace_block = [&](uint64_t basis, int block) {
        uint64_t out = basis;
        const int k = static_cast<int>(op.support.size());
        for (int j = 0; j < k; ++j) {
            const uint64_t bit = 1ull << (width - 1 - op.support[j]);
            if ((block >> (k - 1 - j)) & 1) out |= bit; else out &= ~bit;
        }
        return out;
    };

    // action on the designated legal state
    {
        const uint64_t gt = sched.legal_state(t);
        const uint64_t want = sched.legal_state(target);
        const int col = support_block(gt);
        bool exact = true;
        for (int r = 0; r < op.matrix.dim; ++r) {
            const cplx v = op.matrix.at(r, col);
            const cplx expect = (replace_block(gt, r) == want) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            if (std::abs(v - expect) > 1e-12) { exact = false; break; }
        }
        rep.checks += 1;
        if (!exact) {
            rep.ok = false;
            rep.violations.push_back(
                {role, t, -1, "operator does not map the step-" + std::to_string(t) +
                                  " state to the step-" + std::to_string(target) + " state"});
        }
    }

    // no other legal state may be carried back into the legal subspace
    for (int64_t tp = 0; tp <= sched.T(); ++tp) {
        if (tp == t) continue;
        const uint64_t g = sched.legal_state(tp);
        const int col = support_block(g);
        for (int r = 0; r < op.matrix.dim; ++r) {
            if (std::abs(op.matrix.at(r, col)) < 1e-14) continue;
            const uint64_t image = replace_block(g, r);
            rep.checks += 1;
            if (sched.is_legal_state(image)) {
                rep.ok = false;
                rep.violations.push_back(
                    {role, t, static_cast<int64_t>(tp),
                     "legal state at step " + std::to_string(tp) +
                         " is mapped onto the legal subspace"});
            }
        }
    }
}

ConditionReport ClockSchedule::verify_conditions() const {
    ConditionReport rep;
    for (ClockRole role : {ClockRole::Stay, ClockRole::Add, ClockRole::Add2}) {
        const int64_t max_t = role == ClockRole::Stay ? T_ : (role == ClockRole::Add ? T_ - 1 : T_ - 2);
        for (int64_t t = 0; t <= max_t; ++t) {
            if (!op_available(role, t)) {
                rep.excluded.push_back({role, t});
                continue;
            }
            check_op_against_conditions(*this, op(role, t), role, t, rep);
        }
    }
    return rep;
}

}  // namespace satham
