#include "satham/linalg.hpp"

#include <cmath>

namespace satham {

CMat CMat::identity(int d) {
    CMat m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

CMat CMat::mul(const CMat& rhs) const {
    if (dim != rhs.dim) throw std::invalid_argument("CMat::mul: dimension mismatch");
    CMat out(dim);
    for (int r = 0; r < dim; ++r) {
        for (int k = 0; k < dim; ++k) {
            const cplx v = at(r, k);
            if (v == cplx(0.0, 0.0)) continue;
            for (int c = 0; c < dim; ++c) out.at(r, c) += v * rhs.at(k, c);
        }
    }
    return out;
}

CMat CMat::adjoint() const {
    CMat out(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
}

CMat CMat::scaled(cplx s) const {
    CMat out = *this;
    for (auto& v : out.a) v *= s;
    return out;
}

CMat CMat::plus(const CMat& rhs) const {
    if (dim != rhs.dim) throw std::invalid_argument("CMat::plus: dimension mismatch");
    CMat out = *this;
    for (size_t i = 0; i < a.size(); ++i) out.a[i] += rhs.a[i];
    return out;
}

CMat CMat::minus(const CMat& rhs) const {
    if (dim != rhs.dim) throw std::invalid_argument("CMat::minus: dimension mismatch");
    CMat out = *this;
    for (size_t i = 0; i < a.size(); ++i) out.a[i] -= rhs.a[i];
    return out;
}

CMat CMat::kron(const CMat& hi, const CMat& lo) {
    CMat out(hi.dim * lo.dim);
    for (int r1 = 0; r1 < hi.dim; ++r1)
        for (int c1 = 0; c1 < hi.dim; ++c1) {
            const cplx v = hi.at(r1, c1);
            if (v == cplx(0.0, 0.0)) continue;
            for (int r2 = 0; r2 < lo.dim; ++r2)
                for (int c2 = 0; c2 < lo.dim; ++c2)
                    out.at(r1 * lo.dim + r2, c1 * lo.dim + c2) = v * lo.at(r2, c2);
        }
    return out;
}

bool CMat::is_hermitian(double tol) const {
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    return true;
}

bool CMat::is_diagonal(double tol) const {
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            if (r != c && std::abs(at(r, c)) > tol) return false;
    return true;
}

double CMat::max_abs_diff(const CMat& rhs) const {
    if (dim != rhs.dim) return 1e300;
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - rhs.a[i]));
    return m;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

StateVector StateVector::basis(int n, uint64_t index) {
    StateVector s(n);
    s.amp[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const auto& v : amp) n2 += std::norm(v);
    return std::sqrt(n2);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("cannot normalize zero vector");
    for (auto& v : amp) v /= n;
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.num_qubits != b.num_qubits) throw std::invalid_argument("inner: width mismatch");
    cplx s(0.0, 0.0);
    for (size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

double distance(const StateVector& a, const StateVector& b) {
    if (a.num_qubits != b.num_qubits) throw std::invalid_argument("distance: width mismatch");
    double d2 = 0.0;
    for (size_t i = 0; i < a.amp.size(); ++i) d2 += std::norm(a.amp[i] - b.amp[i]);
    return std::sqrt(d2);
}

namespace {

struct SupportPlan {
    int k = 0;
    uint64_t smask = 0;
    std::vector<uint64_t> spread;  // block index -> bit pattern in the full index
};

SupportPlan plan_support(const std::vector<int>& support, int num_qubits) {
    SupportPlan p;
    p.k = static_cast<int>(support.size());
    std::vector<int> shifts(p.k);
    for (int j = 0; j < p.k; ++j) {
        const int q = support[j];
        if (q < 0 || q >= num_qubits) throw std::out_of_range("support qubit out of range");
        shifts[j] = num_qubits - 1 - q;
        const uint64_t bit = 1ull << shifts[j];
        if (p.smask & bit) throw std::invalid_argument("duplicate qubit in support");
        p.smask |= bit;
    }
    const int d = 1 << p.k;
    p.spread.assign(d, 0);
    for (int b = 0; b < d; ++b) {
        uint64_t v = 0;
        for (int j = 0; j < p.k; ++j)
            if ((b >> (p.k - 1 - j)) & 1) v |= 1ull << shifts[j];
        p.spread[b] = v;
    }
    return p;
}

}  // namespace

void apply_local(StateVector& s, const std::vector<int>& support, const CMat& m) {
    const SupportPlan p = plan_support(support, s.num_qubits);
    const int d = 1 << p.k;
    if (m.dim != d) throw std::invalid_argument("apply_local: matrix/support mismatch");
    std::vector<cplx> buf(d);
    const uint64_t total = s.amp.size();
    for (uint64_t base = 0; base < total; ++base) {
        if (base & p.smask) continue;
        for (int b = 0; b < d; ++b) buf[b] = s.amp[base | p.spread[b]];
        for (int r = 0; r < d; ++r) {
            cplx acc(0.0, 0.0);
            for (int c = 0; c < d; ++c) acc += m.at(r, c) * buf[c];
            s.amp[base | p.spread[r]] = acc;
        }
    }
}

void accumulate_local(const StateVector& in, StateVector& out,
                      const std::vector<int>& support, const CMat& m, cplx scale) {
    if (in.num_qubits != out.num_qubits)
        throw std::invalid_argument("accumulate_local: width mismatch");
    const SupportPlan p = plan_support(support, in.num_qubits);
    const int d = 1 << p.k;
    if (m.dim != d) throw std::invalid_argument("accumulate_local: matrix/support mismatch");
    std::vector<cplx> buf(d);
    const uint64_t total = in.amp.size();
    for (uint64_t base = 0; base < total; ++base) {
        if (base & p.smask) continue;
        for (int b = 0; b < d; ++b) buf[b] = in.amp[base | p.spread[b]];
        for (int r = 0; r < d; ++r) {
            cplx acc(0.0, 0.0);
            for (int c = 0; c < d; ++c) acc += m.at(r, c) * buf[c];
            out.amp[base | p.spread[r]] += scale * acc;
        }
    }
}

}  // namespace satham
