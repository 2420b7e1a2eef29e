#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace satham {

using cplx = std::complex<double>;

// Small dense complex matrix, row-major. Used for gate blocks and local
// Hamiltonian terms; dimensions stay at 2^k for k-qubit supports.
struct CMat {
    int dim = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(int d) : dim(d), a(static_cast<size_t>(d) * d, cplx(0.0, 0.0)) {}

    static CMat identity(int d);
    static CMat zero(int d) { return CMat(d); }

    cplx& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

    CMat mul(const CMat& rhs) const;
    CMat adjoint() const;
    CMat scaled(cplx s) const;
    CMat plus(const CMat& rhs) const;
    CMat minus(const CMat& rhs) const;

    // Kronecker product; `hi` owns the more significant bits of the block index.
    static CMat kron(const CMat& hi, const CMat& lo);

    bool is_hermitian(double tol) const;
    bool is_diagonal(double tol) const;
    double max_abs_diff(const CMat& rhs) const;
    double max_abs() const;
};

// Statevector over `num_qubits` qubits. Qubit 0 is the most significant bit
// of the amplitude index, a convention fixed across the whole library.
struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amp;

    StateVector() = default;
    explicit StateVector(int n)
        : num_qubits(n), amp(size_t(1) << n, cplx(0.0, 0.0)) {}

    static StateVector basis(int n, uint64_t index);
    static StateVector zero_state(int n) { return basis(n, 0); }

    size_t dim() const { return amp.size(); }
    double norm() const;
    void normalize();
};

inline int bit_of(uint64_t index, int qubit, int num_qubits) {
    return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1ull);
}

cplx inner(const StateVector& a, const StateVector& b);
double distance(const StateVector& a, const StateVector& b);

// In-place application of an operator block on the given qubits.
// support[0] is the most significant bit of the block index.
void apply_local(StateVector& s, const std::vector<int>& support, const CMat& m);

// out += scale * (m on support) applied to `in`. Shapes must match.
void accumulate_local(const StateVector& in, StateVector& out,
                      const std::vector<int>& support, const CMat& m, cplx scale);

}  // namespace satham
