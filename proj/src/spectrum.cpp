#include "satham/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "satham/rng.hpp"

namespace satham {

void Thresholds::validate() const {
    if (!(e_no > e_yes)) throw std::invalid_argument("Thresholds: need e_no > e_yes");
}

const char* lh_answer_name(LhAnswer a) {
    switch (a) {
        case LhAnswer::Yes: return "YES";
        case LhAnswer::No: return "NO";
        case LhAnswer::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

namespace {

std::vector<double> dense_spectrum(const LocalHamiltonian& h) {
    if (h.width() > kDenseGuardQubits)
        throw std::invalid_argument("dense spectrum: width " + std::to_string(h.width()) +
                                    " exceeds the dense guard");
    if (h.is_diagonal()) {
        std::vector<double> diag = dense_diagonal(h);
        std::sort(diag.begin(), diag.end());
        return diag;
    }
    const CMat m = to_dense(h);
    // detect a real symmetric matrix; halves the eigensolver cost
    bool real = true;
    for (const cplx& v : m.a)
        if (std::abs(v.imag()) > 1e-14) { real = false; break; }
    std::vector<double> ev(static_cast<size_t>(m.dim));
    if (real) {
        Eigen::MatrixXd e(m.dim, m.dim);
        for (int r = 0; r < m.dim; ++r)
            for (int c = 0; c < m.dim; ++c) e(r, c) = m.at(r, c).real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
        for (int i = 0; i < m.dim; ++i) ev[static_cast<size_t>(i)] = es.eigenvalues()(i);
    } else {
        Eigen::MatrixXcd e(m.dim, m.dim);
        for (int r = 0; r < m.dim; ++r)
            for (int c = 0; c < m.dim; ++c) e(r, c) = m.at(r, c);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
        for (int i = 0; i < m.dim; ++i) ev[static_cast<size_t>(i)] = es.eigenvalues()(i);
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

SpectrumReport ground_energy_dense(const LocalHamiltonian& h, bool keep_eigenvalues) {
    SpectrumReport rep;
    rep.method = "dense";
    std::vector<double> ev = dense_spectrum(h);
    rep.lambda = ev.empty() ? 0.0 : ev.front();
    rep.residual = 0.0;
    if (keep_eigenvalues) rep.eigenvalues = std::move(ev);
    return rep;
}

SpectrumReport ground_energy_lanczos(const LocalHamiltonian& h, int max_iters, double tol,
                                     uint64_t seed) {
    if (h.width() > kLanczosGuardQubits)
        throw std::invalid_argument("lanczos: width exceeds the memory guard of " +
                                    std::to_string(kLanczosGuardQubits) + " qubits");
    const uint64_t dim = 1ull << h.width();
    auto rng = substream(seed, 0x4c414e, 0);

    std::vector<StateVector> basis;
    StateVector v(h.width());
    for (auto& x : v.amp) x = cplx(uniform_pm1(rng), uniform_pm1(rng));
    v.normalize();
    basis.push_back(v);

    std::vector<double> alpha, beta;  // tridiagonal entries
    SpectrumReport rep;
    rep.method = "lanczos";

    double lambda = 0.0;
    Eigen::VectorXd ground_in_krylov;
    const int iter_cap = std::min<int64_t>(max_iters, static_cast<int64_t>(dim));
    for (int it = 0; it < iter_cap; ++it) {
        StateVector w = apply(h, basis.back());
        const double a = inner(basis.back(), w).real();
        alpha.push_back(a);

        // full reorthogonalization, run twice for numerical safety
        for (int pass = 0; pass < 2; ++pass)
            for (const StateVector& b : basis) {
                const cplx ov = inner(b, w);
                for (uint64_t i = 0; i < dim; ++i) w.amp[i] -= ov * b.amp[i];
            }
        const double bnorm = w.norm();

        // solve the current tridiagonal problem
        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            tri(i, i) = alpha[static_cast<size_t>(i)];
            if (i + 1 < k) {
                tri(i, i + 1) = beta[static_cast<size_t>(i)];
                tri(i + 1, i) = beta[static_cast<size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        lambda = es.eigenvalues()(0);
        ground_in_krylov = es.eigenvectors().col(0);
        rep.iterations = k;

        const double resid_bound = bnorm * std::abs(ground_in_krylov(k - 1));
        if (resid_bound <= tol || bnorm <= 1e-14) break;

        beta.push_back(bnorm);
        for (auto& x : w.amp) x /= bnorm;
        basis.push_back(std::move(w));
    }

    // assemble the Ritz vector and report the explicit residual
    StateVector ritz(h.width());
    for (size_t j = 0; j < static_cast<size_t>(ground_in_krylov.size()); ++j) {
        const double c = ground_in_krylov(static_cast<Eigen::Index>(j));
        for (uint64_t i = 0; i < dim; ++i) ritz.amp[i] += c * basis[j].amp[i];
    }
    ritz.normalize();
    StateVector hv = apply(h, ritz);
    double resid2 = 0.0;
    for (uint64_t i = 0; i < dim; ++i) resid2 += std::norm(hv.amp[i] - lambda * ritz.amp[i]);
    rep.lambda = lambda;
    rep.residual = std::sqrt(resid2);
    return rep;
}

double exact_partition_function(const LocalHamiltonian& h, double beta) {
    if (beta < 0.0) throw std::invalid_argument("exact_partition_function: beta must be >= 0");
    const std::vector<double> ev = dense_spectrum(h);
    double z = 0.0;
    for (double e : ev) z += std::exp(-beta * e);
    return z;
}

LhAnswer decide_lh(double lambda, double residual, const Thresholds& th) {
    th.validate();
    if (lambda + residual <= th.e_yes) return LhAnswer::Yes;
    if (lambda - residual >= th.e_no) return LhAnswer::No;
    return LhAnswer::Indeterminate;
}

LhAnswer decide_lh(const LocalHamiltonian& h, const Thresholds& th, const std::string& method,
                   uint64_t seed) {
    if (method == "dense") {
        const SpectrumReport rep = ground_energy_dense(h, false);
        return decide_lh(rep.lambda, rep.residual, th);
    }
    if (method == "lanczos") {
        const SpectrumReport rep = ground_energy_lanczos(h, 300, 1e-9, seed);
        return decide_lh(rep.lambda, rep.residual, th);
    }
    throw std::invalid_argument("decide_lh: unknown method '" + method + "'");
}

}  // namespace satham
