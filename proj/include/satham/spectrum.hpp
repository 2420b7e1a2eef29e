#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satham/hamiltonian.hpp"

namespace satham {

struct SpectrumReport {
    double lambda = 0.0;
    std::string method;  // "dense" or "lanczos"
    double residual = 0.0;
    int iterations = 0;
    std::optional<std::vector<double>> eigenvalues;  // ascending, dense only
};

struct Thresholds {
    double e_yes = 0.0;
    double e_no = 0.0;

    void validate() const;
};

enum class LhAnswer { Yes, No, Indeterminate };
const char* lh_answer_name(LhAnswer a);

// Exact ground energy and full spectrum. Diagonal Hamiltonians take a scan
// path; everything else goes through a Hermitian eigendecomposition.
SpectrumReport ground_energy_dense(const LocalHamiltonian& h, bool keep_eigenvalues = true);

inline constexpr int kLanczosGuardQubits = 26;

SpectrumReport ground_energy_lanczos(const LocalHamiltonian& h, int max_iters, double tol,
                                     uint64_t seed);

// tr exp(-beta H) over the full spectrum; same guard as the dense solver.
double exact_partition_function(const LocalHamiltonian& h, double beta);

LhAnswer decide_lh(double lambda, double residual, const Thresholds& th);
LhAnswer decide_lh(const LocalHamiltonian& h, const Thresholds& th,
                   const std::string& method = "dense", uint64_t seed = 1);

}  // namespace satham
