#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satham/spectrum.hpp"
#include "satham/rng.hpp"
#include "satham/clock.hpp"

using namespace satham;

namespace {

LocalTerm number_term(int qubit) {
    LocalTerm t;
    t.support = {qubit};
    t.block = CMat(2);
    t.block.at(1, 1) = 1.0;
    t.coefficient = 1.0;
    return t;
}

LocalHamiltonian random_local(int n, int terms, int k, uint64_t seed) {
    auto gen = substream(seed, 0x48, 0);
    LocalHamiltonian h(n, {});
    for (int i = 0; i < terms; ++i) {
        std::vector<int> support;
        while (static_cast<int>(support.size()) < std::min(k, n)) {
            const int q = static_cast<int>(gen() % n);
            if (std::find(support.begin(), support.end(), q) == support.end())
                support.push_back(q);
        }
        std::sort(support.begin(), support.end());
        const int dim = 1 << support.size();
        CMat block(dim);
        for (int r = 0; r < dim; ++r) {
            block.at(r, r) = uniform_pm1(gen);
            for (int c = r + 1; c < dim; ++c) {
                block.at(r, c) = cplx(uniform_pm1(gen), uniform_pm1(gen)) * 0.5;
                block.at(c, r) = std::conj(block.at(r, c));
            }
        }
        LocalTerm t;
        t.support = support;
        t.block = block;
        t.coefficient = 0.25 + 0.75 * uniform01(gen);
        h.add_term(std::move(t));
    }
    return h;
}

}  // namespace

TEST_CASE("zero Hamiltonian") {
    LocalHamiltonian h(3, {});
    const SpectrumReport rep = ground_energy_dense(h);
    CHECK(rep.lambda == 0.0);
    REQUIRE(rep.eigenvalues.has_value());
    for (double e : *rep.eigenvalues) CHECK(e == 0.0);
}

TEST_CASE("number operator spectrum and partition function") {
    const int n = 4;
    LocalHamiltonian h(n, {});
    for (int q = 0; q < n; ++q) h.add_term(number_term(q));
    const SpectrumReport rep = ground_energy_dense(h);
    CHECK(rep.lambda == doctest::Approx(0.0));
    // binomial multiplicities
    std::vector<int> mult(n + 1, 0);
    for (double e : *rep.eigenvalues) mult[static_cast<size_t>(std::lround(e))]++;
    for (int w = 0; w <= n; ++w)
        CHECK(mult[static_cast<size_t>(w)] == static_cast<int>(satham::binomial(n, w)));
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
        const double z = exact_partition_function(h, beta);
        CHECK(z == doctest::Approx(std::pow(1.0 + std::exp(-beta), n)).epsilon(1e-10));
    }
}

TEST_CASE("partition function of the zero operator counts dimensions") {
    LocalHamiltonian h(5, {});
    CHECK(exact_partition_function(h, 0.0) == doctest::Approx(32.0));
    CHECK(exact_partition_function(h, 3.0) == doctest::Approx(32.0));
    CHECK_THROWS(exact_partition_function(h, -1.0));
}

TEST_CASE("partition function is nonincreasing in beta for PSD operators") {
    const LocalHamiltonian h = random_local(5, 6, 2, 7);
    // shift to PSD using the norm bound
    LocalHamiltonian psd(5, {});
    for (const LocalTerm& t : h.terms()) psd.add_term(t);
    LocalTerm shift;
    shift.support = {0};
    shift.block = CMat::identity(2);
    shift.coefficient = h.norm_bound();
    psd.add_term(std::move(shift));
    double prev = exact_partition_function(psd, 0.0);
    for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double z = exact_partition_function(psd, beta);
        CHECK(z <= prev + 1e-9);
        prev = z;
    }
}

TEST_CASE("dense trace equals the sum of the spectrum") {
    const LocalHamiltonian h = random_local(6, 8, 3, 11);
    const CMat m = to_dense(h);
    double trace = 0.0;
    for (int i = 0; i < m.dim; ++i) trace += m.at(i, i).real();
    const SpectrumReport rep = ground_energy_dense(h);
    double sum = 0.0;
    for (double e : *rep.eigenvalues) sum += e;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-8));
}

TEST_CASE("lanczos agrees with the dense solver") {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        for (int n : {4, 6, 8, 10}) {
            const LocalHamiltonian h = random_local(n, n, 3, seed * 100 + n);
            const SpectrumReport dense = ground_energy_dense(h, false);
            const SpectrumReport lz = ground_energy_lanczos(h, 300, 1e-10, seed);
            CHECK(std::abs(lz.lambda - dense.lambda) <= 1e-8);
            CHECK(lz.lambda >= dense.lambda - 1e-8);  // variational from below never happens
        }
    }
}

TEST_CASE("lanczos handles a fully degenerate spectrum") {
    LocalHamiltonian h(5, {});
    LocalTerm t;
    t.support = {2};
    t.block = CMat::identity(2);
    t.coefficient = 3.25;
    h.add_term(std::move(t));
    const SpectrumReport rep = ground_energy_lanczos(h, 50, 1e-10, 5);
    CHECK(rep.lambda == doctest::Approx(3.25).epsilon(1e-9));
    CHECK(rep.residual <= 1e-8);
}

TEST_CASE("lanczos is seed-stable") {
    const LocalHamiltonian h = random_local(7, 7, 3, 99);
    double first = 0.0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const SpectrumReport rep = ground_energy_lanczos(h, 200, 1e-10, seed);
        if (seed == 1) first = rep.lambda;
        CHECK(rep.lambda == doctest::Approx(first).epsilon(1e-8));
    }
}

TEST_CASE("decide_lh covers all three outcomes") {
    Thresholds th{0.2, 0.8};
    CHECK(decide_lh(0.1, 0.0, th) == LhAnswer::Yes);
    CHECK(decide_lh(0.9, 0.0, th) == LhAnswer::No);
    CHECK(decide_lh(0.5, 0.0, th) == LhAnswer::Indeterminate);
    CHECK(decide_lh(0.19, 0.05, th) == LhAnswer::Indeterminate);  // residual straddles
    CHECK_THROWS(Thresholds{0.8, 0.2}.validate());
}

TEST_CASE("decide_lh dispatches to the iterative solver") {
    LocalHamiltonian h(6, {});
    LocalTerm t;
    t.support = {3};
    t.block = CMat(2);
    t.block.at(1, 1) = 1.0;
    t.coefficient = 1.0;
    h.add_term(std::move(t));
    CHECK(decide_lh(h, Thresholds{0.1, 0.9}, "lanczos", 3) == LhAnswer::Yes);
    CHECK_THROWS(decide_lh(h, Thresholds{0.1, 0.9}, "magic", 3));
}
