#include "satham/qpf.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "satham/rng.hpp"

namespace satham {

using std::numbers::pi;

const char* qpf_backend_name(QpfBackend b) {
    switch (b) {
        case QpfBackend::Exact: return "exact";
        case QpfBackend::Oracle: return "oracle";
        case QpfBackend::Statevector: return "statevector";
    }
    return "?";
}

QpfBackend qpf_backend_from_name(const std::string& name) {
    if (name == "exact") return QpfBackend::Exact;
    if (name == "oracle") return QpfBackend::Oracle;
    if (name == "statevector") return QpfBackend::Statevector;
    throw std::invalid_argument("unknown qpf backend '" + name + "'");
}

NormalizedHamiltonian normalize(const LocalHamiltonian& h) {
    NormalizedHamiltonian out;
    const double nb = h.norm_bound();
    if (nb == 0.0) {
        out.h_prime = h;
        out.scale = 1.0;
        out.shift = 0.0;
        return out;
    }
    out.shift = -nb;
    out.scale = 2.0 * nb * (1.0 + kNormalizeMargin);
    LocalHamiltonian hp(h.width(), {});
    for (const LocalTerm& t : h.terms()) {
        LocalTerm s = t;
        s.coefficient = t.coefficient / out.scale;
        hp.add_term(std::move(s));
    }
    LocalTerm id;
    id.support = {0};
    id.block = CMat::identity(2);
    id.coefficient = nb / out.scale;
    hp.add_term(std::move(id));
    out.h_prime = std::move(hp);
    return out;
}

EnergyEstimationParams EnergyEstimationParams::for_tolerance(double delta_e, int repetitions) {
    if (!(delta_e > 0.0 && delta_e < 1.0))
        throw std::invalid_argument("energy estimation tolerance must lie in (0,1)");
    EnergyEstimationParams p;
    p.delta_e = delta_e;
    p.phase_bits = static_cast<int>(std::ceil(std::log2(2.0 * pi / delta_e)));
    p.register_bits = p.phase_bits + 2;
    p.repetitions = std::max(1, repetitions) | 1;  // keep it odd for the median
    return p;
}

// ---------------------------------------------------------------------------
// phase estimation

std::vector<double> pe_distribution(double phase_turns, int register_bits) {
    if (register_bits < 1 || register_bits > 24)
        throw std::invalid_argument("pe_distribution: register bits out of range");
    const int64_t d = int64_t(1) << register_bits;
    std::vector<double> p(static_cast<size_t>(d), 0.0);
    for (int64_t x = 0; x < d; ++x) {
        double delta = phase_turns - static_cast<double>(x) / static_cast<double>(d);
        delta -= std::floor(delta);  // into [0,1)
        if (delta > 0.5) delta -= 1.0;
        const double sd = std::sin(pi * delta);
        if (std::abs(sd) < 1e-300) {
            p[static_cast<size_t>(x)] = 1.0;
            continue;
        }
        const double num = std::sin(pi * static_cast<double>(d) * delta);
        const double ratio = num / (static_cast<double>(d) * sd);
        p[static_cast<size_t>(x)] = ratio * ratio;
    }
    return p;
}

namespace {

CMat matrix_power(const CMat& u, uint64_t power) {
    CMat result = CMat::identity(u.dim);
    CMat base = u;
    while (power > 0) {
        if (power & 1ull) result = result.mul(base);
        base = base.mul(base);
        power >>= 1;
    }
    return result;
}

CMat controlled(const CMat& u) {
    CMat out = CMat::identity(2 * u.dim);
    for (int r = 0; r < u.dim; ++r)
        for (int c = 0; c < u.dim; ++c) out.at(u.dim + r, u.dim + c) = u.at(r, c);
    return out;
}

CMat qft_adjoint_matrix(int bits) {
    const int d = 1 << bits;
    CMat f(d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            f.at(r, c) = s * std::exp(cplx(0.0, -2.0 * pi * r * c / d));
    return f;
}

size_t sample_index(const std::vector<double>& probs, std::mt19937_64& g) {
    double u = uniform01(g);
    for (size_t i = 0; i < probs.size(); ++i) {
        u -= probs[i];
        if (u <= 0.0) return i;
    }
    return probs.size() - 1;
}

}  // namespace

std::vector<double> pe_distribution_circuit(const CMat& u, const StateVector& eigenstate,
                                            int register_bits) {
    const int n = eigenstate.num_qubits;
    if (u.dim != (1 << n)) throw std::invalid_argument("pe_distribution_circuit: dim mismatch");
    if (register_bits + n > 22)
        throw std::invalid_argument("pe_distribution_circuit: register too large to simulate");
    const int total = register_bits + n;
    StateVector s(total);
    for (uint64_t i = 0; i < eigenstate.amp.size(); ++i) s.amp[i] = eigenstate.amp[i];

    CMat had(2);
    const double rs = 1.0 / std::sqrt(2.0);
    had.at(0, 0) = rs; had.at(0, 1) = rs; had.at(1, 0) = rs; had.at(1, 1) = -rs;
    for (int q = 0; q < register_bits; ++q) apply_local(s, {q}, had);

    std::vector<int> sys(n);
    for (int i = 0; i < n; ++i) sys[i] = register_bits + i;
    for (int q = 0; q < register_bits; ++q) {
        const uint64_t power = 1ull << (register_bits - 1 - q);
        std::vector<int> support = {q};
        support.insert(support.end(), sys.begin(), sys.end());
        apply_local(s, support, controlled(matrix_power(u, power)));
    }

    std::vector<int> reg(register_bits);
    for (int i = 0; i < register_bits; ++i) reg[i] = i;
    apply_local(s, reg, qft_adjoint_matrix(register_bits));

    const size_t outcomes = size_t(1) << register_bits;
    std::vector<double> p(outcomes, 0.0);
    const uint64_t sys_dim = 1ull << n;
    for (uint64_t x = 0; x < outcomes; ++x)
        for (uint64_t y = 0; y < sys_dim; ++y) p[x] += std::norm(s.amp[(x << n) | y]);
    return p;
}

std::vector<double> phase_estimate(const UnitaryAction& action, const StateVector& eigenstate,
                                   int register_bits, int samples, uint64_t seed) {
    StateVector u_psi = action(eigenstate);
    const cplx amp = inner(eigenstate, u_psi);
    if (std::abs(std::abs(amp) - 1.0) > 1e-8) {
        // not an eigenstate: the residual ||U psi - <psi|U psi> psi|| is large
        throw std::invalid_argument("phase_estimate: input is not an eigenstate of the action");
    }
    const double theta = std::atan2(amp.imag(), amp.real());
    double turns = theta / (2.0 * pi);
    turns -= std::floor(turns);

    const std::vector<double> dist = pe_distribution(turns, register_bits);
    auto g = substream(seed, 0x7065, 0);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(samples));
    const double dd = static_cast<double>(int64_t(1) << register_bits);
    for (int i = 0; i < samples; ++i) {
        const size_t x = sample_index(dist, g);
        out.push_back(2.0 * pi * static_cast<double>(x) / dd);
    }
    return out;
}

double median_amplify(std::vector<double> estimates) {
    if (estimates.empty()) throw std::invalid_argument("median_amplify: empty sample list");
    std::sort(estimates.begin(), estimates.end());
    return estimates[(estimates.size() - 1) / 2];
}

// ---------------------------------------------------------------------------
// evolution

namespace {

struct EigenSystem {
    std::vector<double> values;
    Eigen::MatrixXcd vectors;
};

EigenSystem dense_eigensystem(const LocalHamiltonian& h) {
    const CMat m = to_dense(h);
    Eigen::MatrixXcd e(m.dim, m.dim);
    for (int r = 0; r < m.dim; ++r)
        for (int c = 0; c < m.dim; ++c) e(r, c) = m.at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    EigenSystem sys;
    sys.values.resize(static_cast<size_t>(m.dim));
    for (int i = 0; i < m.dim; ++i) sys.values[static_cast<size_t>(i)] = es.eigenvalues()(i);
    sys.vectors = es.eigenvectors();
    return sys;
}

}  // namespace

EvolutionOp hamiltonian_evolution_exact(const LocalHamiltonian& h, double t) {
    auto sys = std::make_shared<EigenSystem>(dense_eigensystem(h));
    EvolutionOp op;
    op.error_bound = 0.0;
    op.map = [sys, t, n = h.width()](const StateVector& v) {
        if (v.num_qubits != n) throw std::invalid_argument("evolution: width mismatch");
        const Eigen::Index dim = sys->vectors.rows();
        Eigen::VectorXcd x(dim);
        for (Eigen::Index i = 0; i < dim; ++i) x(i) = v.amp[static_cast<size_t>(i)];
        Eigen::VectorXcd y = sys->vectors.adjoint() * x;
        for (Eigen::Index i = 0; i < dim; ++i)
            y(i) *= std::exp(cplx(0.0, -sys->values[static_cast<size_t>(i)] * t));
        Eigen::VectorXcd z = sys->vectors * y;
        StateVector out(n);
        for (Eigen::Index i = 0; i < dim; ++i) out.amp[static_cast<size_t>(i)] = z(i);
        return out;
    };
    return op;
}

EvolutionOp hamiltonian_evolution_trotter(const LocalHamiltonian& h, double t, int steps) {
    if (steps < 1) throw std::invalid_argument("trotter: steps must be >= 1");
    // per-term exponentials exp(-i coeff * block * t/steps)
    auto exps = std::make_shared<std::vector<std::pair<std::vector<int>, CMat>>>();
    double norm_sum = 0.0;
    for (const LocalTerm& term : h.terms()) {
        Eigen::MatrixXcd e(term.block.dim, term.block.dim);
        for (int r = 0; r < term.block.dim; ++r)
            for (int c = 0; c < term.block.dim; ++c) e(r, c) = term.block.at(r, c);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
        norm_sum += term.coefficient *
                    std::max(std::abs(es.eigenvalues()(0)),
                             std::abs(es.eigenvalues()(term.block.dim - 1)));
        Eigen::VectorXcd phases(term.block.dim);
        for (int i = 0; i < term.block.dim; ++i)
            phases(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * term.coefficient * t / steps));
        Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        CMat um(term.block.dim);
        for (int r = 0; r < term.block.dim; ++r)
            for (int c = 0; c < term.block.dim; ++c) um.at(r, c) = u(r, c);
        exps->push_back({term.support, std::move(um)});
    }
    EvolutionOp op;
    op.error_bound = t * t / (2.0 * steps) * norm_sum * norm_sum;
    op.map = [exps, steps, n = h.width()](const StateVector& v) {
        if (v.num_qubits != n) throw std::invalid_argument("evolution: width mismatch");
        StateVector s = v;
        for (int it = 0; it < steps; ++it)
            for (const auto& [support, u] : *exps) apply_local(s, support, u);
        return s;
    };
    return op;
}

// ---------------------------------------------------------------------------
// energy estimation

namespace {

// The estimator reads the spectrum through phase estimation at one full turn
// per unit energy, so energies on the register grid are read exactly and the
// published tolerance budget b = ceil(log2(2 pi / deltaE)) holds with room to
// spare. Estimates in the thin band just below one turn fold to small
// negative energies; the normalization margin keeps the spectrum away from it.
inline constexpr double kWrapFold = 0.995;

double outcome_to_energy(int64_t x, int register_bits) {
    const double e = static_cast<double>(x) / static_cast<double>(int64_t(1) << register_bits);
    return e >= kWrapFold ? e - 1.0 : e;
}

double energy_to_turns(double energy) {
    double turns = energy;
    turns -= std::floor(turns);
    return turns;
}

int collapse_to_eigenstate(const EigenSystem& sys, const StateVector& state,
                           std::mt19937_64& g) {
    const Eigen::Index dim = sys.vectors.rows();
    Eigen::VectorXcd x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = state.amp[static_cast<size_t>(i)];
    Eigen::VectorXcd overlaps = sys.vectors.adjoint() * x;
    std::vector<double> probs(static_cast<size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) probs[static_cast<size_t>(i)] = std::norm(overlaps(i));
    return static_cast<int>(sample_index(probs, g));
}

}  // namespace

double energy_estimate(const NormalizedHamiltonian& h, const StateVector& state,
                       const EnergyEstimationParams& params, QpfBackend backend, uint64_t seed) {
    if (h.h_prime.width() > 12)
        throw std::invalid_argument("energy_estimate: width exceeds the emulation guard");
    auto g = substream(seed, 0x6565, 0);
    const EigenSystem sys = dense_eigensystem(h.h_prime);
    const int j = collapse_to_eigenstate(sys, state, g);
    const double ej = sys.values[static_cast<size_t>(j)];

    if (backend == QpfBackend::Exact) return ej;
    if (backend == QpfBackend::Oracle)
        return ej + params.delta_e * uniform_pm1(g);

    // statevector: median of phase-estimation reads of exp(-iH')
    const std::vector<double> dist = pe_distribution(energy_to_turns(ej), params.register_bits);
    std::vector<double> reads;
    reads.reserve(static_cast<size_t>(params.repetitions));
    for (int i = 0; i < params.repetitions; ++i) {
        const int64_t x = static_cast<int64_t>(sample_index(dist, g));
        reads.push_back(outcome_to_energy(x, params.register_bits));
    }
    return median_amplify(std::move(reads));
}

// ---------------------------------------------------------------------------
// counting

StateVector epr_state(int n) {
    if (n < 1 || n > 13) throw std::invalid_argument("epr_state: n out of range");
    StateVector s(2 * n);
    const uint64_t d = 1ull << n;
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (uint64_t k = 0; k < d; ++k) s.amp[(k << n) | k] = a;
    return s;
}

int CountingParams::default_iteration_bits(int n, int c_exponent) {
    const double logn = std::log2(static_cast<double>(std::max(2, n)));
    return (n + 1) / 2 + static_cast<int>(std::ceil(c_exponent * logn)) + 3;
}

namespace {

struct PhaseWeights {
    std::vector<double> turns;
    std::vector<double> weight;
};

// orthonormal eigen-decomposition of a unitary via its Schur form
PhaseWeights unitary_phase_weights(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& init) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
    const Eigen::MatrixXcd& q = schur.matrixU();
    const Eigen::MatrixXcd& t = schur.matrixT();
    PhaseWeights pw;
    const Eigen::Index dim = u.rows();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const cplx ev = t(i, i);
        double turns = std::atan2(ev.imag(), ev.real()) / (2.0 * pi);
        turns -= std::floor(turns);
        const double w = std::norm(q.col(i).dot(init));
        pw.turns.push_back(turns);
        pw.weight.push_back(w);
    }
    return pw;
}

}  // namespace

std::vector<double> counting_distribution(double fraction, int iteration_bits) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("counting_distribution: fraction out of [0,1]");
    const double theta = std::asin(std::sqrt(fraction));
    double plus = 2.0 * theta / (2.0 * pi);
    double minus = 1.0 - plus;
    minus -= std::floor(minus);
    const std::vector<double> dp = pe_distribution(plus, iteration_bits);
    const std::vector<double> dm = pe_distribution(minus, iteration_bits);
    std::vector<double> out(dp.size());
    for (size_t i = 0; i < dp.size(); ++i) out[i] = 0.5 * (dp[i] + dm[i]);
    return out;
}

double amplitude_estimate(const CMat& preparer, int width, uint64_t marked_mask,
                          uint64_t marked_value, bool extra_qubit,
                          const CountingParams& params, uint64_t seed) {
    if (preparer.dim != (1 << width))
        throw std::invalid_argument("amplitude_estimate: preparer dimension mismatch");
    if (width > 9) throw std::invalid_argument("amplitude_estimate: register too wide");

    CMat a = preparer;
    int w = width;
    uint64_t mask = marked_mask, value = marked_value;
    if (extra_qubit) {
        CMat had(2);
        const double rs = 1.0 / std::sqrt(2.0);
        had.at(0, 0) = rs; had.at(0, 1) = rs; had.at(1, 0) = rs; had.at(1, 1) = -rs;
        a = CMat::kron(a, had);
        w += 1;
        mask = (mask << 1) | 1ull;  // marked requires the extra qubit at |0>
        value = value << 1;
    }
    const int dim = 1 << w;

    Eigen::MatrixXcd am(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) am(r, c) = a.at(r, c);
    Eigen::VectorXcd init = am.col(0);  // A|0...0>

    Eigen::MatrixXcd s0 = -Eigen::MatrixXcd::Identity(dim, dim);
    s0(0, 0) = 1.0;
    Eigen::MatrixXcd schi = Eigen::MatrixXcd::Identity(dim, dim);
    for (int b = 0; b < dim; ++b)
        if ((static_cast<uint64_t>(b) & mask) == value) schi(b, b) = -1.0;
    const Eigen::MatrixXcd grover = am * s0 * am.adjoint() * schi;

    const PhaseWeights pw = unitary_phase_weights(grover, init);
    const int64_t outcomes = int64_t(1) << params.iteration_bits;
    std::vector<double> dist(static_cast<size_t>(outcomes), 0.0);
    for (size_t i = 0; i < pw.turns.size(); ++i) {
        if (pw.weight[i] < 1e-15) continue;
        const std::vector<double> d = pe_distribution(pw.turns[i], params.iteration_bits);
        for (size_t x = 0; x < d.size(); ++x) dist[x] += pw.weight[i] * d[x];
    }

    auto g = substream(seed, 0x6165, 0);
    std::vector<double> fracs;
    fracs.reserve(static_cast<size_t>(params.repetitions));
    for (int i = 0; i < (params.repetitions | 1); ++i) {
        const int64_t x = static_cast<int64_t>(sample_index(dist, g));
        double turns = static_cast<double>(x) / static_cast<double>(outcomes);
        if (turns > 0.5) turns = 1.0 - turns;
        const double f = std::sin(pi * turns) * std::sin(pi * turns);
        fracs.push_back(f);
    }
    const double f_med = median_amplify(std::move(fracs));
    // the marked count is a fraction of the system states: one register qubit
    // is the flag, and the extra qubit doubles the effective state count
    return f_med * static_cast<double>(dim / 2);
}

// ---------------------------------------------------------------------------
// interval counting and the full algorithm

namespace {

struct CountingContext {
    std::vector<double> spectrum;  // of h_prime, ascending
    int n = 0;
    // statevector mode: per-eigenvalue prefix sums of the phase-read law over
    // the uniform energy grid [-pi, pi)
    int register_bits = 0;
    std::vector<std::vector<double>> prefix;
};

double oracle_count(const CountingContext& ctx, double lo, double hi, double delta_e,
                    double delta_c, int repetitions, std::mt19937_64& g) {
    // worst case within the estimation contract: every eigenvalue whose
    // distance from the interval is below delta_e may be counted
    const auto lo_it = std::lower_bound(ctx.spectrum.begin(), ctx.spectrum.end(), lo - delta_e);
    const auto hi_it = std::lower_bound(ctx.spectrum.begin(), ctx.spectrum.end(), hi + delta_e);
    const double count = static_cast<double>(hi_it - lo_it);

    const double fail_rate = std::exp(-static_cast<double>(repetitions) / 8.0);
    if (uniform01(g) < fail_rate)
        return uniform01(g) * static_cast<double>(1ull << ctx.n);  // estimation failure
    return count * (1.0 + delta_c * uniform_pm1(g));
}

// probability that the median of `m` independent reads lands inside the
// interval, from the per-read class probabilities (below, inside, above)
double median_inside_probability(double p_below, double p_inside, double p_above, int m) {
    const int h = (m - 1) / 2;
    // clamp tiny negatives from floating point
    p_below = std::max(0.0, p_below);
    p_inside = std::max(0.0, p_inside);
    p_above = std::max(0.0, p_above);
    double total = 0.0;
    for (int b = 0; b <= h; ++b) {
        for (int a = 0; a <= h; ++a) {
            const int inside = m - b - a;
            if (inside < 0) continue;
            // multinomial coefficient via lgamma
            const double logc = std::lgamma(m + 1.0) - std::lgamma(b + 1.0) -
                                std::lgamma(a + 1.0) - std::lgamma(inside + 1.0);
            double logp = logc;
            if (b > 0) logp += b * std::log(std::max(p_below, 1e-300));
            if (a > 0) logp += a * std::log(std::max(p_above, 1e-300));
            if (inside > 0) logp += inside * std::log(std::max(p_inside, 1e-300));
            if ((b > 0 && p_below == 0.0) || (a > 0 && p_above == 0.0) ||
                (inside > 0 && p_inside == 0.0))
                continue;
            total += std::exp(logp);
        }
    }
    return std::min(1.0, total);
}

double statevector_count(const CountingContext& ctx, double lo, double hi, int repetitions,
                         int c_exponent, std::mt19937_64& g) {
    const int r = ctx.register_bits;
    const int64_t grid = int64_t(1) << r;
    const int64_t fold_start =
        static_cast<int64_t>(std::ceil(kWrapFold * static_cast<double>(grid)));
    auto grid_index = [&](double e) {
        // smallest ordered index whose energy representative is >= e
        const double v = (e + 1.0) * static_cast<double>(grid) - static_cast<double>(fold_start);
        int64_t i = static_cast<int64_t>(std::ceil(v - 1e-9));
        return std::clamp<int64_t>(i, 0, grid);
    };
    const int64_t ilo = grid_index(lo);
    const int64_t ihi = grid_index(hi);

    double marked = 0.0;
    for (const auto& pre : ctx.prefix) {
        const double p_below = pre[static_cast<size_t>(ilo)];
        const double p_in = pre[static_cast<size_t>(ihi)] - pre[static_cast<size_t>(ilo)];
        const double p_above = 1.0 - pre[static_cast<size_t>(ihi)];
        marked += median_inside_probability(p_below, p_in, p_above, repetitions | 1);
    }
    const double n_states = static_cast<double>(1ull << ctx.n);
    const double fraction = marked / n_states;

    CountingParams cp;
    cp.iteration_bits = CountingParams::default_iteration_bits(ctx.n + 1, c_exponent);
    cp.repetitions = 11;
    // counting with the extra-qubit halving, sampled from the exact law
    const std::vector<double> dist = counting_distribution(fraction / 2.0, cp.iteration_bits);
    const int64_t outcomes = int64_t(1) << cp.iteration_bits;
    std::vector<double> fracs;
    for (int i = 0; i < cp.repetitions; ++i) {
        const int64_t x = static_cast<int64_t>(sample_index(dist, g));
        double turns = static_cast<double>(x) / static_cast<double>(outcomes);
        if (turns > 0.5) turns = 1.0 - turns;
        const double f = std::sin(pi * turns) * std::sin(pi * turns);
        fracs.push_back(f);
    }
    return median_amplify(std::move(fracs)) * 2.0 * n_states;
}

CountingContext make_context(const NormalizedHamiltonian& h, QpfBackend backend,
                             double delta_e) {
    CountingContext ctx;
    ctx.n = h.h_prime.width();
    const SpectrumReport rep = ground_energy_dense(h.h_prime, true);
    ctx.spectrum = *rep.eigenvalues;
    if (backend == QpfBackend::Statevector) {
        const EnergyEstimationParams p = EnergyEstimationParams::for_tolerance(delta_e, 1);
        ctx.register_bits = std::min(p.register_bits, 18);
        const int64_t grid = int64_t(1) << ctx.register_bits;
        const int64_t fold_start =
            static_cast<int64_t>(std::ceil(kWrapFold * static_cast<double>(grid)));
        for (double e : ctx.spectrum) {
            const std::vector<double> dist = pe_distribution(energy_to_turns(e), ctx.register_bits);
            std::vector<double> pre(static_cast<size_t>(grid + 1), 0.0);
            for (int64_t i = 0; i < grid; ++i) {
                const int64_t x = (fold_start + i) & (grid - 1);  // ascending-energy order
                pre[static_cast<size_t>(i + 1)] =
                    pre[static_cast<size_t>(i)] + dist[static_cast<size_t>(x)];
            }
            ctx.prefix.push_back(std::move(pre));
        }
    }
    return ctx;
}

int choose_grid_size(double n_pow_c, double beta_eff, double lambda_max) {
    int64_t L = static_cast<int64_t>(std::ceil(4.0 * n_pow_c * beta_eff));
    L = std::max<int64_t>(L, 8);
    if (lambda_max > 0.0) {
        // keep the top band, which grid 0 does not cover, above the spectrum
        const double head = 1.0 - lambda_max;
        if (head <= 0.0) throw std::runtime_error("normalized spectrum reaches 1");
        L = std::max<int64_t>(L, static_cast<int64_t>(std::ceil(2.0 / head)));
    }
    if (L > 100000) throw std::invalid_argument("qpf: grid size guard exceeded (beta too large)");
    return static_cast<int>(L);
}

}  // namespace

double count_in_interval(const NormalizedHamiltonian& h, double lo, double hi, double delta_e,
                         double delta_c, int repetitions, QpfBackend backend, uint64_t seed,
                         int c_exponent) {
    if (!(hi > lo)) throw std::invalid_argument("count_in_interval: empty interval");
    CountingContext ctx = make_context(h, backend, delta_e);
    auto g = substream(seed, 0x6369, 0);
    switch (backend) {
        case QpfBackend::Exact: {
            const auto lo_it = std::lower_bound(ctx.spectrum.begin(), ctx.spectrum.end(), lo);
            const auto hi_it = std::lower_bound(ctx.spectrum.begin(), ctx.spectrum.end(), hi);
            return static_cast<double>(hi_it - lo_it);
        }
        case QpfBackend::Oracle:
            return oracle_count(ctx, lo, hi, delta_e, delta_c, repetitions, g);
        case QpfBackend::Statevector:
            if (ctx.n > kStatevectorGuardQubits)
                throw std::invalid_argument(
                    "count_in_interval: statevector backend is limited to " +
                    std::to_string(kStatevectorGuardQubits) + " system qubits");
            return statevector_count(ctx, lo, hi, repetitions, c_exponent, g);
    }
    throw std::logic_error("unreachable backend");
}

QpfEstimate approximate_qpf(const LocalHamiltonian& h, double beta, int c_exponent,
                            QpfBackend backend, uint64_t seed, double confidence_budget) {
    if (beta < 0.0) throw std::invalid_argument("approximate_qpf: beta must be >= 0");
    if (!(confidence_budget > 0.0 && confidence_budget < 1.0))
        throw std::invalid_argument("approximate_qpf: confidence budget must lie in (0,1)");
    if (c_exponent < 1) throw std::invalid_argument("approximate_qpf: c must be >= 1");
    if (h.width() > kDenseGuardQubits)
        throw std::invalid_argument("approximate_qpf: width exceeds the emulation guard of " +
                                    std::to_string(kDenseGuardQubits) + " qubits");
    if (backend == QpfBackend::Statevector && h.width() > kStatevectorGuardQubits)
        throw std::invalid_argument("approximate_qpf: statevector backend is limited to " +
                                    std::to_string(kStatevectorGuardQubits) + " system qubits");

    const NormalizedHamiltonian nh = normalize(h);
    const int n = h.width();
    QpfEstimate est;
    est.backend = qpf_backend_name(backend);
    est.beta = beta;
    est.beta_eff = nh.scale * beta;
    est.shift = nh.shift;
    est.n = n;
    est.c_exponent = c_exponent;
    est.seed = seed;

    if (backend == QpfBackend::Exact) {
        est.z_tilde = exact_partition_function(h, beta);
        return est;
    }

    const double n_pow_c = std::pow(static_cast<double>(n), static_cast<double>(c_exponent));
    const double delta_c = 1.0 / (4.0 * n_pow_c);

    CountingContext ctx0 = make_context(nh, QpfBackend::Exact, 0.0);
    const double lambda_max = ctx0.spectrum.empty() ? 0.0 : ctx0.spectrum.back();
    const int L = choose_grid_size(n_pow_c, est.beta_eff, lambda_max);
    if (backend == QpfBackend::Statevector && L > 24)
        throw std::invalid_argument("approximate_qpf: statevector backend supports grids up to "
                                    "L=24; got L=" + std::to_string(L));
    const double delta_e = 1.0 / (static_cast<double>(L) * L);
    int repetitions = std::max(
        n * n, static_cast<int>(std::ceil(8.0 * std::log(L * (L + 1.0) / confidence_budget))));
    repetitions |= 1;

    est.L = L;
    est.grid_count = L;
    est.delta_c = delta_c;
    est.repetitions = repetitions;

    CountingContext ctx = make_context(nh, backend, delta_e);

    est.counts.resize(static_cast<size_t>(L));
    est.z_k.resize(static_cast<size_t>(L), 0.0);
    for (int k = 0; k < L; ++k) {
        const GridPartition grid{L, k};
        double zk = 0.0;
        est.counts[static_cast<size_t>(k)].resize(static_cast<size_t>(grid.num_slots()), 0.0);
        for (int ell = 0; ell < grid.num_slots(); ++ell) {
            auto g = substream(seed, static_cast<uint64_t>(k) + 1, static_cast<uint64_t>(ell) + 1);
            double m_tilde = 0.0;
            if (backend == QpfBackend::Oracle)
                m_tilde = oracle_count(ctx, grid.lo(ell), grid.hi(ell), delta_e, delta_c,
                                       repetitions, g);
            else
                m_tilde = statevector_count(ctx, grid.lo(ell), grid.hi(ell), 15, c_exponent, g);
            est.counts[static_cast<size_t>(k)][static_cast<size_t>(ell)] = m_tilde;
            zk += m_tilde * std::exp(-est.beta_eff * grid.anchor(ell));
        }
        est.z_k[static_cast<size_t>(k)] = zk;
    }

    const double z_min = *std::min_element(est.z_k.begin(), est.z_k.end());
    est.z_tilde = std::exp(-beta * nh.shift) * z_min;
    return est;
}

}  // namespace satham
