#pragma once
// The repeated-measurement distillation protocol: conditional evolution
// V(tau) = cos(gamma*tau*sqrt(Omega Omega^dag)), per-step success
// probabilities, the distillate projector with its parity, Monte Carlo
// trajectory sampling, and the exact joint-dynamics oracle.

#include <optional>
#include <utility>

#include "iondistill/rng.hpp"
#include "iondistill/scenarios.hpp"
#include "iondistill/spectral.hpp"

namespace iondistill {

// A step probability below this means the distillate is absent from the
// initial state, as opposed to roundoff.
inline constexpr double kAbsentThreshold = 1e-14;

struct DistillateAbsentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Operator scenario_omega_omega_dag(const CouplingScenario& sc) {
    const Operator omega = coupling_omega(sc);
    return omega * omega.adjoint();
}

// cos(gamma*tau*sqrt(Omega Omega^dag)) computed on the padded basis and read
// off the interior, where the truncated matrix elements are exact.
inline Operator conditional_operator(const CouplingScenario& sc, double gamma_tau) {
    return restrict_to(cos_sqrt(scenario_omega_omega_dag(sc), gamma_tau), sc.interior_basis());
}

struct DistillateProjector {
    Operator projector;     // P_d = sum of resonant eigenprojectors
    Operator parity;        // sum of (-1)^{l_k} resonant eigenprojectors
    ResonantSet resonance;  // members, l_k, leakage bound

    int rank() const { return static_cast<int>(resonance.members.size()); }
};

inline DistillateProjector distillate_projector(const CouplingScenario& sc, double gamma_tau,
                                                double tolerance) {
    const auto& basis = sc.interior_basis();
    const Operator m = restrict_to(scenario_omega_omega_dag(sc), basis);
    const SpectralDecomposition spec = hermitian_eig(m);
    const ResonantSet rs = resonant_set(spec, gamma_tau, tolerance);

    const int n = basis->dim();
    CMatrix p(n), e(n);
    for (const ResonantMember& mem : rs.members) {
        for (int i = 0; i < n; ++i) {
            const Complex ui = spec.eigenvectors(i, mem.index);
            if (ui == Complex{}) continue;
            for (int j = 0; j < n; ++j) {
                const Complex term = ui * std::conj(spec.eigenvectors(j, mem.index));
                p(i, j) += term;
                e(i, j) += static_cast<double>(mem.parity) * term;
            }
        }
    }
    return {Operator(basis, std::move(p)), Operator(basis, std::move(e)), rs};
}

struct ProtocolConfig {
    CouplingScenario scenario;
    double gamma_tau = 0.0;  // gamma and tau only ever enter as this product
    int steps = 0;
    StateVector initial_state;  // on scenario.interior_basis(), normalized
    std::optional<StateVector> target;
    double resonance_tolerance = 1e-9;
};

inline void validate(const ProtocolConfig& cfg) {
    if (cfg.steps < 1) throw std::invalid_argument("ProtocolConfig: steps must be >= 1");
    if (cfg.gamma_tau <= 0.0) throw std::invalid_argument("ProtocolConfig: gamma_tau must be positive");
    if (!(*cfg.initial_state.basis() == *cfg.scenario.interior_basis()))
        throw std::invalid_argument("ProtocolConfig: initial state must live on the interior basis");
    if (std::abs(cfg.initial_state.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("ProtocolConfig: initial state must be normalized");
    if (cfg.target && !(*cfg.target->basis() == *cfg.scenario.interior_basis()))
        throw std::invalid_argument("ProtocolConfig: target must live on the interior basis");
}

struct DistillationRecord {
    std::vector<double> per_step_probs;        // p_1 .. p_N
    double joint_prob = 1.0;                   // prod p_k
    std::vector<StateVector> conditional_states;
    std::vector<double> fidelity_trace;        // |<target|psi_k>|^2, empty without a target
    double distillate_overlap = 0.0;           // ||P_d phi_0||^2
};

inline DistillationRecord run_postselected(const ProtocolConfig& cfg) {
    validate(cfg);
    const Operator v = conditional_operator(cfg.scenario, cfg.gamma_tau);
    const DistillateProjector dp =
        distillate_projector(cfg.scenario, cfg.gamma_tau, cfg.resonance_tolerance);

    DistillationRecord rec;
    rec.distillate_overlap = dp.projector.apply(cfg.initial_state).norm_squared();
    StateVector psi = cfg.initial_state;
    for (int k = 0; k < cfg.steps; ++k) {
        const StateVector raw = v.apply(psi);
        const double p = raw.norm_squared();
        if (p < kAbsentThreshold)
            throw DistillateAbsentError(
                "run_postselected: step probability collapsed; distillate absent from the initial state");
        psi = raw.normalized();
        rec.per_step_probs.push_back(p);
        rec.joint_prob *= p;
        rec.conditional_states.push_back(psi);
        if (cfg.target) rec.fidelity_trace.push_back(fidelity(*cfg.target, psi));
    }
    return rec;
}

struct EfficiencyReport {
    double joint_prob;
    double distillate_overlap;
    double gap;  // |prod p_k - ||P_d phi_0||^2|, shrinking monotonically with N
};

inline EfficiencyReport efficiency_limit(const ProtocolConfig& cfg) {
    const DistillationRecord rec = run_postselected(cfg);
    return {rec.joint_prob, rec.distillate_overlap,
            std::abs(rec.joint_prob - rec.distillate_overlap)};
}

// The all-success branch probabilities; trials only ever need these.  A
// collapsed branch yields zeros instead of throwing so that Monte Carlo
// sampling over a distillate-free initial state simply never succeeds.
inline std::vector<double> success_branch_probabilities(const ProtocolConfig& cfg) {
    validate(cfg);
    const Operator v = conditional_operator(cfg.scenario, cfg.gamma_tau);
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(cfg.steps));
    StateVector psi = cfg.initial_state;
    for (int k = 0; k < cfg.steps; ++k) {
        const StateVector raw = v.apply(psi);
        const double p = raw.norm_squared();
        if (p < kAbsentThreshold) {
            probs.resize(static_cast<std::size_t>(cfg.steps), 0.0);
            break;
        }
        probs.push_back(p);
        psi = raw.normalized();
    }
    return probs;
}

struct TrajectoryEnsemble {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    std::vector<std::uint64_t> failure_histogram;  // [k] = trials that failed at step k; [0] unused
};

inline TrajectoryEnsemble run_monte_carlo(const ProtocolConfig& cfg, std::uint64_t trials,
                                          std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    const std::vector<double> probs = success_branch_probabilities(cfg);

    TrajectoryEnsemble ens;
    ens.trials = trials;
    ens.seed = seed;
    ens.failure_histogram.assign(static_cast<std::size_t>(cfg.steps) + 1, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::substream(seed, t);
        bool ok = true;
        for (int k = 0; k < cfg.steps; ++k) {
            if (rng.uniform() >= probs[static_cast<std::size_t>(k)]) {
                ++ens.failure_histogram[static_cast<std::size_t>(k) + 1];
                ok = false;
                break;
            }
        }
        if (ok) ++ens.successes;
    }
    ens.success_rate = static_cast<double>(ens.successes) / static_cast<double>(trials);
    return ens;
}

// Joint dynamics of (motional ⊗ internal) under H_v = gamma(Omega sigma_+ +
// Omega^dag sigma_-), exponentiated by spectral decomposition on the padded
// basis.  Block layout: amplitudes 0..d-1 ride on |+>, d..2d-1 on |->.
class JointDynamics {
public:
    explicit JointDynamics(CouplingScenario sc) : scenario_(std::move(sc)) {
        const Operator omega = coupling_omega(scenario_);
        const int d = scenario_.padded_basis()->dim();
        dim_ = d;
        CMatrix k(2 * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Complex z = omega.element(i, j);
                k(i, d + j) = z;                 // Omega couples |-> into |+>
                k(d + j, i) = std::conj(z);      // Omega^dag couples |+> into |->
            }
        eig_ = jacobi_hermitian_eig(std::move(k));
    }

    const CouplingScenario& scenario() const { return scenario_; }

    // e^{-i gamma tau K} applied to (state ⊗ |+>); both branches come back on
    // the padded basis.
    std::pair<StateVector, StateVector> propagate(double gamma_tau, const StateVector& state) const {
        const StateVector padded = on_padded(state);
        std::vector<Complex> x(static_cast<std::size_t>(2 * dim_));
        for (int i = 0; i < dim_; ++i) x[static_cast<std::size_t>(i)] = padded.amplitude(i);

        const std::vector<Complex> y = eig_.vectors.adjoint().apply(x);
        std::vector<Complex> z(y.size());
        for (std::size_t k = 0; k < y.size(); ++k)
            z[k] = std::polar(1.0, -gamma_tau * eig_.values[k]) * y[k];
        const std::vector<Complex> out = eig_.vectors.apply(z);

        std::vector<Complex> plus(static_cast<std::size_t>(dim_)), minus(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            plus[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)];
            minus[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(dim_ + i)];
        }
        return {StateVector(scenario_.padded_basis(), std::move(plus)),
                StateVector(scenario_.padded_basis(), std::move(minus))};
    }

    // <+| e^{-i gamma tau K} |+> as a padded-basis operator
    Operator plus_block(double gamma_tau) const {
        const int n = 2 * dim_;
        CMatrix scaled = eig_.vectors;
        for (int k = 0; k < n; ++k) {
            const Complex f = std::polar(1.0, -gamma_tau * eig_.values[static_cast<std::size_t>(k)]);
            for (int i = 0; i < n; ++i) scaled(i, k) *= f;
        }
        const CMatrix full = scaled * eig_.vectors.adjoint();
        CMatrix block(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) block(i, j) = full(i, j);
        return {scenario_.padded_basis(), std::move(block)};
    }

private:
    StateVector on_padded(const StateVector& state) const {
        if (*state.basis() == *scenario_.padded_basis()) return state;
        return embed(state, scenario_.padded_basis());
    }

    CouplingScenario scenario_;
    int dim_ = 0;
    EigResult eig_;
};

// One-shot oracle: the |+> branch must reproduce conditional_operator.
inline std::pair<StateVector, StateVector> full_dynamics_oracle(const CouplingScenario& sc,
                                                                double gamma_tau,
                                                                const StateVector& state) {
    return JointDynamics(sc).propagate(gamma_tau, state);
}

}  // namespace iondistill
