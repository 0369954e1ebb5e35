#pragma once
// The reproduction suite: every quantitative claim the simulator is built
// around, checked end to end at fixed tolerances.  `distill reproduce` and
// the acceptance test binary both run exactly this list.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>

#include "iondistill/distillation.hpp"
#include "iondistill/presets.hpp"
#include "iondistill/runner.hpp"

namespace iondistill {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace repro_detail {

constexpr double kPi = std::numbers::pi;

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

// 1. Omega*Omega^dag equals its closed form on the interior of a
//    TotalExcitation(8) + margin basis, entrywise to 1e-12.
inline Check criterion_operator_identities() {
    Check c;

    const CouplingScenario sc2 = CouplingScenario::second_red_2d(8);
    const Operator lhs2 = restrict_to(scenario_omega_omega_dag(sc2), sc2.interior_basis());
    const auto& b2 = sc2.padded_basis();
    const Operator nt2 = total_number(b2);
    const Operator lz = angular_momentum_2d(b2).l_z;
    const Operator rhs2 = restrict_to(
        nt2 * nt2 + Complex{4.0} * nt2 - lz * lz + Complex{4.0} * Operator::identity(b2),
        sc2.interior_basis());
    const double diff2 = max_abs_diff(lhs2, rhs2);
    c.require(diff2 <= 1e-12, "2D identity deviates by " + fmt(diff2));

    const CouplingScenario sc3 = CouplingScenario::second_red_3d(8);
    const Operator lhs3 = restrict_to(scenario_omega_omega_dag(sc3), sc3.interior_basis());
    const auto& b3 = sc3.padded_basis();
    const Operator nt3 = total_number(b3);
    const Operator l2 = angular_momentum_3d(b3).l_squared;
    const Operator rhs3 = restrict_to(
        nt3 * nt3 + Complex{5.0} * nt3 - l2 + Complex{6.0} * Operator::identity(b3),
        sc3.interior_basis());
    const double diff3 = max_abs_diff(lhs3, rhs3);
    c.require(diff3 <= 1e-12, "3D identity deviates by " + fmt(diff3));

    if (c.ok) c.note("max residual 2D " + fmt(diff2) + ", 3D " + fmt(diff3));
    return c;
}

// 2. <+|e^{-i H_v tau}|+> from the joint propagator matches
//    cos(gamma tau sqrt(Omega Omega^dag)) to 1e-10 on all four couplings,
//    five random gamma*tau values each.
inline Check criterion_conditional_oracle() {
    Check c;
    double worst = 0.0;
    SplitMix64 rng(20240811);
    for (int which = 0; which < 4 && c.ok; ++which) {
        const CouplingScenario sc = [&]() {
            switch (which) {
                case 0: return CouplingScenario::qnd(0.2, 6);
                case 1: return CouplingScenario::blue_sideband(6);
                case 2: return CouplingScenario::second_red_2d(6);
                default: return CouplingScenario::second_red_3d(6);
            }
        }();
        const JointDynamics joint(sc);
        for (int k = 0; k < 5; ++k) {
            const double gt = 0.3 + 2.5 * rng.uniform();
            const Operator oracle = restrict_to(joint.plus_block(gt), sc.interior_basis());
            const Operator direct = conditional_operator(sc, gt);
            const double diff = max_abs_diff(oracle, direct);
            worst = std::max(worst, diff);
            c.require(diff <= 1e-10,
                      sc.name() + " at gamma_tau " + fmt(gt) + " deviates by " + fmt(diff));
        }
    }
    if (c.ok) c.note("worst oracle deviation " + fmt(worst));
    return c;
}

struct CatRun {
    double joint50 = 0.0;
    double fidelity5 = 0.0;
    double phase = 0.0;  // arg(c_{-4}/c_{+4}) of the distilled state
};

inline CatRun run_cat(double theta) {
    CouplingScenario sc = CouplingScenario::second_red_2d(6);
    const auto& basis = sc.interior_basis();
    const StateVector initial = rotated_fock(4, theta, basis);
    const StateVector target = cat_target(4, theta, basis);
    ProtocolConfig cfg{sc, kPi / std::sqrt(5.0), 50, initial, target, 1e-9};
    const DistillationRecord rec = run_postselected(cfg);

    CatRun out;
    out.joint50 = rec.joint_prob;
    out.fidelity5 = rec.fidelity_trace[4];
    const StateVector& final_state = rec.conditional_states.back();
    const Complex c_plus = inner(angular_eigenstate_2d(4, 4, basis), final_state);
    const Complex c_minus = inner(angular_eigenstate_2d(4, -4, basis), final_state);
    out.phase = std::arg(c_minus / c_plus);
    return out;
}

// 3. the 2D cat: quarter overlaps, efficiency 1/8, 95% fidelity by N = 5,
//    and the 2 n_T theta phase law on a theta grid.
inline Check criterion_cat_2d() {
    Check c;
    auto basis = FockBasis::build(2, Truncation::total_excitation(6));
    const StateVector fock40 = fock_state(basis, {4, 0});
    for (const int m : {4, -4}) {
        const double ov = std::abs(inner(angular_eigenstate_2d(4, m, basis), fock40));
        c.require(std::abs(ov - 0.25) <= 1e-10,
                  "overlap <4," + std::to_string(m) + "|4,0> = " + fmt(ov) + " (want 0.25)");
    }

    const CatRun base = run_cat(0.0);
    c.require(std::abs(base.joint50 - 0.125) <= 1e-3,
              "joint probability at N=50 is " + fmt(base.joint50) + " (want 0.125 +- 1e-3)");
    c.require(base.fidelity5 >= 0.95,
              "cat fidelity after 5 steps is " + fmt(base.fidelity5) + " (want >= 0.95)");

    for (const double theta : {kPi / 12.0, kPi / 8.0, kPi / 6.0}) {
        const CatRun run = run_cat(theta);
        double want = std::fmod(8.0 * theta, 2.0 * kPi);
        double got = run.phase < 0.0 ? run.phase + 2.0 * kPi : run.phase;
        c.require(std::abs(got - want) <= 1e-8, "distilled phase at theta=" + fmt(theta) + " is " +
                                                    fmt(got) + " (want " + fmt(want) + ")");
        c.require(std::abs(run.joint50 - 0.125) <= 1e-3,
                  "efficiency at theta=" + fmt(theta) + " is " + fmt(run.joint50));
        c.require(run.fidelity5 >= 0.95,
                  "fidelity at theta=" + fmt(theta) + " is " + fmt(run.fidelity5));
    }
    if (c.ok)
        c.note("efficiency " + fmt(base.joint50) + ", fidelity(5) " + fmt(base.fidelity5) +
               ", phase law holds on the theta grid");
    return c;
}

// 4. the 3D W-state: efficiency 1/3 and 96% fidelity by N = 5.
inline Check criterion_w_3d() {
    Check c;
    CouplingScenario sc = CouplingScenario::second_red_3d(4);
    const auto& basis = sc.interior_basis();
    std::vector<Complex> amps(static_cast<std::size_t>(basis->dim()));
    const double r = 1.0 / std::sqrt(3.0);
    amps[static_cast<std::size_t>(basis->index_of({2, 0, 0}))] = r;
    amps[static_cast<std::size_t>(basis->index_of({0, 2, 0}))] = r;
    amps[static_cast<std::size_t>(basis->index_of({0, 0, 2}))] = r;
    const StateVector w_state(basis, std::move(amps));

    ProtocolConfig cfg{sc, kPi / std::sqrt(5.0), 50, fock_state(basis, {2, 0, 0}), w_state, 1e-9};
    const DistillationRecord rec = run_postselected(cfg);
    c.require(std::abs(rec.joint_prob - 1.0 / 3.0) <= 1e-3,
              "efficiency is " + fmt(rec.joint_prob) + " (want 1/3 +- 1e-3)");
    c.require(rec.fidelity_trace[4] >= 0.96,
              "W-state fidelity after 5 steps is " + fmt(rec.fidelity_trace[4]) + " (want >= 0.96)");
    if (c.ok)
        c.note("efficiency " + fmt(rec.joint_prob) + ", fidelity(5) " + fmt(rec.fidelity_trace[4]));
    return c;
}

// 5. perfect squares: flat superposition n = 0..16, gamma*tau = 2 pi,
//    N = 40 -> residual non-square population below 1e-6.
inline Check criterion_perfect_squares() {
    Check c;
    CouplingScenario sc = CouplingScenario::blue_sideband(16);
    const auto& basis = sc.interior_basis();
    std::vector<Complex> amps(static_cast<std::size_t>(basis->dim()));
    for (int n = 0; n <= 16; ++n) amps[static_cast<std::size_t>(basis->index_of({n}))] = 1.0;
    ProtocolConfig cfg{sc, 2.0 * kPi, 40, StateVector::normalized(basis, std::move(amps)),
                       std::nullopt, 1e-9};
    const DistillationRecord rec = run_postselected(cfg);
    const StateVector& final_state = rec.conditional_states.back();
    double tail = 0.0;
    for (int i = 0; i < basis->dim(); ++i) {
        const int n = basis->occupation(i)[0];
        const int root = static_cast<int>(std::lround(std::sqrt(double(n))));
        if (root * root != n) tail += std::norm(final_state.amplitude(i));
    }
    c.require(tail < 1e-6, "non-square population after N=40 is " + fmt(tail) + " (want < 1e-6)");
    if (c.ok) c.note("non-square tail " + fmt(tail));
    return c;
}

// 6. QND selection of n = 2 at eta = 0.2: flat superposition n = 0..8,
//    gamma*tau = 2 pi / f(2, eta) -> population of |2> within 1e-4 of one
//    by N = 60.
inline Check criterion_qnd() {
    Check c;
    const double eta = 0.2;
    CouplingScenario sc = CouplingScenario::qnd(eta, 8);
    const auto& basis = sc.interior_basis();
    std::vector<Complex> amps(static_cast<std::size_t>(basis->dim()));
    for (int n = 0; n <= 8; ++n) amps[static_cast<std::size_t>(basis->index_of({n}))] = 1.0;
    const double gt = 2.0 * kPi / laguerre_f(2, eta);
    ProtocolConfig cfg{sc, gt, 60, StateVector::normalized(basis, std::move(amps)), std::nullopt,
                       1e-9};
    const DistillationRecord rec = run_postselected(cfg);
    const double pop2 =
        std::norm(rec.conditional_states.back().amplitude(basis->index_of({2})));
    c.require(std::abs(1.0 - pop2) <= 1e-4,
              "population of |2> after N=60 is " + fmt(pop2) + " (want within 1e-4 of 1)");
    if (c.ok) c.note("population " + fmt(pop2));
    return c;
}

// 7. efficiency-limit theorem: for random initial states the gap
//    |prod p_k - ||P_d phi||^2| sits below the leakage-derived bound at
//    N = 60 and shrinks monotonically over N = 5, 10, 20, 40, 60.
inline Check criterion_efficiency_limit() {
    Check c;
    CouplingScenario sc = CouplingScenario::second_red_2d(6);
    const auto& basis = sc.interior_basis();
    const double gt = kPi / std::sqrt(5.0);
    const DistillateProjector dp = distillate_projector(sc, gt, 1e-9);
    const Operator v = conditional_operator(sc, gt);

    SplitMix64 rng(777);
    double worst_gap = 0.0;
    for (int trial = 0; trial < 20 && c.ok; ++trial) {
        std::vector<Complex> amps(static_cast<std::size_t>(basis->dim()));
        for (Complex& z : amps) z = Complex{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        const StateVector phi = StateVector::normalized(basis, std::move(amps));
        const double overlap = dp.projector.apply(phi).norm_squared();

        const std::vector<int> checkpoints{5, 10, 20, 40, 60};
        std::vector<double> gaps;
        StateVector psi = phi;
        double joint = 1.0;
        for (int n = 1; n <= 60; ++n) {
            psi = v.apply(psi);
            joint *= psi.norm_squared();
            psi = psi.normalized();
            if (std::find(checkpoints.begin(), checkpoints.end(), n) != checkpoints.end())
                gaps.push_back(std::abs(joint - overlap));
        }
        const double bound =
            leakage_after_n(dp.resonance, 60) * leakage_after_n(dp.resonance, 60) * (1.0 - overlap) +
            1e-12;
        worst_gap = std::max(worst_gap, gaps.back());
        c.require(gaps.back() <= bound, "gap at N=60 is " + fmt(gaps.back()) + " above the bound " +
                                            fmt(bound) + " (trial " + std::to_string(trial) + ")");
        for (std::size_t k = 1; k < gaps.size(); ++k)
            c.require(gaps[k] <= gaps[k - 1] + 1e-12,
                      "gap not monotone at trial " + std::to_string(trial));
    }
    if (c.ok) c.note("worst gap at N=60 " + fmt(worst_gap));
    return c;
}

// 8. SU(2) suite: the closed-form overlap equals the amplitude sum to 1e-12
//    on 50 random labels, and <mu=+-i, j|tan theta, j> = e^{∓i 2 j theta}/2^j.
inline Check criterion_su2() {
    Check c;
    auto basis = FockBasis::build(2, Truncation::total_excitation(12));
    SplitMix64 rng(13);
    double worst = 0.0;
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        const int two_j = static_cast<int>(rng.next() % 13);
        auto draw = [&rng]() { return Complex{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0}; };
        const SU2Label l1 = SU2Label::finite(draw(), two_j);
        const SU2Label l2 = SU2Label::finite(draw(), two_j);
        const double diff =
            std::abs(su2_overlap(l1, l2) - inner(su2_state(l1, basis), su2_state(l2, basis)));
        worst = std::max(worst, diff);
        c.require(diff <= 1e-12, "closed form vs brute force differs by " + fmt(diff));
    }
    for (int two_j = 1; two_j <= 6 && c.ok; ++two_j) {
        const double j = two_j / 2.0;
        for (int step = 0; step <= 5; ++step) {
            const double theta = step * kPi / 12.0;
            const SU2Label rot = SU2Label::finite(std::tan(theta), two_j);
            const Complex got_plus = su2_overlap(SU2Label::finite(Complex{0.0, 1.0}, two_j), rot);
            const Complex got_minus = su2_overlap(SU2Label::finite(Complex{0.0, -1.0}, two_j), rot);
            const double diff =
                std::max(std::abs(got_plus - std::polar(std::pow(2.0, -j), -two_j * theta)),
                         std::abs(got_minus - std::polar(std::pow(2.0, -j), two_j * theta)));
            worst = std::max(worst, diff);
            c.require(diff <= 1e-12, "phase law fails at 2j=" + std::to_string(two_j) +
                                         ", theta=" + fmt(theta) + " by " + fmt(diff));
        }
    }
    if (c.ok) c.note("worst overlap deviation " + fmt(worst));
    return c;
}

// 9. Monte Carlo: the cat run at N = 50 with 1e5 trials lands within five
//    binomial standard deviations of 1/8, bitwise reproducibly.
inline Check criterion_monte_carlo() {
    Check c;
    CouplingScenario sc = CouplingScenario::second_red_2d(6);
    ProtocolConfig cfg{sc,
                       kPi / std::sqrt(5.0),
                       50,
                       fock_state(sc.interior_basis(), {4, 0}),
                       std::nullopt,
                       1e-9};
    const std::uint64_t trials = 100000;
    const TrajectoryEnsemble a = run_monte_carlo(cfg, trials, 42);
    const double p = 0.125;
    const double band = 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    c.require(std::abs(a.success_rate - p) <= band, "success rate " + fmt(a.success_rate) +
                                                        " outside 1/8 +- " + fmt(band));
    const TrajectoryEnsemble b = run_monte_carlo(cfg, trials, 42);
    c.require(a.successes == b.successes && a.failure_histogram == b.failure_histogram,
              "repeated run with the same seed differs");
    if (c.ok) c.note("success rate " + fmt(a.success_rate) + " within " + fmt(band) + " of 1/8");
    return c;
}

}  // namespace repro_detail

inline std::vector<CriterionResult> run_acceptance_suite() {
    using repro_detail::Check;
    const std::vector<std::pair<std::string, std::function<Check()>>> checks{
        {"operator identities (2D and 3D closed forms)", repro_detail::criterion_operator_identities},
        {"conditional-operator oracle (joint propagator)", repro_detail::criterion_conditional_oracle},
        {"2D angular-momentum cat (overlap, efficiency, fidelity, phase law)",
         repro_detail::criterion_cat_2d},
        {"3D W-state (efficiency 1/3, fidelity)", repro_detail::criterion_w_3d},
        {"perfect-square Fock distillation tail", repro_detail::criterion_perfect_squares},
        {"QND single-Fock selection", repro_detail::criterion_qnd},
        {"efficiency-limit theorem (gap bound, monotone)", repro_detail::criterion_efficiency_limit},
        {"SU(2) overlap suite", repro_detail::criterion_su2},
        {"Monte Carlo consistency and reproducibility", repro_detail::criterion_monte_carlo},
    };

    std::vector<CriterionResult> results;
    int index = 1;
    for (const auto& [name, fn] : checks) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        r.index = index++;
        r.name = name;
        try {
            const Check c = fn();
            r.passed = c.ok;
            r.detail = c.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace iondistill
