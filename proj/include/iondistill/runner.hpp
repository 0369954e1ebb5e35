#pragma once
// Turns a RunConfig into an executed experiment: resolves the scenario,
// initial state and gamma*tau, picks the distillate target, runs the
// selected mode, and renders the machine-readable results (a JSON document
// plus an optional CSV of the per-step trace).

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "iondistill/distillation.hpp"
#include "iondistill/run_config.hpp"

namespace iondistill {

using ordered_json = nlohmann::ordered_json;

inline CouplingScenario make_scenario(const RunConfig& c) {
    const int n_use = c.resolved_truncation();
    switch (c.scenario) {
        case CouplingKind::Qnd: return CouplingScenario::qnd(*c.eta, n_use);
        case CouplingKind::BlueSideband: return CouplingScenario::blue_sideband(n_use);
        case CouplingKind::SecondRed2d: return CouplingScenario::second_red_2d(n_use);
        case CouplingKind::SecondRed3d: return CouplingScenario::second_red_3d(n_use);
    }
    throw std::logic_error("make_scenario: unreachable");
}

inline StateVector make_initial_state(const RunConfig& c, const CouplingScenario& sc) {
    const auto& basis = sc.interior_basis();
    if (c.initial_occupation) return fock_state(basis, *c.initial_occupation);
    if (c.initial_range) {
        std::vector<Complex> a(static_cast<std::size_t>(basis->dim()));
        for (int n = c.initial_range->first; n <= c.initial_range->second; ++n)
            a[static_cast<std::size_t>(basis->index_of({n}))] = 1.0;
        return StateVector::normalized(basis, std::move(a));
    }
    return rotated_fock(*c.n_total, *c.theta, basis);
}

namespace runner_detail {

inline ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["scenario"] = coupling_name(c.scenario);
    if (c.eta) j["eta"] = *c.eta;
    if (c.theta) j["theta"] = *c.theta;
    if (c.n_total) j["n_total"] = *c.n_total;
    if (c.initial_occupation) j["initial_occupation"] = *c.initial_occupation;
    if (c.initial_range)
        j["initial_occupation"] =
            std::to_string(c.initial_range->first) + ".." + std::to_string(c.initial_range->second);
    if (c.gamma_tau) j["gamma_tau"] = *c.gamma_tau;
    if (c.target_eigenvalue) j["target_eigenvalue"] = *c.target_eigenvalue;
    if (c.l) j["l"] = *c.l;
    j["steps"] = c.steps;
    j["truncation"] = c.resolved_truncation();
    j["mode"] = run_mode_name(c.mode);
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance;
    return j;
}

inline ordered_json resonance_json(const ResonantSet& rs) {
    ordered_json j;
    j["gamma_tau"] = rs.gamma_tau;
    j["tolerance"] = rs.tolerance;
    j["leakage_bound"] = rs.leakage_bound;
    j["members"] = ordered_json::array();
    for (const ResonantMember& m : rs.members) {
        ordered_json item;
        item["index"] = m.index;
        item["eigenvalue"] = m.eigenvalue;
        item["l"] = m.l;
        item["parity"] = m.parity;
        j["members"].push_back(item);
    }
    return j;
}

inline ordered_json state_json(const StateVector& v) {
    ordered_json j = ordered_json::array();
    for (int i = 0; i < v.dim(); ++i) {
        const Complex z = v.amplitude(i);
        ordered_json item;
        item["occupation"] = v.basis()->occupation(i);
        item["amplitude"] = {std::real(z), std::imag(z)};
        j.push_back(item);
    }
    return j;
}

}  // namespace runner_detail

struct RunOutcome {
    int exit_code = 0;  // 0 done, 2 distillate absent from the initial state
    std::string message;
    ordered_json results;
};

inline RunOutcome execute_run(const RunConfig& cfg) {
    validate(cfg);
    const CouplingScenario sc = make_scenario(cfg);
    const double gt = cfg.resolved_gamma_tau();
    const StateVector initial = make_initial_state(cfg, sc);

    RunOutcome out;
    ordered_json& res = out.results;
    res["config"] = runner_detail::config_json(cfg);
    res["gamma_tau"] = gt;

    const DistillateProjector dp = distillate_projector(sc, gt, cfg.tolerance);
    res["resonant_set"] = runner_detail::resonance_json(dp.resonance);
    res["parity_all_even"] = dp.resonance.all_even();
    const StateVector projected = dp.projector.apply(initial);
    const double overlap = projected.norm_squared();
    res["distillate_overlap"] = overlap;

    ProtocolConfig pc{sc, gt, cfg.steps, initial, std::nullopt, cfg.tolerance};
    // fidelity is traced against the protocol's own fixed point P_d|phi_0>
    if (overlap > kAbsentThreshold) pc.target = projected.normalized();

    try {
        if (cfg.mode == RunMode::MonteCarlo) {
            const std::vector<double> probs = success_branch_probabilities(pc);
            const TrajectoryEnsemble ens = run_monte_carlo(pc, cfg.trials, cfg.seed);
            double joint = 1.0;
            for (double p : probs) joint *= p;
            res["per_step_probs"] = probs;
            res["joint_prob"] = joint;
            res["trials"] = ens.trials;
            res["seed"] = ens.seed;
            res["successes"] = ens.successes;
            res["success_rate"] = ens.success_rate;
            res["failure_histogram"] = ens.failure_histogram;
        } else {
            const DistillationRecord rec = run_postselected(pc);
            res["per_step_probs"] = rec.per_step_probs;
            res["joint_prob"] = rec.joint_prob;
            res["fidelity_trace"] = rec.fidelity_trace;
            if (cfg.mode == RunMode::Efficiency)
                res["efficiency_gap"] = std::abs(rec.joint_prob - rec.distillate_overlap);
            res["final_state"] = runner_detail::state_json(rec.conditional_states.back());
        }
    } catch (const DistillateAbsentError& err) {
        out.exit_code = 2;
        out.message = err.what();
        res["error"] = err.what();
    }
    return out;
}

// step, step_prob, joint_prob, fidelity rows of the postselected trace
inline std::string render_csv(const ordered_json& results) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,step_prob,joint_prob,fidelity\n";
    if (!results.contains("per_step_probs")) return csv.str();
    const auto& probs = results["per_step_probs"];
    const bool has_fid = results.contains("fidelity_trace") &&
                         results["fidelity_trace"].size() == probs.size();
    double joint = 1.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        joint *= probs[k].get<double>();
        csv << (k + 1) << ',' << probs[k].get<double>() << ',' << joint << ',';
        if (has_fid) csv << results["fidelity_trace"][k].get<double>();
        csv << '\n';
    }
    return csv.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

}  // namespace iondistill
