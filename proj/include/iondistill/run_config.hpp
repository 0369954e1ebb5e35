#pragma once
// Flat key = value experiment configuration: parsing with per-key error
// messages, validation of physically meaningful combinations, and canonical
// serialization (parse(serialize(c)) == c).

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "iondistill/scenarios.hpp"

namespace iondistill {

enum class RunMode { Postselect, MonteCarlo, Efficiency };

inline const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::Postselect: return "postselect";
        case RunMode::MonteCarlo: return "montecarlo";
        case RunMode::Efficiency: return "efficiency";
    }
    return "?";
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    CouplingKind scenario = CouplingKind::SecondRed2d;
    std::optional<double> eta;
    std::optional<double> theta;
    std::optional<int> n_total;
    std::optional<Occupation> initial_occupation;
    std::optional<std::pair<int, int>> initial_range;  // lo..hi flat superposition, single mode
    std::optional<double> gamma_tau;
    std::optional<double> target_eigenvalue;
    std::optional<int> l;
    int steps = 0;
    std::optional<int> truncation;  // N_use; defaults to initial excitation + 2
    RunMode mode = RunMode::Postselect;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    std::optional<std::string> output;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    int scenario_modes() const {
        switch (scenario) {
            case CouplingKind::Qnd:
            case CouplingKind::BlueSideband: return 1;
            case CouplingKind::SecondRed2d: return 2;
            case CouplingKind::SecondRed3d: return 3;
        }
        return 0;
    }

    int initial_excitation() const {
        if (initial_occupation) {
            int total = 0;
            for (int n : *initial_occupation) total += n;
            return total;
        }
        if (initial_range) return initial_range->second;
        if (n_total) return *n_total;
        return 0;
    }

    int resolved_truncation() const { return truncation.value_or(initial_excitation() + 2); }

    double resolved_gamma_tau() const {
        if (gamma_tau) return *gamma_tau;
        return choose_gamma_tau(*target_eigenvalue, *l);
    }
};

namespace config_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a real number, got '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("config key '" + key + "': expected a real number, got '" + value + "'");
    return out;
}

inline long long parse_integer(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const long long v = parse_integer(key, value);
    if (v < 0) throw ConfigError("config key '" + key + "': must be >= 0");
    return static_cast<std::uint64_t>(v);
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace config_detail

inline void validate(const RunConfig& c) {
    using config_detail::trim;
    if (c.steps < 1) throw ConfigError("config key 'steps': must be >= 1");
    if (c.trials < 1) throw ConfigError("config key 'trials': must be >= 1");
    if (c.tolerance <= 0.0 || c.tolerance >= 0.1)
        throw ConfigError("config key 'tolerance': must lie in (0, 0.1)");

    const bool is_qnd = c.scenario == CouplingKind::Qnd;
    if (is_qnd && !c.eta) throw ConfigError("config key 'eta': required for scenario qnd");
    if (!is_qnd && c.eta) throw ConfigError("config key 'eta': only valid for scenario qnd");
    if (c.eta && *c.eta <= 0.0) throw ConfigError("config key 'eta': must be positive");

    if (c.theta && c.scenario != CouplingKind::SecondRed2d)
        throw ConfigError("config key 'theta': only valid for scenario second_red_2d");
    if (c.theta && !c.n_total)
        throw ConfigError("config key 'n_total': required together with theta");
    if (c.n_total && !c.theta)
        throw ConfigError("config key 'n_total': only meaningful together with theta");
    if (c.n_total && *c.n_total < 0) throw ConfigError("config key 'n_total': must be >= 0");

    const int sources = (c.initial_occupation ? 1 : 0) + (c.initial_range ? 1 : 0) + (c.theta ? 1 : 0);
    if (sources == 0)
        throw ConfigError(
            "missing initial state: set initial_occupation (or theta with n_total)");
    if (sources > 1)
        throw ConfigError(
            "conflicting initial state: use exactly one of initial_occupation or theta/n_total");

    if (c.initial_occupation) {
        if (static_cast<int>(c.initial_occupation->size()) != c.scenario_modes())
            throw ConfigError("config key 'initial_occupation': expected " +
                              std::to_string(c.scenario_modes()) + " occupation number(s)");
        for (int n : *c.initial_occupation)
            if (n < 0) throw ConfigError("config key 'initial_occupation': entries must be >= 0");
    }
    if (c.initial_range) {
        if (c.scenario_modes() != 1)
            throw ConfigError(
                "config key 'initial_occupation': a lo..hi range needs a single-mode scenario");
        if (c.initial_range->first < 0 || c.initial_range->second < c.initial_range->first)
            throw ConfigError("config key 'initial_occupation': range must satisfy 0 <= lo <= hi");
    }

    const bool have_direct = c.gamma_tau.has_value();
    const bool have_target = c.target_eigenvalue.has_value() || c.l.has_value();
    if (have_direct && have_target)
        throw ConfigError("specify either gamma_tau or (target_eigenvalue, l), not both");
    if (!have_direct && !(c.target_eigenvalue && c.l))
        throw ConfigError("missing interaction time: set gamma_tau or (target_eigenvalue, l)");
    if (c.gamma_tau && *c.gamma_tau <= 0.0)
        throw ConfigError("config key 'gamma_tau': must be positive");
    if (c.target_eigenvalue && *c.target_eigenvalue <= 0.0)
        throw ConfigError("config key 'target_eigenvalue': must be positive");
    if (c.l && *c.l < 1) throw ConfigError("config key 'l': must be >= 1");

    if (c.truncation) {
        if (*c.truncation < 0) throw ConfigError("config key 'truncation': must be >= 0");
        if (*c.truncation < c.initial_excitation())
            throw ConfigError("config key 'truncation': must admit the initial state (need >= " +
                              std::to_string(c.initial_excitation()) + ")");
    }
}

inline RunConfig parse_config(const std::string& text) {
    using namespace config_detail;
    static const std::set<std::string> known{
        "scenario",  "eta",   "theta",      "n_total", "initial_occupation", "gamma_tau",
        "target_eigenvalue", "l", "steps", "truncation", "mode", "trials", "seed",
        "tolerance", "output"};

    RunConfig c;
    std::set<std::string> seen;
    bool scenario_set = false, steps_set = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed config line (expected key = value): '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError("duplicate config key '" + key + "'");
        if (value.empty()) throw ConfigError("config key '" + key + "': empty value");

        if (key == "scenario") {
            if (value == "qnd") c.scenario = CouplingKind::Qnd;
            else if (value == "blue_sideband") c.scenario = CouplingKind::BlueSideband;
            else if (value == "second_red_2d") c.scenario = CouplingKind::SecondRed2d;
            else if (value == "second_red_3d") c.scenario = CouplingKind::SecondRed3d;
            else
                throw ConfigError("config key 'scenario': unknown scenario '" + value +
                                  "' (expected qnd | blue_sideband | second_red_2d | second_red_3d)");
            scenario_set = true;
        } else if (key == "eta") {
            c.eta = parse_double(key, value);
        } else if (key == "theta") {
            c.theta = parse_double(key, value);
        } else if (key == "n_total") {
            c.n_total = static_cast<int>(parse_integer(key, value));
        } else if (key == "initial_occupation") {
            if (const auto dots = value.find(".."); dots != std::string::npos) {
                const int lo = static_cast<int>(parse_integer(key, trim(value.substr(0, dots))));
                const int hi = static_cast<int>(parse_integer(key, trim(value.substr(dots + 2))));
                c.initial_range = {lo, hi};
            } else {
                Occupation occ;
                std::string item;
                std::istringstream items(value);
                while (std::getline(items, item, ','))
                    occ.push_back(static_cast<int>(parse_integer(key, trim(item))));
                c.initial_occupation = std::move(occ);
            }
        } else if (key == "gamma_tau") {
            c.gamma_tau = parse_double(key, value);
        } else if (key == "target_eigenvalue") {
            c.target_eigenvalue = parse_double(key, value);
        } else if (key == "l") {
            c.l = static_cast<int>(parse_integer(key, value));
        } else if (key == "steps") {
            c.steps = static_cast<int>(parse_integer(key, value));
            steps_set = true;
        } else if (key == "truncation") {
            c.truncation = static_cast<int>(parse_integer(key, value));
        } else if (key == "mode") {
            if (value == "postselect") c.mode = RunMode::Postselect;
            else if (value == "montecarlo") c.mode = RunMode::MonteCarlo;
            else if (value == "efficiency") c.mode = RunMode::Efficiency;
            else
                throw ConfigError("config key 'mode': unknown mode '" + value +
                                  "' (expected postselect | montecarlo | efficiency)");
        } else if (key == "trials") {
            c.trials = parse_u64(key, value);
        } else if (key == "seed") {
            c.seed = parse_u64(key, value);
        } else if (key == "tolerance") {
            c.tolerance = parse_double(key, value);
        } else if (key == "output") {
            c.output = value;
        }
    }

    if (!scenario_set || !steps_set) {
        std::string missing;
        if (!scenario_set) missing += " scenario";
        if (!steps_set) missing += " steps";
        if (!c.initial_occupation && !c.initial_range && !c.theta) missing += " initial_occupation";
        if (!c.gamma_tau && !c.target_eigenvalue) missing += " gamma_tau|target_eigenvalue";
        throw ConfigError("missing required config keys:" + missing);
    }
    validate(c);
    return c;
}

inline std::string serialize_config(const RunConfig& c) {
    using config_detail::format_double;
    std::ostringstream out;
    out << "scenario = " << coupling_name(c.scenario) << "\n";
    if (c.eta) out << "eta = " << format_double(*c.eta) << "\n";
    if (c.theta) out << "theta = " << format_double(*c.theta) << "\n";
    if (c.n_total) out << "n_total = " << *c.n_total << "\n";
    if (c.initial_occupation) {
        out << "initial_occupation = ";
        for (std::size_t i = 0; i < c.initial_occupation->size(); ++i)
            out << (i ? "," : "") << (*c.initial_occupation)[i];
        out << "\n";
    }
    if (c.initial_range)
        out << "initial_occupation = " << c.initial_range->first << ".." << c.initial_range->second
            << "\n";
    if (c.gamma_tau) out << "gamma_tau = " << format_double(*c.gamma_tau) << "\n";
    if (c.target_eigenvalue)
        out << "target_eigenvalue = " << format_double(*c.target_eigenvalue) << "\n";
    if (c.l) out << "l = " << *c.l << "\n";
    out << "steps = " << c.steps << "\n";
    if (c.truncation) out << "truncation = " << *c.truncation << "\n";
    out << "mode = " << run_mode_name(c.mode) << "\n";
    out << "trials = " << c.trials << "\n";
    out << "seed = " << c.seed << "\n";
    out << "tolerance = " << format_double(c.tolerance) << "\n";
    if (c.output) out << "output = " << *c.output << "\n";
    return out.str();
}

}  // namespace iondistill
