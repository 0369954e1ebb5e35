#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "iondistill/presets.hpp"
#include "iondistill/reproduction.hpp"
#include "iondistill/runner.hpp"

using namespace iondistill;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    EXPECT_TRUE(in.good()) << path;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TEST(ParseConfig, CatPresetResolvesToPiOverSqrt5) {
    const RunConfig cfg = parse_config(presets().at("cat2d"));
    EXPECT_EQ(cfg.scenario, CouplingKind::SecondRed2d);
    EXPECT_EQ(cfg.steps, 50);
    ASSERT_TRUE(cfg.target_eigenvalue && cfg.l);
    EXPECT_NEAR(cfg.resolved_gamma_tau(), std::numbers::pi / std::sqrt(5.0), 1e-15);
    EXPECT_EQ(cfg.resolved_truncation(), 6);  // initial excitation 4 plus 2
    EXPECT_EQ(cfg.initial_occupation, Occupation({4, 0}));
}

TEST(ParseConfig, EmptyTextListsRequiredKeys) {
    try {
        parse_config("");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("scenario"), std::string::npos);
        EXPECT_NE(msg.find("steps"), std::string::npos);
        EXPECT_NE(msg.find("initial_occupation"), std::string::npos);
        EXPECT_NE(msg.find("gamma_tau"), std::string::npos);
    }
}

TEST(ParseConfig, RejectsBadValuesWithKeyNames) {
    const std::string base =
        "scenario = second_red_2d\ninitial_occupation = 4,0\ngamma_tau = 1.0\nsteps = 5\n";

    auto expect_error_mentioning = [](const std::string& text, const std::string& needle) {
        try {
            parse_config(text);
            FAIL() << "expected ConfigError mentioning " << needle;
        } catch (const ConfigError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };

    expect_error_mentioning(
        "scenario = second_red_2d\ninitial_occupation = 4,0\ngamma_tau = 1.0\nsteps = 0\n", "steps");
    expect_error_mentioning(base + "bogus_key = 1\n", "bogus_key");
    expect_error_mentioning(
        "scenario = second_red_2d\ninitial_occupation = 4,0\ngamma_tau = frog\nsteps = 5\n",
        "gamma_tau");
    expect_error_mentioning(base + "eta = 0.2\n", "eta");
    expect_error_mentioning(
        "scenario = second_red_2d\ninitial_occupation = 4,0,1\ngamma_tau = 1.0\nsteps = 5\n",
        "initial_occupation");
    expect_error_mentioning(
        "scenario = second_red_2d\ninitial_occupation = 0..4\ngamma_tau = 1.0\nsteps = 5\n",
        "initial_occupation");
    expect_error_mentioning(base + "gamma_tau = 2.0\n", "duplicate");
    expect_error_mentioning(base + "target_eigenvalue = 20\nl = 2\n", "either");
    expect_error_mentioning(base + "truncation = 2\n", "truncation");
    expect_error_mentioning(base + "tolerance = 0.5\n", "tolerance");
}

TEST(ParseConfig, RoundTripsThroughSerialize) {
    for (const auto& [name, text] : presets()) {
        const RunConfig cfg = parse_config(text);
        const RunConfig again = parse_config(serialize_config(cfg));
        EXPECT_EQ(cfg, again) << name;
    }
    // a config exercising the remaining keys
    RunConfig cfg = parse_config(
        "scenario = qnd\neta = 0.25\ninitial_occupation = 3\ngamma_tau = 2.125\nsteps = 7\n"
        "truncation = 9\nmode = montecarlo\ntrials = 123\nseed = 77\ntolerance = 1e-8\n"
        "output = somewhere.json\n");
    EXPECT_EQ(cfg, parse_config(serialize_config(cfg)));
}

TEST(PresetFiles, MatchEmbeddedText) {
    for (const auto& [name, text] : presets())
        EXPECT_EQ(slurp(std::string(IONDISTILL_PRESET_DIR) + "/" + name + ".cfg"), text) << name;
}

TEST(Runner, CatPresetReproducesTheHeadlineNumbers) {
    const RunOutcome out = execute_run(parse_config(presets().at("cat2d")));
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_NEAR(out.results["joint_prob"].get<double>(), 0.125, 1e-3);
    EXPECT_NEAR(out.results["distillate_overlap"].get<double>(), 0.125, 1e-10);
    EXPECT_GE(out.results["fidelity_trace"][4].get<double>(), 0.95);
    ASSERT_EQ(out.results["resonant_set"]["members"].size(), 2u);
    EXPECT_NEAR(out.results["resonant_set"]["members"][0]["eigenvalue"].get<double>(), 20.0, 1e-9);
    EXPECT_TRUE(out.results["parity_all_even"].get<bool>());
}

TEST(Runner, WPresetReachesOneThird) {
    const RunOutcome out = execute_run(parse_config(presets().at("w3d")));
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_NEAR(out.results["joint_prob"].get<double>(), 1.0 / 3.0, 1e-3);
    EXPECT_GE(out.results["fidelity_trace"][4].get<double>(), 0.96);
}

TEST(Runner, MonteCarloMode50k) {
    RunConfig cfg = parse_config(presets().at("cat2d"));
    cfg.mode = RunMode::MonteCarlo;
    cfg.trials = 50000;
    cfg.seed = 42;
    const RunOutcome out = execute_run(cfg);
    EXPECT_EQ(out.exit_code, 0);
    const double rate = out.results["success_rate"].get<double>();
    EXPECT_NEAR(rate, 0.125, 5.0 * std::sqrt(0.125 * 0.875 / 50000.0));
    std::uint64_t hist_total = 0;
    for (const auto& h : out.results["failure_histogram"]) hist_total += h.get<std::uint64_t>();
    EXPECT_EQ(hist_total + out.results["successes"].get<std::uint64_t>(), 50000u);
}

TEST(Runner, EfficiencyModeReportsGap) {
    RunConfig cfg = parse_config(presets().at("cat2d"));
    cfg.mode = RunMode::Efficiency;
    const RunOutcome out = execute_run(cfg);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_LE(out.results["efficiency_gap"].get<double>(), 1e-3);
}

TEST(Runner, DistillateAbsentExitCode) {
    // cos(gamma tau) = 0 on the only populated level
    RunConfig cfg = parse_config(
        "scenario = blue_sideband\ninitial_occupation = 1\ngamma_tau = 1.5707963267948966\n"
        "steps = 3\n");
    const RunOutcome out = execute_run(cfg);
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_TRUE(out.results.contains("error"));
}

TEST(Runner, DeterministicResultBytes) {
    RunConfig cfg = parse_config(presets().at("cat2d-theta"));
    cfg.mode = RunMode::MonteCarlo;
    cfg.trials = 2000;
    cfg.seed = 9;
    const std::string a = execute_run(cfg).results.dump(2);
    const std::string b = execute_run(cfg).results.dump(2);
    EXPECT_EQ(a, b);
}

TEST(Runner, CsvTraceMatchesJson) {
    const RunOutcome out = execute_run(parse_config(presets().at("cat2d")));
    const std::string csv = render_csv(out.results);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "step,step_prob,joint_prob,fidelity");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    EXPECT_EQ(rows, 50);
}

TEST(Runner, SquaresPresetSupport) {
    const RunOutcome out = execute_run(parse_config(presets().at("squares")));
    EXPECT_EQ(out.exit_code, 0);
    // the resonant set is exactly the perfect squares up to 16
    std::vector<double> members;
    for (const auto& m : out.results["resonant_set"]["members"])
        members.push_back(m["eigenvalue"].get<double>());
    std::sort(members.begin(), members.end());
    ASSERT_EQ(members.size(), 5u);
    const std::vector<double> want{0.0, 1.0, 4.0, 9.0, 16.0};
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(members[k], want[k], 1e-9);
}

TEST(Runner, QndPresetSelectsTheTargetLevel) {
    const RunOutcome out = execute_run(parse_config(presets().at("qnd")));
    EXPECT_EQ(out.exit_code, 0);
    ASSERT_EQ(out.results["resonant_set"]["members"].size(), 1u);
    const double eigen = out.results["resonant_set"]["members"][0]["eigenvalue"].get<double>();
    EXPECT_NEAR(eigen, std::pow(laguerre_f(2, 0.2), 2), 1e-9);
    EXPECT_NEAR(out.results["distillate_overlap"].get<double>(), 1.0 / 9.0, 1e-10);
}

}  // namespace
