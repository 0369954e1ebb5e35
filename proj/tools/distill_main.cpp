// distill: measurement-conditioned distillation of trapped-ion motional
// states.
//
//   distill run <config>   execute one experiment described by a key=value
//                          config file and write the results
//   distill reproduce      run the built-in presets and the full suite of
//                          analytic cross-checks

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "iondistill/reproduction.hpp"
#include "iondistill/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string csv_path_for(const std::string& json_path) {
    const auto dot = json_path.find_last_of('.');
    const auto slash = json_path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return json_path + ".csv";
    return json_path.substr(0, dot) + ".csv";
}

int do_run(const std::string& config_path, const std::string& output_flag,
           const std::string& format, std::optional<std::uint64_t> seed,
           std::optional<std::uint64_t> trials, bool quiet) {
    iondistill::RunConfig cfg = iondistill::parse_config(read_file(config_path));
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (!output_flag.empty()) cfg.output = output_flag;

    const iondistill::RunOutcome outcome = iondistill::execute_run(cfg);
    const std::string out_path = cfg.output.value_or("results.json");
    iondistill::write_text_file(out_path, outcome.results.dump(2) + "\n");
    if (format == "csv")
        iondistill::write_text_file(csv_path_for(out_path),
                                    iondistill::render_csv(outcome.results));

    if (outcome.exit_code != 0) std::cerr << "distill: " << outcome.message << "\n";
    if (!quiet) {
        std::cout << "scenario " << outcome.results["config"]["scenario"].get<std::string>()
                  << ", gamma_tau " << outcome.results["gamma_tau"].get<double>() << "\n";
        if (outcome.results.contains("joint_prob"))
            std::cout << "joint success probability " << outcome.results["joint_prob"].get<double>()
                      << "\n";
        if (outcome.results.contains("success_rate"))
            std::cout << "Monte Carlo success rate " << outcome.results["success_rate"].get<double>()
                      << "\n";
        std::cout << "results written to " << out_path << "\n";
    }
    return outcome.exit_code;
}

int do_reproduce(const std::string& output_dir, bool quiet) {
    using clock = std::chrono::steady_clock;
    int failures = 0;

    if (!quiet) std::printf("-- presets --\n");
    for (const auto& [name, text] : iondistill::presets()) {
        const auto start = clock::now();
        iondistill::RunConfig cfg = iondistill::parse_config(text);
        const iondistill::RunOutcome outcome = iondistill::execute_run(cfg);
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        if (!output_dir.empty())
            iondistill::write_text_file(output_dir + "/" + name + ".json",
                                        outcome.results.dump(2) + "\n");
        if (!quiet) {
            std::printf("%-12s exit %d, %.2fs", name.c_str(), outcome.exit_code, secs);
            if (outcome.results.contains("joint_prob"))
                std::printf(", joint prob %.6f", outcome.results["joint_prob"].get<double>());
            std::printf("\n");
        }
        if (outcome.exit_code != 0) ++failures;
    }

    if (!quiet) std::printf("-- checks --\n");
    const auto results = iondistill::run_acceptance_suite();
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::printf("[%s] %d. %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.index, r.name.c_str(),
                    r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-conditioned distillation of trapped-ion motional states"};
    app.require_subcommand(1);

    std::string config_path, output, format = "json", reproduce_dir;
    std::optional<std::uint64_t> seed, trials;
    bool quiet = false;

    CLI::App* run = app.add_subcommand("run", "execute one experiment from a config file");
    run->add_option("config", config_path, "key = value config file")->required();
    run->add_option("--output", output, "results file path (default from config, else results.json)");
    run->add_option("--format", format, "json writes the results file; csv also writes the per-step trace")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--seed", seed, "override the Monte Carlo seed");
    run->add_option("--trials", trials, "override the Monte Carlo trial count");
    run->add_flag("--quiet", quiet, "suppress the stdout summary");

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "run all presets and analytic cross-checks");
    reproduce->add_option("--output", reproduce_dir, "directory for per-preset result files");
    reproduce->add_flag("--quiet", quiet, "print only the pass/fail lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(config_path, output, format, seed, trials, quiet);
        return do_reproduce(reproduce_dir, quiet);
    } catch (const std::exception& e) {
        std::cerr << "distill: " << e.what() << "\n";
        return 1;
    }
}
