// Scenario-driven front end: loads a declarative scenario file, runs the
// requested mode and prints the report.
//
// Exit codes: 0 all checks passed / coincidence found; 1 a check failed or
// the iteration did not converge; 2 input error; 3 contradiction.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coincide/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coincidence and common fixed point toolkit"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string report_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;

    CLI::App* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("file", scenario_path, "scenario file")->required();
    run->add_option("--report", report_path, "also write the report to this path");
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt =
        run->add_option("--seed", seed_value, "override the scenario seed");
    run->add_flag("--quiet", quiet, "suppress the report on stdout");

    CLI11_PARSE(app, argc, argv);

    if (*seed_opt) seed = seed_value;
    coincide::ScenarioResult result = coincide::run_scenario_file(scenario_path, seed);

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "error: cannot write report to '" << report_path << "'\n";
            return 2;
        }
        out << result.report;
    }
    if (!quiet) std::cout << result.report;
    return result.exit_code;
}
