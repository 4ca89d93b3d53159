// gpdo <command> --config <path> --out <dir> [--levels k] [--seed n]
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or config error.

#include "gpdo/error.hpp"
#include "gpdo/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace {

std::string file_stem(const std::string& command)
{
    return command == "all" ? "all-checks" : command;
}

void print_summary(const gpdo::ExperimentReport& report)
{
    auto line = [](const gpdo::CheckResult& c, const std::string& prefix) {
        std::printf("%s %-58s residual %.3e  tol %.1e\n", c.pass ? "PASS" : "FAIL", (prefix + c.name).c_str(),
                    c.residual, c.tolerance);
    };
    for (const auto& level : report.trajectory)
        for (const auto& c : level.checks) line(c, "L" + std::to_string(level.level) + " ");
    for (const auto& c : report.checks) line(c, "");
    std::printf("%s: %s (%.2f s)\n", report.experiment.c_str(), report.pass() ? "pass" : "FAIL", report.seconds);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification experiments for the group pseudo-differential calculus"};
    std::string command;
    std::string config_path;
    std::string out_dir;
    std::optional<int> levels;
    std::optional<std::uint64_t> seed;

    std::string names;
    for (const auto& n : gpdo::command_names()) names += (names.empty() ? "" : ", ") + n;
    app.add_option("command", command, "One of: " + names)->required()->check(CLI::IsMember(gpdo::command_names()));
    app.add_option("--config", config_path, "Config JSON")->required();
    app.add_option("--out", out_dir, "Directory for the report files")->required();
    app.add_option("--levels", levels, "Run a refinement sweep over this many grid levels (>= 2)");
    app.add_option("--seed", seed, "Override the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (levels && *levels < 2) throw gpdo::ConfigError("--levels must be at least 2");
        auto config = gpdo::load_config(config_path);
        if (seed) config.seed = *seed;

        const auto report = levels ? gpdo::refine_sweep(command, config, *levels) : gpdo::run(command, config);
        const std::filesystem::path out(out_dir);
        gpdo::write_atomic(out / (file_stem(command) + ".json"), report.to_json());
        if (levels) gpdo::write_atomic(out / (file_stem(command) + "-refinement.csv"), report.trajectory_csv());
        print_summary(report);
        return report.pass() ? 0 : 1;
    } catch (const gpdo::ConfigError& e) {
        std::cerr << "gpdo: config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gpdo: " << e.what() << '\n';
        return 2;
    }
}
