// Scenario-driven front end: run single evaluations or parameter sweeps of
// the phonon-metrology pipeline and emit plot-ready CSV/JSON tables.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gwbec/sweep.hpp"

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string output_override;
    std::string qfi_method_override;
    int workers = 0;
    bool seed_less = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("scenario", args.scenario_path, "scenario file")->required();
    cmd->add_option("--workers", args.workers, "worker thread count (0 = default)");
    cmd->add_option("--output", args.output_override, "override the scenario output path");
    cmd->add_option("--qfi-method", args.qfi_method_override,
                    "override qfi_method: fidelity_fd | closed_derived | closed_paper");
    cmd->add_flag("--seed-less", args.seed_less,
                  "assert the run involves no randomness (always true; documents intent)");
}

gwbec::Scenario load(const CommonArgs& args) {
    gwbec::Scenario sc = gwbec::load_scenario(args.scenario_path);
    if (!args.qfi_method_override.empty()) {
        const std::string& m = args.qfi_method_override;
        if (m == "fidelity_fd") sc.qfi_method = gwbec::QfiMethod::fidelity_fd;
        else if (m == "closed_derived") sc.qfi_method = gwbec::QfiMethod::closed_derived;
        else if (m == "closed_paper") sc.qfi_method = gwbec::QfiMethod::closed_paper;
        else throw std::runtime_error("unknown --qfi-method: " + m);
    }
    return sc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BEC phonon gravitational-wave metrology pipeline"};
    app.require_subcommand(1);

    CommonArgs run_args, validate_args, grid_args;
    CLI::App* run = app.add_subcommand("run", "evaluate a scenario (single point or sweep)");
    add_common(run, run_args);
    CLI::App* validate = app.add_subcommand("validate", "dry-run report without computing");
    add_common(validate, validate_args);
    CLI::App* grid = app.add_subcommand("sweep-grid", "cartesian sweep over [sweep] x [sweep2]");
    add_common(grid, grid_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const gwbec::Scenario sc = load(run_args);
            const auto points = gwbec::run_sweep(sc, gwbec::ExecutionMode::parallel,
                                                 run_args.workers);
            gwbec::write_output(sc, points, run_args.output_override);
            std::cout << points.size() << " point(s) written to "
                      << (run_args.output_override.empty() ? sc.output_path
                                                           : run_args.output_override)
                      << "\n";
        } else if (validate->parsed()) {
            const gwbec::Scenario sc = load(validate_args);
            std::cout << gwbec::validate_scenario_report(sc);
        } else if (grid->parsed()) {
            const gwbec::Scenario sc = load(grid_args);
            const auto points = gwbec::run_sweep_grid(sc, gwbec::ExecutionMode::parallel,
                                                      grid_args.workers);
            gwbec::write_output(sc, points, grid_args.output_override, /*grid=*/true);
            std::cout << points.size() << " point(s) written to "
                      << (grid_args.output_override.empty() ? sc.output_path
                                                            : grid_args.output_override)
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
