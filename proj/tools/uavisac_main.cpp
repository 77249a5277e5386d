// Command-line front-end: optimize / sweep / radar-sweep / validate-config.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavisac/harness.hpp"

namespace {

using namespace uavisac;

std::vector<harness::SolverKind> parse_solver_list(const std::vector<std::string>& names) {
    std::vector<harness::SolverKind> solvers;
    solvers.reserve(names.size());
    for (const std::string& name : names) solvers.push_back(harness::parse_solver(name));
    return solvers;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ISAC-enabled UAV offloading/tracking optimizer"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int threads = 1;
    app.add_option("--seed", seed, "RNG seed (default 1)");
    app.add_option("--out-dir", out_dir, "output directory (default .)");
    app.add_option("--threads", threads, "worker threads (default 1)")->check(CLI::PositiveNumber);

    // optimize
    auto* optimize = app.add_subcommand("optimize", "run one solver on a scenario");
    std::string opt_config;
    std::string opt_solver = "ga";
    std::vector<int> opt_resolution;
    bool opt_no_grid = false;
    optimize->add_option("config", opt_config, "scenario config file")->required();
    optimize->add_option("solver", opt_solver, "ga | pso | oracle | ga-fixed-beta | ga-fixed-xy");
    optimize->add_option("--resolution", opt_resolution,
                         "oracle lattice points per axis (1 or 3 numbers, default 101)")
        ->delimiter(',');
    optimize->add_flag("--no-grid-csv", opt_no_grid, "skip the oracle's full-grid CSV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "optimize across an axis of scenario values");
    std::string swp_config;
    std::string swp_axis = "uav_capacity";
    std::vector<double> swp_values;
    std::vector<std::string> swp_solvers{"ga"};
    std::vector<std::uint64_t> swp_seeds{1};
    std::vector<int> swp_resolution;
    sweep->add_option("config", swp_config, "scenario config file")->required();
    sweep->add_option("--axis", swp_axis, "uav_capacity | task_bits");
    sweep->add_option("--values", swp_values, "axis values, strictly increasing")
        ->required()
        ->delimiter(',');
    sweep->add_option("--solvers", swp_solvers, "solver list (default ga)")->delimiter(',');
    sweep->add_option("--seeds", swp_seeds, "seed list (default 1)")->delimiter(',');
    sweep->add_option("--resolution", swp_resolution, "oracle lattice for swept oracle runs")
        ->delimiter(',');

    // radar-sweep
    auto* radar = app.add_subcommand("radar-sweep", "Monte-Carlo MSE vs CRB over (L, SNR)");
    std::string rad_config;
    std::vector<std::size_t> rad_windows;
    std::vector<double> rad_snrs;
    int rad_trials = 1000;
    radar->add_option("config", rad_config, "scenario config file")->required();
    radar->add_option("--L", rad_windows, "correlation window lengths")->required()->delimiter(',');
    radar->add_option("--snr", rad_snrs, "per-sample radar SNR values")->required()->delimiter(',');
    radar->add_option("--trials", rad_trials, "trials per cell (default 1000)")
        ->check(CLI::PositiveNumber);

    // validate-config
    auto* validate = app.add_subcommand("validate-config", "parse and validate a config file");
    std::string val_config;
    validate->add_option("config", val_config, "scenario config file")->required();

    CLI11_PARSE(app, argc, argv);

    auto fill_resolution = [](const std::vector<int>& values) {
        oracle::GridResolution res;
        if (values.size() == 1) res = {values[0], values[0], values[0]};
        else if (values.size() == 3) res = {values[0], values[1], values[2]};
        else if (!values.empty())
            throw std::invalid_argument("--resolution takes 1 or 3 numbers");
        return res;
    };

    try {
        if (optimize->parsed()) {
            const LoadedConfig cfg = load_config(opt_config);
            harness::OptimizeOptions options;
            options.solver = harness::parse_solver(opt_solver);
            options.seed = seed;
            options.out_dir = out_dir;
            options.threads = threads;
            options.resolution = fill_resolution(opt_resolution);
            options.write_grid_csv = !opt_no_grid;
            harness::cmd_optimize(cfg, options, &std::cout);
        } else if (sweep->parsed()) {
            const LoadedConfig cfg = load_config(swp_config);
            harness::SweepOptions options;
            options.axis = harness::parse_axis(swp_axis);
            options.values = swp_values;
            options.solvers = parse_solver_list(swp_solvers);
            options.seeds = swp_seeds;
            options.out_dir = out_dir;
            options.threads = threads;
            options.resolution = fill_resolution(swp_resolution);
            harness::cmd_sweep(cfg, options, &std::cout);
        } else if (radar->parsed()) {
            const LoadedConfig cfg = load_config(rad_config);
            harness::RadarSweepOptions options;
            options.window_lengths = rad_windows;
            options.snr_values = rad_snrs;
            options.trials = rad_trials;
            options.seed = seed;
            options.out_dir = out_dir;
            options.threads = threads;
            harness::cmd_radar_sweep(cfg, options, &std::cout);
        } else if (validate->parsed()) {
            const LoadedConfig cfg = load_config(val_config);
            std::cout << "ok config_hash=" << cfg.config_hash << "\n";
        }
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const InfeasibleScenarioError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
