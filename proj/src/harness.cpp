#include "uavisac/harness.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "uavisac/csv.hpp"

namespace uavisac::harness {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "'");
}

std::string provenance(const LoadedConfig& cfg, std::uint64_t seed) {
    return "config_hash=" + cfg.config_hash + " seed=" + std::to_string(seed);
}

json evaluation_json(const model::Evaluation& ev) {
    return json{{"d_ue", ev.d_ue},
                {"d_tar", ev.d_tar},
                {"h_ue", ev.h_ue},
                {"h_rad", ev.h_rad},
                {"rate", ev.rate},
                {"t_local", ev.latency.t_local},
                {"t_com", ev.latency.t_com},
                {"t_comp_ue", ev.latency.t_comp_ue},
                {"t_off", ev.latency.t_off},
                {"t_total", ev.latency.t_total},
                {"c_com", ev.cost.c_com},
                {"c_comp", ev.cost.c_comp},
                {"c_total", ev.cost.c_total},
                {"gamma_rad", ev.gamma_rad},
                {"crb", ev.crb},
                {"objective", ev.objective},
                {"feasible", ev.feasible}};
}

void write_history_csv(const std::string& path, const LoadedConfig& cfg, std::uint64_t seed,
                       const SolverRun& run) {
    CsvWriter csv(path, provenance(cfg, seed),
                  {"generation", "best_z", "mean_z", "best_beta", "best_x", "best_y",
                   "feasible_count"});
    for (const GenerationStats& st : run.history) {
        csv.row({std::to_string(st.generation), csv_number(st.best_z), csv_number(st.mean_z),
                 csv_number(st.best.beta), csv_number(st.best.x), csv_number(st.best.y),
                 std::to_string(st.feasible_count)});
    }
}

SolverRun run_solver(const LoadedConfig& cfg, SolverKind kind, std::uint64_t seed,
                     int threads) {
    switch (kind) {
        case SolverKind::ga: {
            ga::GaConfig g = cfg.ga;
            g.rng_seed = seed;
            g.threads = threads;
            return ga::run_ga(cfg.scenario, g);
        }
        case SolverKind::ga_fixed_beta: {
            ga::GaConfig g = cfg.ga;
            g.rng_seed = seed;
            g.threads = threads;
            return ga::run_ga(cfg.scenario, g, ga::FrozenGenes{cfg.ablation.fixed_beta, {}, {}});
        }
        case SolverKind::ga_fixed_xy: {
            ga::GaConfig g = cfg.ga;
            g.rng_seed = seed;
            g.threads = threads;
            return ga::run_ga(cfg.scenario, g,
                              ga::FrozenGenes{{}, cfg.ablation.fixed_x, cfg.ablation.fixed_y});
        }
        case SolverKind::pso: {
            pso::PsoConfig p = cfg.pso;
            p.rng_seed = seed;
            return pso::run_pso(cfg.scenario, p);
        }
        case SolverKind::oracle:
            break;
    }
    throw std::logic_error("run_solver: oracle handled separately");
}

/// Runs fn(i) for i in [0, n) on a bounded pool; fn must only write state
/// owned by index i. A failing cell does not tear down the process: the
/// lowest-index exception is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::max(threads, 1), n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const std::exception_ptr& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace

SolverKind parse_solver(const std::string& name) {
    if (name == "ga") return SolverKind::ga;
    if (name == "pso") return SolverKind::pso;
    if (name == "oracle") return SolverKind::oracle;
    if (name == "ga-fixed-beta") return SolverKind::ga_fixed_beta;
    if (name == "ga-fixed-xy") return SolverKind::ga_fixed_xy;
    throw std::invalid_argument("unknown solver '" + name +
                                "' (expected ga, pso, oracle, ga-fixed-beta, ga-fixed-xy)");
}

std::string solver_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::ga: return "ga";
        case SolverKind::pso: return "pso";
        case SolverKind::oracle: return "oracle";
        case SolverKind::ga_fixed_beta: return "ga-fixed-beta";
        case SolverKind::ga_fixed_xy: return "ga-fixed-xy";
    }
    return "?";
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "uav_capacity") return SweepAxis::uav_capacity;
    if (name == "task_bits") return SweepAxis::task_bits;
    throw std::invalid_argument("unknown sweep axis '" + name +
                                "' (expected uav_capacity or task_bits)");
}

OptimizeOutcome cmd_optimize(const LoadedConfig& cfg, const OptimizeOptions& opt,
                             std::ostream* log) {
    ensure_dir(opt.out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    OptimizeOutcome outcome;
    json result;
    result["solver"] = solver_name(opt.solver);
    result["seed"] = opt.seed;
    result["config_hash"] = cfg.config_hash;

    if (opt.solver == SolverKind::oracle) {
        std::optional<CsvWriter> grid_csv;
        std::function<void(const oracle::GridPoint&)> sink;
        if (opt.write_grid_csv) {
            outcome.grid_csv_path = join_path(opt.out_dir, "grid.csv");
            grid_csv.emplace(outcome.grid_csv_path, provenance(cfg, opt.seed),
                             std::vector<std::string>{"beta", "x", "y", "z", "t_total", "crb",
                                                      "c_total", "feasible"});
            sink = [&](const oracle::GridPoint& pt) {
                grid_csv->row({csv_number(pt.decision.beta), csv_number(pt.decision.x),
                               csv_number(pt.decision.y), csv_number(pt.z),
                               csv_number(pt.t_total), csv_number(pt.crb),
                               csv_number(pt.c_total), pt.feasible ? "1" : "0"});
            };
        }
        const oracle::GridResult grid = oracle::grid_search(
            cfg.scenario, opt.resolution, cfg.ga.penalty_mu, opt.threads, sink);
        outcome.best = grid.best;
        outcome.evaluation = grid.best_evaluation;
        outcome.best_penalized = grid.best_penalized;
        outcome.evaluations = grid.evaluations;
        result["resolution"] = {grid.resolution.n_beta, grid.resolution.n_x, grid.resolution.n_y};
        result["feasible_fraction"] = static_cast<double>(grid.feasible_count) /
                                      static_cast<double>(grid.evaluations);
        result["feasible_found"] = grid.feasible_found;
    } else {
        const SolverRun run = run_solver(cfg, opt.solver, opt.seed, opt.threads);
        outcome.best = run.best_decision;
        outcome.evaluation = run.best_evaluation;
        outcome.best_penalized = run.best_objective;
        outcome.evaluations = run.evaluations;
        outcome.history_csv_path = join_path(opt.out_dir, "history.csv");
        write_history_csv(outcome.history_csv_path, cfg, opt.seed, run);
        result["initial_best_z"] = run.initial_best_z;
        result["best_fitness"] = run.best_fitness;
    }

    result["best_decision"] = {{"beta", outcome.best.beta},
                               {"x", outcome.best.x},
                               {"y", outcome.best.y}};
    result["best_penalized_objective"] = outcome.best_penalized;
    result["evaluation"] = evaluation_json(outcome.evaluation);
    result["evaluations"] = outcome.evaluations;

    outcome.result_json_path = join_path(opt.out_dir, "result.json");
    std::ofstream out(outcome.result_json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + outcome.result_json_path + "'");
    out << result.dump(2) << "\n";

    if (log) {
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        *log << "optimize solver=" << solver_name(opt.solver) << " seed=" << opt.seed
             << " best_z=" << outcome.best_penalized << " evaluations=" << outcome.evaluations
             << " wall_time_s=" << dt.count() << "\n";
    }
    return outcome;
}

SweepOutcome cmd_sweep(const LoadedConfig& cfg, const SweepOptions& opt, std::ostream* log) {
    if (opt.values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
    for (std::size_t i = 1; i < opt.values.size(); ++i)
        if (!(opt.values[i] > opt.values[i - 1]))
            throw std::invalid_argument("sweep: values must be strictly increasing");
    if (opt.solvers.empty()) throw std::invalid_argument("sweep: solver list must be nonempty");
    if (opt.seeds.empty()) throw std::invalid_argument("sweep: seed list must be nonempty");
    ensure_dir(opt.out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    struct Job {
        double axis_value;
        SolverKind solver;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (double value : opt.values)
        for (SolverKind solver : opt.solvers)
            for (std::uint64_t seed : opt.seeds) jobs.push_back({value, solver, seed});

    std::vector<SweepCell> cells(jobs.size());
    parallel_for(jobs.size(), opt.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        LoadedConfig local = cfg;
        if (opt.axis == SweepAxis::uav_capacity)
            local.scenario.uav_capacity = job.axis_value;
        else
            local.scenario.task_bits = job.axis_value;

        SweepCell cell;
        cell.axis_value = job.axis_value;
        cell.solver = job.solver;
        cell.seed = job.seed;
        if (job.solver == SolverKind::oracle) {
            const oracle::GridResult grid =
                oracle::grid_search(local.scenario, opt.resolution, local.ga.penalty_mu, 1);
            cell.best = grid.best;
            cell.best_z = grid.best_penalized;
            cell.evaluation = grid.best_evaluation;
        } else {
            const SolverRun run = run_solver(local, job.solver, job.seed, 1);
            cell.best = run.best_decision;
            cell.best_z = run.best_objective;
            cell.evaluation = run.best_evaluation;
        }
        cells[i] = cell;
    });

    SweepOutcome outcome;
    outcome.cells = std::move(cells);
    outcome.csv_path = join_path(opt.out_dir, "sweep.csv");
    CsvWriter csv(outcome.csv_path,
                  provenance(cfg, opt.seeds.front()) +
                      " axis=" + (opt.axis == SweepAxis::uav_capacity ? "uav_capacity"
                                                                      : "task_bits"),
                  {"axis_value", "solver", "seed", "best_z", "t_total", "crb", "c_total", "beta",
                   "x", "y"});
    for (const SweepCell& cell : outcome.cells) {
        csv.row({csv_number(cell.axis_value), solver_name(cell.solver),
                 std::to_string(cell.seed), csv_number(cell.best_z),
                 csv_number(cell.evaluation.latency.t_total), csv_number(cell.evaluation.crb),
                 csv_number(cell.evaluation.cost.c_total), csv_number(cell.best.beta),
                 csv_number(cell.best.x), csv_number(cell.best.y)});
    }

    if (log) {
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        *log << "sweep cells=" << outcome.cells.size() << " wall_time_s=" << dt.count() << "\n";
    }
    return outcome;
}

RadarSweepOutcome cmd_radar_sweep(const LoadedConfig& cfg, const RadarSweepOptions& opt,
                                  std::ostream* log) {
    if (opt.window_lengths.empty() || opt.snr_values.empty())
        throw std::invalid_argument("radar-sweep: L and snr lists must be nonempty");
    if (opt.trials < 1) throw std::invalid_argument("radar-sweep: trials must be >= 1");
    ensure_dir(opt.out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    struct Job {
        std::size_t window;
        double snr;
    };
    std::vector<Job> jobs;
    for (std::size_t window : opt.window_lengths)
        for (double snr : opt.snr_values) jobs.push_back({window, snr});

    const double sample_period = cfg.scenario.sample_period();
    const double wavelength = cfg.scenario.wavelength;
    radar::TrialOptions trial_opt;
    trial_opt.max_delay = cfg.radar.max_delay;
    trial_opt.conjugate_both = cfg.radar.conjugate_both;

    std::vector<RadarSweepCell> cells(jobs.size());
    parallel_for(jobs.size(), opt.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        RadarSweepCell cell;
        cell.window = job.window;
        cell.snr = job.snr;
        // Sub-stream per cell; trial counts and threads cannot interact.
        const std::uint64_t cell_seed = splitmix64(opt.seed ^ splitmix64(i + 1));
        cell.result =
            radar::monte_carlo_mse(job.window, sample_period, wavelength,
                                   cfg.radar.true_velocity, job.snr, opt.trials, cell_seed,
                                   trial_opt);
        cells[i] = cell;
    });

    RadarSweepOutcome outcome;
    outcome.cells = std::move(cells);
    outcome.csv_path = join_path(opt.out_dir, "radar_sweep.csv");
    CsvWriter csv(outcome.csv_path, provenance(cfg, opt.seed),
                  {"L", "gamma_rad", "true_velocity", "mse", "crb", "mse_crb_ratio", "trials"});
    for (const RadarSweepCell& cell : outcome.cells) {
        csv.row({std::to_string(cell.window), csv_number(cell.snr),
                 csv_number(cfg.radar.true_velocity), csv_number(cell.result.mse),
                 csv_number(cell.result.crb_reference),
                 csv_number(cell.result.mse / cell.result.crb_reference),
                 std::to_string(cell.result.trials)});
    }

    if (log) {
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        *log << "radar-sweep cells=" << outcome.cells.size() << " wall_time_s=" << dt.count()
             << "\n";
    }
    return outcome;
}

}  // namespace uavisac::harness
