#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavisac/config.hpp"
#include "uavisac/oracle.hpp"
#include "uavisac/radarsim.hpp"
#include "uavisac/solver_run.hpp"

namespace uavisac::harness {

enum class SolverKind { ga, pso, oracle, ga_fixed_beta, ga_fixed_xy };

/// Parses "ga", "pso", "oracle", "ga-fixed-beta", "ga-fixed-xy".
SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind kind);

struct OptimizeOptions {
    SolverKind solver = SolverKind::ga;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int threads = 1;
    oracle::GridResolution resolution;  // oracle only
    bool write_grid_csv = true;         // oracle only
};

struct OptimizeOutcome {
    Decision best;
    model::Evaluation evaluation;
    double best_penalized = 0.0;
    std::uint64_t evaluations = 0;
    std::string result_json_path;
    std::string history_csv_path;  // empty for the oracle
    std::string grid_csv_path;     // oracle only
};

/// Runs one solver on the loaded config and writes result.json plus the
/// history CSV (solvers) or grid CSV (oracle). Wall time goes to the log
/// stream, never into the files, so reruns are byte-identical.
OptimizeOutcome cmd_optimize(const LoadedConfig& cfg, const OptimizeOptions& opt,
                             std::ostream* log = nullptr);

enum class SweepAxis { uav_capacity, task_bits };

SweepAxis parse_axis(const std::string& name);

struct SweepOptions {
    SweepAxis axis = SweepAxis::uav_capacity;
    std::vector<double> values;          // strictly increasing
    std::vector<SolverKind> solvers;
    std::vector<std::uint64_t> seeds;
    std::string out_dir = ".";
    int threads = 1;
    oracle::GridResolution resolution;   // when the oracle is swept
};

struct SweepCell {
    double axis_value = 0.0;
    SolverKind solver;
    std::uint64_t seed = 0;
    Decision best;
    double best_z = 0.0;  // penalized objective of the best decision
    model::Evaluation evaluation;
};

struct SweepOutcome {
    std::vector<SweepCell> cells;  // axis-major, then solver, then seed
    std::string csv_path;
};

/// Full factorial (axis value x solver x seed); cells run on a bounded
/// worker pool and are written in index order, so thread count never
/// changes the output bytes.
SweepOutcome cmd_sweep(const LoadedConfig& cfg, const SweepOptions& opt,
                       std::ostream* log = nullptr);

struct RadarSweepOptions {
    std::vector<std::size_t> window_lengths;  // L values
    std::vector<double> snr_values;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int threads = 1;
};

struct RadarSweepCell {
    std::size_t window = 0;
    double snr = 0.0;
    radar::McResult result;
};

struct RadarSweepOutcome {
    std::vector<RadarSweepCell> cells;
    std::string csv_path;
};

RadarSweepOutcome cmd_radar_sweep(const LoadedConfig& cfg, const RadarSweepOptions& opt,
                                  std::ostream* log = nullptr);

}  // namespace uavisac::harness
