#pragma once

#include <cstdint>
#include <vector>

#include "uavisac/model.hpp"

namespace uavisac {

/// One convergence-history row. best_z is the best-so-far penalized
/// objective (non-increasing); mean_z averages the current population.
struct GenerationStats {
    int generation = 0;
    double best_z = 0.0;
    double mean_z = 0.0;
    Decision best;  // best-so-far decision
    int feasible_count = 0;
};

/// Result of one seeded solver run, identical shape for GA and PSO so
/// convergence histories can be overlaid.
struct SolverRun {
    Decision best_decision;
    double best_objective = 0.0;        // penalized z of the best decision
    double best_fitness = 0.0;          // 1 / best_objective
    model::Evaluation best_evaluation;  // full breakdown at the best decision
    double initial_best_z = 0.0;        // best penalized z after initialization
    std::vector<GenerationStats> history;
    std::uint64_t evaluations = 0;      // objective evaluations consumed
};

}  // namespace uavisac
