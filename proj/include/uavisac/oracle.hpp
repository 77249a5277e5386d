#pragma once

#include <cstdint>
#include <functional>

#include "uavisac/model.hpp"

namespace uavisac::oracle {

struct GridResolution {
    int n_beta = 101;
    int n_x = 101;
    int n_y = 101;
};

/// One lattice evaluation, in row-emission order (beta outer, then x, then y).
struct GridPoint {
    Decision decision;
    double z = 0.0;
    double penalized = 0.0;
    double t_total = 0.0;
    double crb = 0.0;
    double c_total = 0.0;
    bool feasible = false;
};

struct GridResult {
    Decision best;
    model::Evaluation best_evaluation;
    double best_penalized = 0.0;
    bool feasible_found = false;  // if false, best is the penalized minimizer
    std::uint64_t evaluations = 0;
    std::uint64_t feasible_count = 0;
    GridResolution resolution;
};

/// Exhaustive evaluation of the penalized objective on the inclusive lattice
/// over [0, beta_max] x area. Returns the feasible lattice minimizer, or the
/// penalized minimizer flagged via feasible_found when no lattice point is
/// feasible. Lattice slices run in parallel and merge by index, so results
/// do not depend on the thread count; `sink` receives every point in order.
GridResult grid_search(const Scenario& sc, GridResolution res, double penalty_mu = 1e6,
                       int threads = 1, const std::function<void(const GridPoint&)>& sink = {});

}  // namespace uavisac::oracle
