#include "uavisac/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

namespace uavisac::oracle {

namespace {

// Inclusive linspace; power-of-two-plus-one counts nest exactly.
std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> points(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) points[i] = lo + step * static_cast<double>(i);
    points.back() = hi;
    return points;
}

struct SliceResult {
    GridPoint best_feasible;
    GridPoint best_penalized;
    bool has_any = false;
    bool has_feasible = false;
    std::uint64_t feasible_count = 0;
};

}  // namespace

GridResult grid_search(const Scenario& sc, GridResolution res, double penalty_mu, int threads,
                       const std::function<void(const GridPoint&)>& sink) {
    sc.validate();
    if (res.n_beta < 2 || res.n_x < 2 || res.n_y < 2)
        throw std::invalid_argument("grid_search: resolution must be >= 2 per axis");

    const std::vector<double> betas = linspace(0.0, sc.beta_max, res.n_beta);
    const std::vector<double> xs = linspace(sc.area.x_min, sc.area.x_max, res.n_x);
    const std::vector<double> ys = linspace(sc.area.y_min, sc.area.y_max, res.n_y);

    const std::size_t slice_points = static_cast<std::size_t>(res.n_x) * res.n_y;
    std::vector<SliceResult> slices(res.n_beta);
    std::vector<std::vector<GridPoint>> slice_rows;
    if (sink) slice_rows.resize(res.n_beta);

    auto run_slice = [&](int ib) {
        SliceResult slice;
        std::vector<GridPoint>* rows = nullptr;
        if (sink) {
            slice_rows[ib].reserve(slice_points);
            rows = &slice_rows[ib];
        }
        for (double x : xs) {
            for (double y : ys) {
                const Decision d{betas[ib], x, y};
                const model::Evaluation ev = model::evaluate(sc, d);
                GridPoint pt;
                pt.decision = d;
                pt.z = ev.objective;
                pt.penalized = model::penalized_objective(ev, sc, penalty_mu);
                pt.t_total = ev.latency.t_total;
                pt.crb = ev.crb;
                pt.c_total = ev.cost.c_total;
                pt.feasible = ev.feasible;
                if (!slice.has_any || pt.penalized < slice.best_penalized.penalized) {
                    slice.has_any = true;
                    slice.best_penalized = pt;
                }
                if (pt.feasible) {
                    ++slice.feasible_count;
                    if (!slice.has_feasible || pt.penalized < slice.best_feasible.penalized) {
                        slice.has_feasible = true;
                        slice.best_feasible = pt;
                    }
                }
                if (rows) rows->push_back(pt);
            }
        }
        slices[ib] = std::move(slice);
    };

    const int workers = std::max(1, std::min(threads, res.n_beta));
    if (workers == 1) {
        for (int ib = 0; ib < res.n_beta; ++ib) run_slice(ib);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int ib = w; ib < res.n_beta; ib += workers) run_slice(ib);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Merge in index order; emission order matches the sequential scan.
    GridResult result;
    result.resolution = res;
    result.evaluations = static_cast<std::uint64_t>(res.n_beta) * slice_points;
    GridPoint best_feasible;
    GridPoint best_penalized;
    bool have_any = false;
    for (int ib = 0; ib < res.n_beta; ++ib) {
        const SliceResult& slice = slices[ib];
        result.feasible_count += slice.feasible_count;
        if (!have_any || slice.best_penalized.penalized < best_penalized.penalized) {
            have_any = true;
            best_penalized = slice.best_penalized;
        }
        if (slice.has_feasible &&
            (!result.feasible_found || slice.best_feasible.penalized < best_feasible.penalized)) {
            result.feasible_found = true;
            best_feasible = slice.best_feasible;
        }
        if (sink)
            for (const GridPoint& pt : slice_rows[ib]) sink(pt);
    }

    const GridPoint& chosen = result.feasible_found ? best_feasible : best_penalized;
    result.best = chosen.decision;
    result.best_penalized = chosen.penalized;
    result.best_evaluation = model::evaluate(sc, chosen.decision);
    return result;
}

}  // namespace uavisac::oracle
