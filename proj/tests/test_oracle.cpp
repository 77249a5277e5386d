#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "uavisac/oracle.hpp"

using namespace uavisac;
using namespace uavisac::oracle;
using testing::reference_scenario;

TEST_CASE("symmetric scenario puts the best point on the co-located node") {
    // UE and target at the same spot: every objective term improves toward
    // it, so the lattice minimizer is the nearest lattice point.
    Scenario sc = reference_scenario();
    sc.target_x = sc.ue_x = 500.0;
    sc.target_y = sc.ue_y = 500.0;
    const GridResult result = grid_search(sc, {5, 5, 5});
    CHECK(result.best.x == 500.0);
    CHECK(result.best.y == 500.0);
    CHECK(result.feasible_found);
    CHECK(result.evaluations == 125);
}

TEST_CASE("latency-only search lands adjacent to the analytic balance point") {
    // With w2 = 0 and free resources, z = t_total and the continuous optimum
    // in beta solves t_local(beta) = t_off(beta) at the best position (over
    // the UE). The lattice argmin must be one of the two bracketing points.
    Scenario sc = reference_scenario();
    sc.weight_crb = 0.0;
    sc.price_bandwidth = sc.price_tx_energy = 0.0;
    sc.price_cycle = sc.price_ue_energy = 0.0;
    sc.ue_x = 500.0;  // on-lattice so the rate maximizer is exact
    sc.ue_y = 500.0;

    const int n_beta = 41;
    const GridResult result = grid_search(sc, {n_beta, 5, 5});
    CHECK(result.best.x == 500.0);
    CHECK(result.best.y == 500.0);

    const model::LatencyChain at_zero = model::latency_chain(sc, {0.0, 500.0, 500.0});
    const double local_slope = sc.cycles_per_bit * sc.task_bits / sc.uav_capacity;
    const double balance = at_zero.t_off / (local_slope + at_zero.t_off);
    const double step = sc.beta_max / (n_beta - 1);
    CHECK(std::fabs(result.best.beta - balance) <= step);

    // No feasibility pressure: every lattice point is feasible.
    CHECK(result.feasible_count == result.evaluations);
}

TEST_CASE("nested refinement never increases the best objective") {
    const Scenario sc = reference_scenario();
    // 2^k + 1 lattices nest exactly.
    const GridResult coarse = grid_search(sc, {3, 3, 3});
    const GridResult mid = grid_search(sc, {5, 5, 5});
    const GridResult fine = grid_search(sc, {9, 9, 9});
    const GridResult finer = grid_search(sc, {17, 17, 17});
    CHECK(mid.best_penalized <= coarse.best_penalized);
    CHECK(fine.best_penalized <= mid.best_penalized);
    CHECK(finer.best_penalized <= fine.best_penalized);
}

TEST_CASE("thread count changes nothing") {
    const Scenario sc = reference_scenario();
    const GridResult serial = grid_search(sc, {9, 11, 13}, 1e6, 1);
    const GridResult threaded = grid_search(sc, {9, 11, 13}, 1e6, 4);
    CHECK(serial.best.beta == threaded.best.beta);
    CHECK(serial.best.x == threaded.best.x);
    CHECK(serial.best.y == threaded.best.y);
    CHECK(serial.best_penalized == threaded.best_penalized);
    CHECK(serial.feasible_count == threaded.feasible_count);

    // The sink sees identical rows in identical order.
    std::vector<double> order_serial;
    std::vector<double> order_threaded;
    grid_search(sc, {5, 5, 5}, 1e6, 1,
                [&](const GridPoint& pt) { order_serial.push_back(pt.penalized); });
    grid_search(sc, {5, 5, 5}, 1e6, 3,
                [&](const GridPoint& pt) { order_threaded.push_back(pt.penalized); });
    REQUIRE(order_serial.size() == 125);
    CHECK(order_serial == order_threaded);
}

TEST_CASE("no feasible lattice point is flagged") {
    Scenario sc = reference_scenario();
    sc.budget = 1.0;  // nothing fits
    const GridResult result = grid_search(sc, {5, 5, 5});
    CHECK_FALSE(result.feasible_found);
    CHECK(result.feasible_count == 0);
    // The reported point is the penalized minimizer; with costs shrinking in
    // beta it sits at beta_max.
    CHECK(result.best.beta == sc.beta_max);
}

TEST_CASE("resolution below two is rejected") {
    const Scenario sc = reference_scenario();
    CHECK_THROWS_AS(grid_search(sc, {1, 5, 5}), std::invalid_argument);
}
