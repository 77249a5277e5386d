#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "uavisac/pso.hpp"

using namespace uavisac;
using namespace uavisac::pso;
using testing::reference_scenario;

TEST_CASE("matched iteration budget") {
    // GA budget T*2K + K = 16020; swarm*(iterations+1) must equal it.
    CHECK(PsoConfig::matched_iterations(20, 400, 20) == 800);
    CHECK(PsoConfig::matched_iterations(20, 400, 3) == 5339);
    CHECK(3 * (5339 + 1) == 16020);
    CHECK(20 * (800 + 1) == 16020);
}

TEST_CASE("frozen swarm when all coefficients vanish") {
    const Scenario sc = reference_scenario();
    PsoConfig cfg;
    cfg.swarm_size = 12;
    cfg.iterations = 50;
    cfg.inertia = 0.0;
    cfg.cognitive = 0.0;
    cfg.social = 0.0;
    cfg.rng_seed = 21;
    const SolverRun run = run_pso(sc, cfg);
    // Nothing can move: the best is the best of the initial swarm and the
    // history is flat.
    CHECK(run.best_objective == run.initial_best_z);
    for (const auto& st : run.history) CHECK(st.best_z == run.initial_best_z);
    CHECK(run.evaluations == 12u * 51u);
}

TEST_CASE("single particle sits at its own gbest") {
    const Scenario sc = reference_scenario();
    PsoConfig cfg;
    cfg.swarm_size = 1;
    cfg.iterations = 200;
    cfg.rng_seed = 5;
    const SolverRun run = run_pso(sc, cfg);
    // pbest == gbest == position and velocity starts at zero, so both
    // attraction terms vanish forever.
    CHECK(run.best_objective == run.initial_best_z);
    CHECK(run.evaluations == 201u);
}

TEST_CASE("deterministic and in bounds") {
    const Scenario sc = reference_scenario();
    PsoConfig cfg;
    cfg.iterations = 400;
    cfg.rng_seed = 77;
    const SolverRun a = run_pso(sc, cfg);
    const SolverRun b = run_pso(sc, cfg);
    CHECK(a.best_objective == b.best_objective);
    CHECK(a.best_decision.x == b.best_decision.x);
    REQUIRE(a.history.size() == 400);
    double previous = a.initial_best_z;
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].best_z == b.history[i].best_z);
        CHECK(a.history[i].best_z <= previous);
        previous = a.history[i].best_z;
        CHECK(a.history[i].best.within_bounds(sc));
    }
    CHECK(a.evaluations == static_cast<std::uint64_t>(cfg.swarm_size) * (cfg.iterations + 1));
    CHECK(a.best_decision.within_bounds(sc));
}

TEST_CASE("infeasible scenario propagates") {
    Scenario sc = reference_scenario();
    sc.beta_max = 1e-3;  // cheapest decision still busts the budget
    PsoConfig cfg;
    CHECK_THROWS_AS(run_pso(sc, cfg), InfeasibleScenarioError);
}

TEST_CASE("improves on the initial swarm") {
    const Scenario sc = reference_scenario();
    PsoConfig cfg;
    cfg.rng_seed = 13;
    const SolverRun run = run_pso(sc, cfg);
    CHECK(run.best_objective < run.initial_best_z);
    CHECK(run.best_evaluation.feasible);
}
