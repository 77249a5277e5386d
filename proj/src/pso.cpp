#include "uavisac/pso.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace uavisac::pso {

namespace {

struct Particle {
    std::array<double, 3> position;
    std::array<double, 3> velocity{0.0, 0.0, 0.0};
    std::array<double, 3> best_position;
    double best_penalized = 0.0;
};

struct Scored {
    double penalized = 0.0;
    bool feasible = false;
};

Scored score(const Scenario& sc, double penalty_mu, const std::array<double, 3>& p) {
    const Decision d{p[0], p[1], p[2]};
    const model::Evaluation ev = model::evaluate(sc, d);
    return {model::penalized_objective(ev, sc, penalty_mu), ev.feasible};
}

}  // namespace

void PsoConfig::validate() const {
    if (swarm_size < 1) throw std::invalid_argument("pso.swarm_size must be >= 1");
    if (iterations < 0) throw std::invalid_argument("pso.iterations must be >= 0");
    if (!std::isfinite(inertia)) throw std::invalid_argument("pso.inertia must be finite");
    if (cognitive < 0.0) throw std::invalid_argument("pso.cognitive must be >= 0");
    if (social < 0.0) throw std::invalid_argument("pso.social must be >= 0");
    if (max_velocity_frac <= 0.0 || max_velocity_frac > 1.0)
        throw std::invalid_argument("pso.max_velocity_frac must be in (0, 1]");
    if (penalty_mu < 0.0) throw std::invalid_argument("pso.penalty_mu must be >= 0");
    if (init_retry_budget < 1) throw std::invalid_argument("pso.init_retry_budget must be >= 1");
}

int PsoConfig::matched_iterations(int ga_population, int ga_generations, int swarm) {
    const long long budget =
        static_cast<long long>(ga_generations) * 2LL * ga_population + ga_population;
    return static_cast<int>(std::max(0LL, budget / swarm - 1));
}

SolverRun run_pso(const Scenario& sc, const PsoConfig& cfg) {
    sc.validate();
    cfg.validate();
    Rng rng(cfg.rng_seed);

    const std::array<double, 3> lo{0.0, sc.area.x_min, sc.area.y_min};
    const std::array<double, 3> hi{sc.beta_max, sc.area.x_max, sc.area.y_max};
    std::array<double, 3> v_max;
    for (int d = 0; d < 3; ++d) v_max[d] = cfg.max_velocity_frac * (hi[d] - lo[d]);

    // Feasible initialization, same witness and retry policy as the GA.
    if (model::cost_chain(sc, {sc.beta_max, sc.ue_x, sc.ue_y}).c_total > sc.budget)
        throw InfeasibleScenarioError("infeasible scenario: minimum offloading cost exceeds budget");

    SolverRun run;
    std::vector<Particle> swarm(cfg.swarm_size);
    std::array<double, 3> gbest_position{};
    Scored gbest{};
    bool have_gbest = false;

    int draws_left = cfg.init_retry_budget;
    for (Particle& particle : swarm) {
        for (;;) {
            if (draws_left-- <= 0)
                throw InfeasibleScenarioError(
                    "infeasible scenario: retry budget exhausted while sampling feasible particles");
            for (int d = 0; d < 3; ++d) particle.position[d] = uniform_range(rng, lo[d], hi[d]);
            const Decision cand{particle.position[0], particle.position[1], particle.position[2]};
            if (model::cost_chain(sc, cand).c_total <= sc.budget) break;
        }
        const Scored s = score(sc, cfg.penalty_mu, particle.position);
        ++run.evaluations;
        particle.best_position = particle.position;
        particle.best_penalized = s.penalized;
        if (!have_gbest || s.penalized < gbest.penalized) {
            have_gbest = true;
            gbest = s;
            gbest_position = particle.position;
        }
    }
    run.initial_best_z = gbest.penalized;

    run.history.reserve(cfg.iterations);
    for (int it = 1; it <= cfg.iterations; ++it) {
        double mean = 0.0;
        int feasible = 0;
        for (Particle& particle : swarm) {
            for (int d = 0; d < 3; ++d) {
                const double r1 = uniform01(rng);
                const double r2 = uniform01(rng);
                double v = cfg.inertia * particle.velocity[d] +
                           cfg.cognitive * r1 * (particle.best_position[d] - particle.position[d]) +
                           cfg.social * r2 * (gbest_position[d] - particle.position[d]);
                v = std::clamp(v, -v_max[d], v_max[d]);
                particle.velocity[d] = v;
                particle.position[d] = std::clamp(particle.position[d] + v, lo[d], hi[d]);
            }
            const Scored s = score(sc, cfg.penalty_mu, particle.position);
            ++run.evaluations;
            mean += s.penalized;
            if (s.feasible) ++feasible;
            if (s.penalized < particle.best_penalized) {
                particle.best_penalized = s.penalized;
                particle.best_position = particle.position;
            }
            if (s.penalized < gbest.penalized) {
                gbest = s;
                gbest_position = particle.position;
            }
        }
        GenerationStats st;
        st.generation = it;
        st.best_z = gbest.penalized;
        st.mean_z = mean / static_cast<double>(cfg.swarm_size);
        st.best = {gbest_position[0], gbest_position[1], gbest_position[2]};
        st.feasible_count = feasible;
        run.history.push_back(st);
    }

    run.best_decision = {gbest_position[0], gbest_position[1], gbest_position[2]};
    run.best_objective = gbest.penalized;
    run.best_fitness = 1.0 / gbest.penalized;
    run.best_evaluation = model::evaluate(sc, run.best_decision);
    return run;
}

}  // namespace uavisac::pso
