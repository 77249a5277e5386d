#include "uavisac/ga.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <thread>

namespace uavisac::ga {

namespace {

struct GeneBounds {
    std::array<double, 3> lo;
    std::array<double, 3> hi;

    static GeneBounds from(const Scenario& sc) {
        return {{0.0, sc.area.x_min, sc.area.y_min},
                {sc.beta_max, sc.area.x_max, sc.area.y_max}};
    }
};

std::array<double, 3> to_genes(const Decision& d) { return {d.beta, d.x, d.y}; }

Decision from_genes(const std::array<double, 3>& g) { return {g[0], g[1], g[2]}; }

std::array<bool, 3> free_mask(const FrozenGenes& frozen) {
    return {!frozen.beta.has_value(), !frozen.x.has_value(), !frozen.y.has_value()};
}

Decision apply_frozen(Decision d, const FrozenGenes& frozen) {
    if (frozen.beta) d.beta = *frozen.beta;
    if (frozen.x) d.x = *frozen.x;
    if (frozen.y) d.y = *frozen.y;
    return d;
}

// Polynomial perturbation of one gene; u = 0.5 leaves the gene unchanged,
// u = 0 and u = 1 reach the bounds exactly.
double mutate_gene(double p, double lo, double hi, double eta, double u) {
    double mutated;
    if (u <= 0.5) {
        const double delta_l = std::pow(2.0 * u, 1.0 / (1.0 + eta)) - 1.0;
        mutated = p + delta_l * (p - lo);
    } else {
        const double delta_r = 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (1.0 + eta));
        mutated = p + delta_r * (hi - p);
    }
    return std::clamp(mutated, lo, hi);
}

Individual evaluate_individual(const Scenario& sc, double penalty_mu, const Decision& d) {
    const model::Evaluation ev = model::evaluate(sc, d);
    Individual ind;
    ind.decision = d;
    ind.feasible = ev.feasible;
    ind.penalized = model::penalized_objective(ev, sc, penalty_mu);
    return ind;
}

// Evaluates decisions[i] into out[i]; chunked threads, order-independent.
void evaluate_batch(const Scenario& sc, double penalty_mu, std::span<const Decision> decisions,
                    std::span<Individual> out, int threads) {
    const std::size_t n = decisions.size();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = evaluate_individual(sc, penalty_mu, decisions[i]);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += workers)
                out[i] = evaluate_individual(sc, penalty_mu, decisions[i]);
        });
    }
    for (auto& th : pool) th.join();
}

GenerationStats make_stats(int generation, std::span<const Individual> population,
                           const Individual& best_so_far) {
    GenerationStats st;
    st.generation = generation;
    st.best_z = best_so_far.penalized;
    st.best = best_so_far.decision;
    double sum = 0.0;
    int feasible = 0;
    for (const Individual& ind : population) {
        sum += ind.penalized;
        if (ind.feasible) ++feasible;
    }
    st.mean_z = sum / static_cast<double>(population.size());
    st.feasible_count = feasible;
    return st;
}

}  // namespace

void GaConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("ga.population_size must be >= 2");
    if (generations < 0) throw std::invalid_argument("ga.generations must be >= 0");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("ga.crossover_prob must be in [0, 1]");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("ga.mutation_prob must be in [0, 1]");
    if (!(mutation_index >= 20.0 && mutation_index <= 100.0))
        throw std::invalid_argument("ga.mutation_index must be in [20, 100]");
    if (penalty_mu < 0.0) throw std::invalid_argument("ga.penalty_mu must be >= 0");
    if (init_retry_budget < 1) throw std::invalid_argument("ga.init_retry_budget must be >= 1");
    if (threads < 1) throw std::invalid_argument("ga.threads must be >= 1");
}

std::vector<Decision> initialize_population(const Scenario& sc, const GaConfig& cfg, Rng& rng,
                                            const FrozenGenes& frozen) {
    // Cost is minimized at beta_max with the UAV over the UE; if even that
    // breaks the budget no feasible chromosome exists.
    Decision witness = apply_frozen({sc.beta_max, sc.ue_x, sc.ue_y}, frozen);
    if (model::cost_chain(sc, witness).c_total > sc.budget)
        throw InfeasibleScenarioError("infeasible scenario: minimum offloading cost exceeds budget");

    const GeneBounds bounds = GeneBounds::from(sc);
    const auto mask = free_mask(frozen);
    std::vector<Decision> population;
    population.reserve(cfg.population_size);
    int draws_left = cfg.init_retry_budget;
    while (population.size() < static_cast<std::size_t>(cfg.population_size)) {
        if (draws_left-- <= 0)
            throw InfeasibleScenarioError(
                "infeasible scenario: retry budget exhausted while sampling feasible chromosomes");
        std::array<double, 3> genes{};
        for (int g = 0; g < 3; ++g)
            genes[g] = mask[g] ? uniform_range(rng, bounds.lo[g], bounds.hi[g]) : 0.0;
        const Decision candidate = apply_frozen(from_genes(genes), frozen);
        if (model::cost_chain(sc, candidate).c_total <= sc.budget)
            population.push_back(candidate);
    }
    return population;
}

double fitness(const Scenario& sc, const GaConfig& cfg, const Decision& d) {
    return 1.0 / model::penalized_objective(sc, d, cfg.penalty_mu);
}

std::pair<std::size_t, std::size_t> select_parents(std::span<const double> fitnesses, Rng& rng) {
    const double total = std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0);
    auto draw = [&]() -> std::size_t {
        const double ticket = uniform01(rng) * total;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < fitnesses.size(); ++i) {
            cumulative += fitnesses[i];
            if (ticket < cumulative) return i;
        }
        return fitnesses.size() - 1;  // ticket == total after rounding
    };
    const std::size_t first = draw();
    const std::size_t second = draw();
    return {first, second};
}

std::pair<Decision, Decision> crossover(const Decision& a, const Decision& b,
                                        double crossover_prob, Rng& rng) {
    if (uniform01(rng) >= crossover_prob) return {a, b};
    const auto ga = to_genes(a);
    const auto gb = to_genes(b);
    // Cut after gene 1 or gene 2 of the triple.
    const std::size_t cut = 1 + uniform_index(rng, 2);
    std::array<double, 3> ca = ga;
    std::array<double, 3> cb = gb;
    for (std::size_t g = cut; g < 3; ++g) std::swap(ca[g], cb[g]);
    return {from_genes(ca), from_genes(cb)};
}

Decision mutate(const Decision& d, const Scenario& sc, const GaConfig& cfg, Rng& rng,
                const FrozenGenes& frozen) {
    const GeneBounds bounds = GeneBounds::from(sc);
    const auto mask = free_mask(frozen);
    auto genes = to_genes(d);

    if (cfg.per_gene_mutation) {
        for (int g = 0; g < 3; ++g) {
            if (!mask[g]) continue;
            if (uniform01(rng) < cfg.mutation_prob)
                genes[g] = mutate_gene(genes[g], bounds.lo[g], bounds.hi[g], cfg.mutation_index,
                                       uniform01(rng));
        }
        return from_genes(genes);
    }

    if (uniform01(rng) >= cfg.mutation_prob) return d;
    for (int g = 0; g < 3; ++g) {
        if (!mask[g]) continue;
        genes[g] =
            mutate_gene(genes[g], bounds.lo[g], bounds.hi[g], cfg.mutation_index, uniform01(rng));
    }
    return from_genes(genes);
}

std::vector<Individual> tournament_survival(std::span<const Individual> pool, std::size_t count,
                                            Rng& rng) {
    std::vector<Individual> survivors;
    survivors.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const Individual& r1 = pool[uniform_index(rng, pool.size())];
        const Individual& r2 = pool[uniform_index(rng, pool.size())];
        // fitness(R1) >= fitness(R2) keeps R1, i.e. ties go to the first draw.
        survivors.push_back(r1.penalized <= r2.penalized ? r1 : r2);
    }
    return survivors;
}

SolverRun run_ga(const Scenario& sc, const GaConfig& cfg, const FrozenGenes& frozen) {
    sc.validate();
    cfg.validate();
    Rng rng(cfg.rng_seed);

    const std::vector<Decision> initial = initialize_population(sc, cfg, rng, frozen);
    const std::size_t k = initial.size();

    std::vector<Individual> population(k);
    evaluate_batch(sc, cfg.penalty_mu, initial, population, cfg.threads);

    SolverRun run;
    run.evaluations = k;

    Individual best = *std::min_element(
        population.begin(), population.end(),
        [](const Individual& a, const Individual& b) { return a.penalized < b.penalized; });
    run.initial_best_z = best.penalized;

    run.history.reserve(cfg.generations);
    std::vector<double> fitnesses(k);
    std::vector<Decision> offspring;
    std::vector<Individual> pool(2 * k);
    offspring.reserve(2 * k);

    for (int t = 1; t <= cfg.generations; ++t) {
        for (std::size_t i = 0; i < k; ++i) fitnesses[i] = population[i].fitness();

        // K rounds, each contributing two offspring.
        offspring.clear();
        for (std::size_t round = 0; round < k; ++round) {
            const auto [i1, i2] = select_parents(fitnesses, rng);
            auto [c1, c2] =
                crossover(population[i1].decision, population[i2].decision, cfg.crossover_prob, rng);
            c1 = mutate(c1, sc, cfg, rng, frozen).clamped(sc);
            c2 = mutate(c2, sc, cfg, rng, frozen).clamped(sc);
            offspring.push_back(c1);
            offspring.push_back(c2);
        }

        evaluate_batch(sc, cfg.penalty_mu, offspring, pool, cfg.threads);
        run.evaluations += offspring.size();

        population = tournament_survival(pool, k, rng);

        // The generation's best offspring challenges the incumbent (the
        // survivors are a subset of the pool); replace only on strict
        // improvement.
        const Individual& generation_best = *std::min_element(
            pool.begin(), pool.end(),
            [](const Individual& a, const Individual& b) { return a.penalized < b.penalized; });
        if (generation_best.penalized < best.penalized) best = generation_best;

        run.history.push_back(make_stats(t, population, best));
    }

    run.best_decision = best.decision;
    run.best_objective = best.penalized;
    run.best_fitness = 1.0 / best.penalized;
    run.best_evaluation = model::evaluate(sc, best.decision);
    return run;
}

}  // namespace uavisac::ga
