#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "uavisac/rng.hpp"
#include "uavisac/solver_run.hpp"

namespace uavisac::ga {

struct GaConfig {
    int population_size = 20;      // K
    int generations = 400;         // T
    double crossover_prob = 0.8;   // P_c
    double mutation_prob = 0.15;   // P_m
    double mutation_index = 20.0;  // eta, accepted range [20, 100]
    double penalty_mu = 1e6;
    std::uint64_t rng_seed = 1;
    // When set, the P_m gate is drawn per gene instead of once per
    // chromosome (the per-chromosome gate then mutates all free genes).
    bool per_gene_mutation = false;
    int init_retry_budget = 10000;
    int threads = 1;  // offspring evaluation only; never touches the RNG stream

    void validate() const;
};

/// Freezes genes for the ablation baselines (fixed-beta / fixed-xy runs).
struct FrozenGenes {
    std::optional<double> beta;
    std::optional<double> x;
    std::optional<double> y;
};

/// Chromosome with its cached penalized objective; genes are the Decision
/// triple (beta, x, y).
struct Individual {
    Decision decision;
    double penalized = 0.0;  // objective the solver ranks by
    bool feasible = false;

    double fitness() const { return 1.0 / penalized; }
};

/// K chromosomes uniformly drawn from the constraint box, re-drawn until the
/// budget constraint holds. Throws InfeasibleScenarioError when the cheapest
/// possible decision exceeds the budget or the retry budget is exhausted.
std::vector<Decision> initialize_population(const Scenario& sc, const GaConfig& cfg, Rng& rng,
                                            const FrozenGenes& frozen = {});

/// 1 / penalized objective; strictly positive for any valid decision.
double fitness(const Scenario& sc, const GaConfig& cfg, const Decision& d);

/// Roulette-wheel sampling: two independent fitness-proportionate draws,
/// which may pick the same individual. Returns indices into the population.
std::pair<std::size_t, std::size_t> select_parents(std::span<const double> fitnesses, Rng& rng);

/// One-point crossover on the (beta, x, y) triple with probability
/// crossover_prob; the cut falls after gene 1 or gene 2, genes right of the
/// cut swap. Otherwise children copy the parents.
std::pair<Decision, Decision> crossover(const Decision& a, const Decision& b,
                                        double crossover_prob, Rng& rng);

/// Polynomial mutation with index eta, bounded per gene by [0, beta_max] and
/// the area rectangle; results are clamped to those bounds.
Decision mutate(const Decision& d, const Scenario& sc, const GaConfig& cfg, Rng& rng,
                const FrozenGenes& frozen = {});

/// K pairwise contests with replacement over the offspring pool; the
/// first-drawn individual survives ties.
std::vector<Individual> tournament_survival(std::span<const Individual> pool, std::size_t count,
                                            Rng& rng);

/// Full solver run: initialize, then per generation build a pool of 2K
/// offspring via selection/crossover/mutation, tournament-select K
/// survivors, and keep the best-so-far only on strict improvement.
/// Deterministic in (scenario, config seed).
SolverRun run_ga(const Scenario& sc, const GaConfig& cfg, const FrozenGenes& frozen = {});

}  // namespace uavisac::ga
