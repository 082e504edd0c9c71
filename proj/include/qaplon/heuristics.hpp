#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qaplon/qap.hpp"

namespace qaplon {

struct SaConfig {
  double initial_temperature = 1e7;
  double cooling_factor = 0.9983;
  int budget = 10'000;  ///< total cost evaluations, initial solution included
};

struct GaConfig {
  int population_size = 100;
  double mutation_probability = 0.3;
  int budget = 10'000;
  static constexpr int tournament_size = 2;
};

struct RunResult {
  double best_cost = 0.0;
  Permutation best_solution;
  int evaluations_used = 0;
  bool hit = false;  ///< best_cost equals the known global minimum
  /// SA only: temperature after the last proposal (NaN for GA).
  double final_temperature = 0.0;
};

/// Metropolis SA over the swap neighborhood: one uniform random proposal per
/// evaluation, accept if the delta is <= 0 or with probability exp(-d/T),
/// geometric cooling after every proposal. Stops at exactly cfg.budget
/// evaluations and reports the best solution seen.
RunResult simulated_annealing(const QapInstance& inst, const SaConfig& cfg,
                              std::uint64_t seed,
                              std::optional<double> target = std::nullopt);

/// Steady-state GA: binary tournaments pick two parents, PMX produces one
/// child, a single random swap mutates it with the configured probability,
/// and the child replaces the worst member only when strictly better.
/// `initial_population` (when given) must hold population_size permutations;
/// otherwise the population is drawn uniformly at random.
RunResult genetic_algorithm(const QapInstance& inst, const GaConfig& cfg,
                            std::uint64_t seed,
                            std::optional<double> target = std::nullopt,
                            const std::vector<Permutation>* initial_population = nullptr);

/// Partially mapped crossover: the child copies parent1 on [cut1, cut2) and
/// takes parent2 elsewhere, resolving conflicts through the segment mapping.
Permutation pmx(const Permutation& parent1, const Permutation& parent2, int cut1, int cut2);

using Runner = std::function<RunResult(const QapInstance&, std::uint64_t seed)>;

Runner make_sa_runner(const SaConfig& cfg, double target);
Runner make_ga_runner(const GaConfig& cfg, double target);

/// Fraction of `runs` independent seeded executions whose best cost reached
/// the target; per-run seeds derive deterministically from master_seed, so
/// the result is independent of worker count.
double hit_rate(const QapInstance& inst, const Runner& run, int runs,
                std::uint64_t master_seed, int workers = 1,
                std::vector<double>* best_costs = nullptr);

}  // namespace qaplon
