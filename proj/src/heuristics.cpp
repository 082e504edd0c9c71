#include "qaplon/heuristics.hpp"

#include <cmath>
#include <limits>

#include "qaplon/parallel.hpp"
#include "qaplon/rng.hpp"

namespace qaplon {

RunResult simulated_annealing(const QapInstance& inst, const SaConfig& cfg,
                              std::uint64_t seed, std::optional<double> target) {
  if (cfg.initial_temperature <= 0.0)
    throw std::invalid_argument("sa: initial_temperature must be > 0");
  if (cfg.cooling_factor <= 0.0 || cfg.cooling_factor >= 1.0)
    throw std::invalid_argument("sa: cooling_factor must be in (0, 1)");
  if (cfg.budget < 1) throw std::invalid_argument("sa: budget must be >= 1");

  Rng rng(seed);
  Permutation p = random_permutation(inst.n(), rng);
  double c = cost(inst, p);
  int evals = 1;
  RunResult res;
  res.best_cost = c;
  res.best_solution = p;

  const auto moves = swap_moves(inst.n());
  double temperature = cfg.initial_temperature;
  while (evals < cfg.budget) {
    const SwapMove m = moves[rng.below(moves.size())];
    const double d = swap_delta(inst, p, m);
    ++evals;
    const bool accept = d <= 0.0 || rng.unit() < std::exp(-d / temperature);
    if (accept) {
      p.apply(m);
      c += d;
      if (c < res.best_cost) {
        res.best_cost = c;
        res.best_solution = p;
      }
    }
    temperature *= cfg.cooling_factor;
  }
  res.evaluations_used = evals;
  res.final_temperature = temperature;
  res.hit = target && res.best_cost == *target;
  return res;
}

Permutation pmx(const Permutation& parent1, const Permutation& parent2, int cut1, int cut2) {
  const int n = parent1.size();
  if (parent2.size() != n) throw std::invalid_argument("pmx: parent sizes differ");
  if (cut1 < 0 || cut1 >= cut2 || cut2 > n) throw std::invalid_argument("pmx: invalid cuts");

  std::vector<int> child(static_cast<std::size_t>(n));
  // Position of each value inside parent1's segment, -1 elsewhere.
  std::vector<int> seg_pos(static_cast<std::size_t>(n), -1);
  for (int k = cut1; k < cut2; ++k) {
    child[static_cast<std::size_t>(k)] = parent1[k];
    seg_pos[static_cast<std::size_t>(parent1[k])] = k;
  }
  for (int pos = 0; pos < n; ++pos) {
    if (pos >= cut1 && pos < cut2) continue;
    int v = parent2[pos];
    while (seg_pos[static_cast<std::size_t>(v)] != -1)
      v = parent2[seg_pos[static_cast<std::size_t>(v)]];
    child[static_cast<std::size_t>(pos)] = v;
  }
  return Permutation(std::move(child));
}

RunResult genetic_algorithm(const QapInstance& inst, const GaConfig& cfg,
                            std::uint64_t seed, std::optional<double> target,
                            const std::vector<Permutation>* initial_population) {
  const int n = inst.n();
  const int pop_size = cfg.population_size;
  if (pop_size < 2) throw std::invalid_argument("ga: population_size must be >= 2");
  if (cfg.mutation_probability < 0.0 || cfg.mutation_probability > 1.0)
    throw std::invalid_argument("ga: mutation_probability must be in [0, 1]");
  if (cfg.budget < pop_size)
    throw std::invalid_argument("ga: budget smaller than population_size, cannot initialize");

  Rng rng(seed);
  std::vector<Permutation> pop;
  pop.reserve(static_cast<std::size_t>(pop_size));
  if (initial_population) {
    if (static_cast<int>(initial_population->size()) != pop_size)
      throw std::invalid_argument("ga: initial population size mismatch");
    pop = *initial_population;
  } else {
    for (int i = 0; i < pop_size; ++i) pop.push_back(random_permutation(n, rng));
  }

  std::vector<double> costs(static_cast<std::size_t>(pop_size));
  RunResult res;
  res.best_cost = std::numeric_limits<double>::infinity();
  int evals = 0;
  for (int i = 0; i < pop_size; ++i) {
    costs[static_cast<std::size_t>(i)] = cost(inst, pop[static_cast<std::size_t>(i)]);
    ++evals;
    if (costs[static_cast<std::size_t>(i)] < res.best_cost) {
      res.best_cost = costs[static_cast<std::size_t>(i)];
      res.best_solution = pop[static_cast<std::size_t>(i)];
    }
  }

  const auto moves = swap_moves(n);
  auto tournament = [&]() {
    const auto i1 = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pop_size)));
    const auto i2 = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pop_size)));
    return costs[i2] < costs[i1] ? i2 : i1;  // tie keeps the first draw
  };

  while (evals < cfg.budget) {
    const std::size_t parent1 = tournament();
    const std::size_t parent2 = tournament();
    int cut1, cut2;
    do {
      cut1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
      cut2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    } while (cut1 == cut2);
    if (cut1 > cut2) std::swap(cut1, cut2);
    Permutation child = pmx(pop[parent1], pop[parent2], cut1, cut2);
    if (rng.unit() < cfg.mutation_probability) child.apply(moves[rng.below(moves.size())]);

    const double child_cost = cost(inst, child);
    ++evals;
    // Elitist replacement: the child evicts the (first) worst member only
    // when strictly better; ties keep the incumbent.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < costs.size(); ++i)
      if (costs[i] > costs[worst]) worst = i;
    if (child_cost < costs[worst]) {
      pop[worst] = std::move(child);
      costs[worst] = child_cost;
      if (child_cost < res.best_cost) {
        res.best_cost = child_cost;
        res.best_solution = pop[worst];
      }
    }
  }
  res.evaluations_used = evals;
  res.final_temperature = std::numeric_limits<double>::quiet_NaN();
  res.hit = target && res.best_cost == *target;
  return res;
}

Runner make_sa_runner(const SaConfig& cfg, double target) {
  return [cfg, target](const QapInstance& inst, std::uint64_t seed) {
    return simulated_annealing(inst, cfg, seed, target);
  };
}

Runner make_ga_runner(const GaConfig& cfg, double target) {
  return [cfg, target](const QapInstance& inst, std::uint64_t seed) {
    return genetic_algorithm(inst, cfg, seed, target);
  };
}

double hit_rate(const QapInstance& inst, const Runner& run, int runs,
                std::uint64_t master_seed, int workers, std::vector<double>* best_costs) {
  if (runs < 1) throw std::invalid_argument("hit_rate: runs must be >= 1");
  std::vector<char> hits(static_cast<std::size_t>(runs), 0);
  std::vector<double> bests(static_cast<std::size_t>(runs), 0.0);
  parallel_for(runs, workers, [&](std::int64_t k) {
    const RunResult res = run(inst, derive_seed(master_seed, "run", static_cast<std::uint64_t>(k)));
    hits[static_cast<std::size_t>(k)] = res.hit ? 1 : 0;
    bests[static_cast<std::size_t>(k)] = res.best_cost;
  });
  if (best_costs) *best_costs = std::move(bests);
  int total = 0;
  for (char h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(runs);
}

}  // namespace qaplon
