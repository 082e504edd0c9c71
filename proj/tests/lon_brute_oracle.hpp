#pragma once

// Test-only brute force for small n: full-cost neighborhood scans, no
// memoization, no delta evaluation. Keeps the oracle independent of the
// extraction path it is used to check.

#include <map>
#include <optional>
#include <vector>

#include "qaplon/enumeration.hpp"
#include "qaplon/extract.hpp"

namespace qaplon::testing {

inline Permutation brute_climb(const QapInstance& inst, Permutation p) {
  for (;;) {
    const double base = cost(inst, p);
    double best_cost = base;
    std::optional<SwapMove> best_move;
    for (const SwapMove m : neighbors(p)) {
      Permutation q = p;
      q.apply(m);
      const double c = cost(inst, q);
      if (c < best_cost) {
        best_cost = c;
        best_move = m;
      }
    }
    if (!best_move) return p;
    p.apply(*best_move);
  }
}

inline bool brute_is_local_opt(const QapInstance& inst, const Permutation& p) {
  const double base = cost(inst, p);
  for (const SwapMove m : neighbors(p)) {
    Permutation q = p;
    q.apply(m);
    if (cost(inst, q) < base) return false;
  }
  return true;
}

struct BruteLon {
  std::vector<Permutation> optima;                   // sorted by (fitness, rank)
  std::map<std::vector<int>, std::size_t> basin_of;  // every permutation
  std::vector<std::uint64_t> basin_size;
  std::vector<std::vector<double>> weights;          // dense
};

inline BruteLon brute_lon(const QapInstance& inst) {
  const int n = inst.n();
  BruteLon out;
  std::map<std::vector<int>, std::size_t> opt_ids;
  std::vector<std::pair<double, std::uint64_t>> keys;  // (fitness, rank) per optimum

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    const Permutation endpoint = brute_climb(inst, Permutation(std::vector<int>(perm)));
    auto [it, fresh] = opt_ids.try_emplace(endpoint.values(), opt_ids.size());
    if (fresh) {
      out.optima.push_back(endpoint);
      keys.emplace_back(cost(inst, endpoint), rank(endpoint));
    }
    out.basin_of[perm] = it->second;
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Reorder ids by (fitness, rank) to match the extractor's convention.
  std::vector<std::size_t> order(out.optima.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
  std::vector<std::size_t> new_id(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) new_id[order[pos]] = pos;
  std::vector<Permutation> sorted(out.optima.size());
  for (std::size_t k = 0; k < out.optima.size(); ++k) sorted[new_id[k]] = out.optima[k];
  out.optima = std::move(sorted);
  for (auto& [key, id] : out.basin_of) id = new_id[id];

  const std::size_t k = out.optima.size();
  out.basin_size.assign(k, 0);
  for (const auto& [key, id] : out.basin_of) ++out.basin_size[id];
  out.weights.assign(k, std::vector<double>(k, 0.0));
  const double moves = static_cast<double>(n) * (n - 1) / 2.0;
  for (const auto& [key, id] : out.basin_of) {
    Permutation p{std::vector<int>(key)};
    for (const SwapMove m : neighbors(p)) {
      Permutation q = p;
      q.apply(m);
      out.weights[id][out.basin_of.at(q.values())] += 1.0;
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.weights[i][j] /= static_cast<double>(out.basin_size[i]) * moves;
  return out;
}

}  // namespace qaplon::testing
