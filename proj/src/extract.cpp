#include "qaplon/extract.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "qaplon/enumeration.hpp"
#include "qaplon/parallel.hpp"

namespace qaplon {

namespace {

constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
// Dense K×K tally matrices are used up to this many nodes; degenerate
// landscapes with more optima fall back to hash maps.
constexpr std::size_t kDenseTallyMax = 2048;

struct ChunkPlan {
  std::uint64_t total;
  std::uint64_t chunk;
  std::int64_t count;
};

ChunkPlan plan_chunks(std::uint64_t total, int workers) {
  std::uint64_t chunk = 1 << 14;
  const std::uint64_t wanted = static_cast<std::uint64_t>(workers) * 16;
  while (chunk * wanted < total) chunk *= 2;
  std::int64_t count = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  return {total, chunk, count};
}

/// Maps an optimum's rank to its node id via a rank-sorted flat array.
struct IdIndex {
  std::vector<std::uint32_t> ranks;  // ascending
  std::vector<std::uint32_t> ids;

  std::uint32_t id_of(std::uint32_t opt_rank) const {
    auto it = std::lower_bound(ranks.begin(), ranks.end(), opt_rank);
    assert(it != ranks.end() && *it == opt_rank);
    return ids[static_cast<std::size_t>(it - ranks.begin())];
  }
};

}  // namespace

HillClimbResult hill_climb(const QapInstance& inst, const Permutation& start) {
  if (start.size() != inst.n())
    throw std::invalid_argument("hill_climb: start length does not match instance");
  DeltaScanner scanner(inst);
  std::vector<int> cur = start.values();
  double fitness = cost(inst, start);
  int steps = 0;
  for (;;) {
    scanner.load(cur);
    auto best = scanner.best_improving();
    if (!best) break;
    std::swap(cur[best->move.i], cur[best->move.j]);
    fitness += best->delta;
    ++steps;
  }
  return {make_permutation_unchecked(std::move(cur)), fitness, steps};
}

Lon extract_lon(const QapInstance& inst, const ExtractOptions& opts) {
  const int n = inst.n();
  if (n > opts.size_cap)
    throw std::invalid_argument("extract_lon: n exceeds the exhaustive size cap");
  if (n > 12)
    throw std::invalid_argument("extract_lon: n > 12 not supported (rank table is 32-bit)");
  const std::uint64_t nfact = factorial(n);
  const int workers = opts.workers > 0 ? opts.workers : 1;
  const std::uint64_t n_moves = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  // basin[r] = rank of the local optimum that best-improvement descent from
  // rank r reaches. Any write to a given slot stores the same value (the
  // climber is deterministic), so relaxed atomics suffice and the final table
  // is independent of scheduling.
  std::vector<std::atomic<std::uint32_t>> basin(nfact);
  const ChunkPlan plan = plan_chunks(nfact, workers);
  parallel_for(plan.count, workers, [&](std::int64_t c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * plan.chunk;
    const std::uint64_t hi = std::min(nfact, lo + plan.chunk);
    for (std::uint64_t r = lo; r < hi; ++r) basin[r].store(kUnset, std::memory_order_relaxed);
  });

  parallel_for(plan.count, workers, [&](std::int64_t c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * plan.chunk;
    const std::uint64_t hi = std::min(nfact, lo + plan.chunk);
    std::vector<int> perm(static_cast<std::size_t>(n));
    unrank_into(lo, n, perm);
    DeltaScanner scanner(inst);
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::vector<std::uint32_t> trajectory;
    for (std::uint64_t r = lo; r < hi; ++r) {
      if (basin[r].load(std::memory_order_relaxed) == kUnset) {
        cur = perm;
        std::uint32_t cur_rank = static_cast<std::uint32_t>(r);
        trajectory.clear();
        trajectory.push_back(cur_rank);
        std::uint32_t opt;
        for (;;) {
          scanner.load(cur);
          auto best = scanner.best_improving();
          if (!best) {
            opt = cur_rank;
            break;
          }
          std::swap(cur[best->move.i], cur[best->move.j]);
          cur_rank = static_cast<std::uint32_t>(rank_of(cur));
          const std::uint32_t existing = basin[cur_rank].load(std::memory_order_relaxed);
          if (existing != kUnset) {
            opt = existing;
            break;
          }
          trajectory.push_back(cur_rank);
        }
        for (std::uint32_t t : trajectory) basin[t].store(opt, std::memory_order_relaxed);
      }
      std::next_permutation(perm.begin(), perm.end());
    }
  });

  // Collect the optima (fixed points of the table) and order nodes by
  // (fitness, rank) so ids are deterministic.
  std::vector<std::vector<std::uint32_t>> found(static_cast<std::size_t>(plan.count));
  parallel_for(plan.count, workers, [&](std::int64_t c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * plan.chunk;
    const std::uint64_t hi = std::min(nfact, lo + plan.chunk);
    auto& local = found[static_cast<std::size_t>(c)];
    for (std::uint64_t r = lo; r < hi; ++r)
      if (basin[r].load(std::memory_order_relaxed) == r)
        local.push_back(static_cast<std::uint32_t>(r));
  });
  std::vector<std::uint32_t> opt_ranks;
  for (auto& local : found) opt_ranks.insert(opt_ranks.end(), local.begin(), local.end());
  std::sort(opt_ranks.begin(), opt_ranks.end());
  const std::size_t n_nodes = opt_ranks.size();

  std::vector<double> opt_fitness(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k)
    opt_fitness[k] = cost(inst, unrank(opt_ranks[k], n));

  std::vector<std::uint32_t> order(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k) order[k] = static_cast<std::uint32_t>(k);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (opt_fitness[x] != opt_fitness[y]) return opt_fitness[x] < opt_fitness[y];
    return opt_ranks[x] < opt_ranks[y];
  });

  IdIndex index;
  index.ranks = opt_ranks;
  index.ids.resize(n_nodes);
  for (std::size_t id = 0; id < n_nodes; ++id)
    index.ids[order[id]] = static_cast<std::uint32_t>(id);

  Lon lon;
  lon.n = n;
  lon.label = inst.label();
  lon.nodes.resize(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    LonNode& node = lon.nodes[index.ids[k]];
    node.optimum = unrank(opt_ranks[k], n);
    node.fitness = opt_fitness[k];
  }

  // Basin sizes.
  std::vector<std::vector<std::uint64_t>> size_parts(
      static_cast<std::size_t>(plan.count), std::vector<std::uint64_t>());
  parallel_for(plan.count, workers, [&](std::int64_t c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * plan.chunk;
    const std::uint64_t hi = std::min(nfact, lo + plan.chunk);
    auto& local = size_parts[static_cast<std::size_t>(c)];
    local.assign(n_nodes, 0);
    for (std::uint64_t r = lo; r < hi; ++r)
      ++local[index.id_of(basin[r].load(std::memory_order_relaxed))];
  });
  for (const auto& local : size_parts)
    for (std::size_t id = 0; id < n_nodes; ++id) lon.nodes[id].basin_size += local[id];

  // Transition tallies. Each unordered neighbor pair is visited once, from
  // its smaller-rank endpoint, and contributes one count in each direction.
  const bool dense = n_nodes <= kDenseTallyMax;
  std::vector<std::uint64_t> tally_dense;
  std::unordered_map<std::uint64_t, std::uint64_t> tally_sparse;
  std::mutex merge_mu;
  if (dense) tally_dense.assign(n_nodes * n_nodes, 0);

  parallel_for(plan.count, workers, [&](std::int64_t c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * plan.chunk;
    const std::uint64_t hi = std::min(nfact, lo + plan.chunk);
    std::vector<int> perm(static_cast<std::size_t>(n));
    unrank_into(lo, n, perm);
    std::vector<std::uint64_t> local_dense;
    std::unordered_map<std::uint64_t, std::uint64_t> local_sparse;
    if (dense) local_dense.assign(n_nodes * n_nodes, 0);
    for (std::uint64_t r = lo; r < hi; ++r) {
      const std::uint32_t src = index.id_of(basin[r].load(std::memory_order_relaxed));
      for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
          const std::uint64_t r2 = rank_of(perm);
          std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
          if (r2 < r) continue;
          const std::uint32_t dst =
              index.id_of(basin[r2].load(std::memory_order_relaxed));
          if (dense) {
            ++local_dense[static_cast<std::size_t>(src) * n_nodes + dst];
            ++local_dense[static_cast<std::size_t>(dst) * n_nodes + src];
          } else {
            ++local_sparse[(static_cast<std::uint64_t>(src) << 32) | dst];
            ++local_sparse[(static_cast<std::uint64_t>(dst) << 32) | src];
          }
        }
      }
      std::next_permutation(perm.begin(), perm.end());
    }
    std::lock_guard<std::mutex> lock(merge_mu);
    if (dense) {
      for (std::size_t k = 0; k < local_dense.size(); ++k) tally_dense[k] += local_dense[k];
    } else {
      for (const auto& [key, cnt] : local_sparse) tally_sparse[key] += cnt;
    }
  });

  lon.out.resize(n_nodes);
  if (dense) {
    for (std::size_t src = 0; src < n_nodes; ++src) {
      const double denom =
          static_cast<double>(lon.nodes[src].basin_size) * static_cast<double>(n_moves);
      for (std::size_t dst = 0; dst < n_nodes; ++dst) {
        const std::uint64_t cnt = tally_dense[src * n_nodes + dst];
        if (cnt)
          lon.out[src].emplace_back(static_cast<std::uint32_t>(dst),
                                    static_cast<double>(cnt) / denom);
      }
    }
  } else {
    for (const auto& [key, cnt] : tally_sparse) {
      const auto src = static_cast<std::uint32_t>(key >> 32);
      const auto dst = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
      const double denom =
          static_cast<double>(lon.nodes[src].basin_size) * static_cast<double>(n_moves);
      lon.out[src].emplace_back(dst, static_cast<double>(cnt) / denom);
    }
    for (auto& row : lon.out)
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  for (std::size_t id = 0; id < n_nodes; ++id)
    if (lon.nodes[id].fitness == lon.nodes[0].fitness)
      lon.global_ids.push_back(static_cast<std::uint32_t>(id));
  return lon;
}

GlobalOptimum global_optimum(const QapInstance& inst, const ExtractOptions& opts) {
  const int n = inst.n();
  if (n > opts.size_cap)
    throw std::invalid_argument("global_optimum: n exceeds the exhaustive size cap");
  const std::uint64_t nfact = factorial(n);
  const int workers = opts.workers > 0 ? opts.workers : 1;
  const ChunkPlan plan = plan_chunks(nfact, workers);

  struct Winner {
    double cost;
    std::uint64_t rank;
  };
  std::vector<Winner> winners(static_cast<std::size_t>(plan.count));
  parallel_for(plan.count, workers, [&](std::int64_t c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * plan.chunk;
    const std::uint64_t hi = std::min(nfact, lo + plan.chunk);
    std::vector<int> perm(static_cast<std::size_t>(n));
    unrank_into(lo, n, perm);
    Winner best{std::numeric_limits<double>::infinity(), lo};
    for (std::uint64_t r = lo; r < hi; ++r) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        const double* arow = inst.a_row(i);
        const double* brow = inst.b_row(perm[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j) total += arow[j] * brow[perm[static_cast<std::size_t>(j)]];
      }
      if (total < best.cost) best = {total, r};
      std::next_permutation(perm.begin(), perm.end());
    }
    winners[static_cast<std::size_t>(c)] = best;
  });
  Winner best = winners.front();
  for (const Winner& w : winners)
    if (w.cost < best.cost || (w.cost == best.cost && w.rank < best.rank)) best = w;
  return {best.cost, unrank(best.rank, n)};
}

}  // namespace qaplon
