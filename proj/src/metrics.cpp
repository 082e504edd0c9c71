#include "qaplon/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

#include "qaplon/stats.hpp"

namespace qaplon {

std::optional<double> clustering_coefficient(const Lon& lon) {
  const std::size_t nn = lon.nodes.size();
  const std::size_t words = (nn + 63) / 64;
  std::vector<std::uint64_t> adj(nn * words, 0);
  auto set_bit = [&](std::size_t i, std::size_t j) {
    adj[i * words + j / 64] |= (std::uint64_t{1} << (j % 64));
  };
  std::vector<std::uint32_t> degree(nn, 0);
  for (std::size_t i = 0; i < nn; ++i)
    for (const auto& [dst, w] : lon.out[i]) {
      (void)w;
      if (dst == i) continue;
      set_bit(i, dst);
      set_bit(dst, i);
    }
  for (std::size_t i = 0; i < nn; ++i) {
    std::uint32_t d = 0;
    for (std::size_t wd = 0; wd < words; ++wd) d += std::popcount(adj[i * words + wd]);
    degree[i] = d;
  }
  double total = 0.0;
  std::size_t qualifying = 0;
  for (std::size_t i = 0; i < nn; ++i) {
    if (degree[i] < 2) continue;
    // Ordered adjacent pairs (j, l) of i that are themselves adjacent.
    std::uint64_t closed2 = 0;
    for (std::size_t wd = 0; wd < words; ++wd) {
      std::uint64_t bits = adj[i * words + wd];
      while (bits) {
        const std::size_t j = wd * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        for (std::size_t w2 = 0; w2 < words; ++w2)
          closed2 += std::popcount(adj[i * words + w2] & adj[j * words + w2]);
      }
    }
    const double possible2 = static_cast<double>(degree[i]) * (degree[i] - 1);
    total += static_cast<double>(closed2) / possible2;
    ++qualifying;
  }
  if (qualifying == 0) return std::nullopt;
  return total / static_cast<double>(qualifying);
}

PathLengthResult path_length_to_optimum(const Lon& lon) {
  const std::size_t nn = lon.nodes.size();
  if (nn == 1) return {0.0, 0};

  // Multi-source Dijkstra from the global optima along reversed edges gives
  // every node's distance to its nearest global optimum.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rev(nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (const auto& [dst, w] : lon.out[i]) {
      if (dst == i || w <= 0.0) continue;
      rev[dst].emplace_back(static_cast<std::uint32_t>(i), 1.0 / w);
    }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nn, kInf);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::uint32_t g : lon.global_ids) {
    dist[g] = 0.0;
    heap.emplace(0.0, g);
  }
  while (!heap.empty()) {
    auto [d, node] = heap.top();
    heap.pop();
    if (d > dist[node]) continue;
    for (const auto& [next, len] : rev[node]) {
      const double nd = d + len;
      if (nd < dist[next]) {
        dist[next] = nd;
        heap.emplace(nd, next);
      }
    }
  }

  double total = 0.0;
  std::uint64_t reachable = 0, unreachable = 0;
  for (std::size_t i = 0; i < nn; ++i) {
    if (lon.is_global(static_cast<std::uint32_t>(i))) continue;
    if (dist[i] == kInf) {
      ++unreachable;
    } else {
      total += dist[i];
      ++reachable;
    }
  }
  PathLengthResult res;
  res.unreachable_count = unreachable;
  if (reachable > 0)
    res.l_opt = total / static_cast<double>(reachable);
  else if (unreachable == 0)
    res.l_opt = 0.0;  // every node is a global optimum
  return res;
}

std::optional<double> disparity(const Lon& lon) {
  double total = 0.0;
  std::size_t qualifying = 0;
  for (std::size_t i = 0; i < lon.nodes.size(); ++i) {
    const double s = lon.strength(static_cast<std::uint32_t>(i));
    if (s <= 0.0) continue;
    double y2 = 0.0;
    for (const auto& [dst, w] : lon.out[i]) {
      if (dst == i) continue;
      const double frac = w / s;
      y2 += frac * frac;
    }
    total += y2;
    ++qualifying;
  }
  if (qualifying == 0) return std::nullopt;
  return total / static_cast<double>(qualifying);
}

std::optional<double> fitness_fitness_correlation(const Lon& lon) {
  std::vector<double> f, fnn;
  for (std::size_t i = 0; i < lon.nodes.size(); ++i) {
    const double s = lon.strength(static_cast<std::uint32_t>(i));
    if (s <= 0.0) continue;
    double weighted = 0.0;
    for (const auto& [dst, w] : lon.out[i]) {
      if (dst == i) continue;
      weighted += w * lon.nodes[dst].fitness;
    }
    f.push_back(lon.nodes[i].fitness);
    fnn.push_back(weighted / s);
  }
  return spearman(f, fnn);
}

std::optional<double> modularity(const Lon& lon, const Partition& partition) {
  const std::size_t nn = lon.nodes.size();
  if (partition.cluster_of.size() != nn)
    throw std::invalid_argument("modularity: partition does not cover the LON");
  const std::vector<double> u = symmetrized_weights(lon);
  double two_w = 0.0;
  std::vector<double> k(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < nn; ++j) k[i] += u[i * nn + j];
    two_w += k[i];
  }
  if (two_w <= 0.0) return std::nullopt;
  std::vector<double> intra(partition.n_clusters, 0.0);
  std::vector<double> strength(partition.n_clusters, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    strength[partition.cluster_of[i]] += k[i];
    for (std::size_t j = 0; j < nn; ++j)
      if (partition.cluster_of[i] == partition.cluster_of[j]) intra[partition.cluster_of[i]] += u[i * nn + j];
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < partition.n_clusters; ++c) {
    const double a = strength[c] / two_w;
    q += intra[c] / two_w - a * a;
  }
  return q;
}

LonMetrics compute_all(const Lon& lon, double inflation) {
  LonMetrics m;
  m.n_v = lon.node_count();
  m.cc = clustering_coefficient(lon);
  auto path = path_length_to_optimum(lon);
  m.l_opt = path.l_opt;
  m.unreachable_count = path.unreachable_count;
  m.y2 = disparity(lon);
  m.f_nn = fitness_fitness_correlation(lon);
  Partition part = mcl_cluster(lon, inflation);
  m.mcl_converged = part.converged;
  m.q = modularity(lon, part);
  return m;
}

}  // namespace qaplon
