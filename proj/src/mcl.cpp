#include "qaplon/mcl.hpp"

#include <cmath>

#include "qaplon/kernels.hpp"

namespace qaplon {

std::vector<double> symmetrized_weights(const Lon& lon) {
  const std::size_t nn = lon.nodes.size();
  std::vector<double> u(nn * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i)
    for (const auto& [dst, w] : lon.out[i]) {
      if (dst == i) continue;
      u[i * nn + dst] += 0.5 * w;
      u[static_cast<std::size_t>(dst) * nn + i] += 0.5 * w;
    }
  return u;
}

namespace {

// Column-major stochastic matrix helpers; column j is m[j*nn .. j*nn+nn).
void normalize_column(double* col, std::size_t nn, double prune) {
  const auto& k = kernels::active();
  double colsum = 0.0;
  double colmax = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < nn; ++i) {
    if (col[i] < prune) col[i] = 0.0;
    if (col[i] > colmax) {
      colmax = col[i];
      argmax = i;
    }
    colsum += col[i];
  }
  if (colsum <= 0.0) {
    // All mass pruned; keep the dominant entry to stay stochastic.
    col[argmax] = 1.0;
    return;
  }
  k.scale(col, 1.0 / colsum, nn);
}

}  // namespace

Partition mcl_cluster(const Lon& lon, const MclParams& params) {
  const std::size_t nn = lon.nodes.size();
  Partition part;
  part.cluster_of.assign(nn, 0);
  if (nn == 1) {
    part.n_clusters = 1;
    return part;
  }

  // Symmetrize and add self-loops of max incident weight, then column-normalize.
  std::vector<double> u = symmetrized_weights(lon);
  for (std::size_t i = 0; i < nn; ++i) {
    double mx = 0.0;
    for (std::size_t j = 0; j < nn; ++j)
      if (j != i && u[i * nn + j] > mx) mx = u[i * nn + j];
    u[i * nn + i] = mx > 0.0 ? mx : 1.0;
  }
  // Column-major from here on.
  std::vector<double> m(nn * nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) m[j * nn + i] = u[i * nn + j];
  for (std::size_t j = 0; j < nn; ++j) normalize_column(m.data() + j * nn, nn, 0.0);

  const auto& k = kernels::active();
  std::vector<double> next(nn * nn);
  std::vector<double> prev(nn * nn);
  const bool square_inflation = params.inflation == 2.0;
  part.converged = false;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    prev = m;
    // Expansion: next = m * m, accumulated column by column over the nonzero
    // entries of the input column (pruning keeps these sparse).
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t j = 0; j < nn; ++j) {
      const double* mj = m.data() + j * nn;
      double* out = next.data() + j * nn;
      for (std::size_t t = 0; t < nn; ++t)
        if (mj[t] != 0.0) k.axpy(mj[t], m.data() + t * nn, out, nn);
    }
    // Inflation + prune + renormalize.
    if (square_inflation) {
      for (std::size_t idx = 0; idx < nn * nn; ++idx) next[idx] *= next[idx];
    } else {
      for (std::size_t idx = 0; idx < nn * nn; ++idx)
        if (next[idx] != 0.0) next[idx] = std::pow(next[idx], params.inflation);
    }
    for (std::size_t j = 0; j < nn; ++j)
      normalize_column(next.data() + j * nn, nn, params.prune_threshold);
    m.swap(next);
    if (k.max_abs_diff(m.data(), prev.data(), nn * nn) < params.convergence) {
      part.converged = true;
      break;
    }
  }

  // Attractors have mass on their own diagonal; each attractor row (in the
  // row sense: entries m[col=j][row=i] for fixed i) spans one cluster.
  constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::vector<std::uint32_t> assigned(nn, kNone);
  std::uint32_t next_cluster = 0;
  for (std::size_t i = 0; i < nn; ++i) {
    if (m[i * nn + i] <= 0.0) continue;  // not an attractor
    std::uint32_t cid = assigned[i];
    if (cid == kNone) cid = next_cluster++;
    for (std::size_t j = 0; j < nn; ++j)
      if (m[j * nn + i] > 0.0 && assigned[j] == kNone) assigned[j] = cid;
  }
  for (std::size_t i = 0; i < nn; ++i)
    if (assigned[i] == kNone) assigned[i] = next_cluster++;

  // Compress ids to be contiguous in order of first appearance.
  std::vector<std::uint32_t> remap(next_cluster, kNone);
  std::uint32_t compressed = 0;
  part.cluster_of.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    const std::uint32_t cid = assigned[i];
    if (remap[cid] == kNone) remap[cid] = compressed++;
    part.cluster_of[i] = remap[cid];
  }
  part.n_clusters = compressed;
  return part;
}

}  // namespace qaplon
