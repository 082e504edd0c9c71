#pragma once

#include <cstdint>
#include <vector>

#include "qaplon/lon.hpp"

namespace qaplon {

/// Node-to-cluster assignment; cluster ids are contiguous from 0.
struct Partition {
  std::vector<std::uint32_t> cluster_of;
  std::uint32_t n_clusters = 0;
  bool converged = true;

  std::uint32_t size() const { return static_cast<std::uint32_t>(cluster_of.size()); }
};

struct MclParams {
  double inflation = 2.0;
  double prune_threshold = 1e-5;
  double convergence = 1e-8;
  int max_iterations = 200;
};

/// Markov Cluster process on the symmetrized weighted LON (self-loops
/// replaced by max incident weight), column-normalized; alternates expansion
/// (matrix square) and inflation (entrywise power + renormalize) with
/// pruning until the iterate is stable. Clusters are read off the attractor
/// rows; nodes claimed by several attractors go to the lowest cluster id.
Partition mcl_cluster(const Lon& lon, const MclParams& params = {});
inline Partition mcl_cluster(const Lon& lon, double inflation) {
  MclParams p;
  p.inflation = inflation;
  return mcl_cluster(lon, p);
}

/// Symmetrized off-diagonal weights u_ij = (w_ij + w_ji) / 2 as a dense
/// row-major matrix with zero diagonal. Shared by MCL and modularity.
std::vector<double> symmetrized_weights(const Lon& lon);

}  // namespace qaplon
