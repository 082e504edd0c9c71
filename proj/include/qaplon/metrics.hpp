#pragma once

#include <cstdint>
#include <optional>

#include "qaplon/lon.hpp"
#include "qaplon/mcl.hpp"

namespace qaplon {

/// The six network measures of the study. Missing values are genuine (tiny
/// networks cannot support every measure) and propagate as absent cells.
struct LonMetrics {
  std::uint64_t n_v = 0;
  std::optional<double> cc;
  std::optional<double> l_opt;
  std::uint64_t unreachable_count = 0;
  std::optional<double> y2;
  std::optional<double> f_nn;
  std::optional<double> q;
  bool mcl_converged = true;
};

/// Mean local clustering coefficient on the undirected, unweighted projection
/// (self-loops dropped), averaged over nodes of degree >= 2; missing when no
/// node qualifies.
std::optional<double> clustering_coefficient(const Lon& lon);

struct PathLengthResult {
  std::optional<double> l_opt;
  std::uint64_t unreachable_count = 0;
};

/// Mean expected-moves distance to the nearest global optimum: directed edges
/// of length 1/w_ij (self-loops ignored), Dijkstra, averaged over non-global
/// nodes that can reach a global optimum. A single-node LON scores 0.
PathLengthResult path_length_to_optimum(const Lon& lon);

/// Mean disparity Y2(i) = sum_j ((w_ij/s_i)^2) over non-self edges, for nodes
/// with positive strength; missing when none qualifies.
std::optional<double> disparity(const Lon& lon);

/// Spearman correlation between node fitness and weighted nearest-neighbour
/// fitness F_nn(i) = (1/s_i) sum_{j!=i} w_ij f_j, over nodes with s_i > 0.
std::optional<double> fitness_fitness_correlation(const Lon& lon);

/// Newman modularity of the partition on the symmetrized weighted projection
/// (self-loops excluded); missing when the graph has no off-diagonal weight.
std::optional<double> modularity(const Lon& lon, const Partition& partition);

/// All six measures; q comes from mcl_cluster at the given inflation.
LonMetrics compute_all(const Lon& lon, double inflation = 2.0);

}  // namespace qaplon
