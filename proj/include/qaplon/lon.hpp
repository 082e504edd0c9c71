#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qaplon/qap.hpp"

namespace qaplon {

struct LonNode {
  Permutation optimum;      ///< representative permutation of the local optimum
  double fitness = 0.0;     ///< its cost
  std::uint64_t basin_size = 0;
};

/// Local optima network: one node per local optimum of the best-improvement
/// swap landscape, directed edges weighted by basin transition probability
/// p(b_i -> b_j), self-loops included. Nodes are ordered by (fitness, rank of
/// the representative permutation), so node ids are stable across runs and
/// worker counts.
struct Lon {
  int n = 0;
  std::string label;
  std::vector<LonNode> nodes;
  /// out[i] = (dst, weight) pairs sorted by dst; every row sums to 1.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> out;
  /// ids of all nodes whose fitness equals the global minimum (ties possible)
  std::vector<std::uint32_t> global_ids;

  std::uint64_t node_count() const { return nodes.size(); }
  double global_cost() const { return nodes[global_ids.front()].fitness; }
  std::uint64_t total_basin() const;
  /// s_i = sum of outgoing weights excluding the self-loop.
  double strength(std::uint32_t i) const;
  bool is_global(std::uint32_t i) const;

  /// Checks the structural invariants (basin partition, row sums, weight
  /// range, global ids). Throws std::logic_error on violation.
  void validate() const;
};

/// nodes.tsv: id, fitness, basin_size, permutation (1-based, space-separated).
/// edges.tsv: src, dst, weight (17 significant digits). Both carry a header.
void write_lon(const Lon& lon, std::ostream& nodes_out, std::ostream& edges_out);
Lon read_lon(std::istream& nodes_in, std::istream& edges_in, std::string label = "");

/// Convenience wrappers over <stem>.nodes.tsv / <stem>.edges.tsv.
void save_lon(const Lon& lon, const std::string& path_stem);
Lon load_lon(const std::string& path_stem);

}  // namespace qaplon
