#include "qaplon/lon.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qaplon/enumeration.hpp"
#include "qaplon/ioutil.hpp"

namespace qaplon {

std::uint64_t Lon::total_basin() const {
  std::uint64_t t = 0;
  for (const auto& node : nodes) t += node.basin_size;
  return t;
}

double Lon::strength(std::uint32_t i) const {
  double s = 0.0;
  for (const auto& [dst, w] : out[i])
    if (dst != i) s += w;
  return s;
}

bool Lon::is_global(std::uint32_t i) const {
  return std::find(global_ids.begin(), global_ids.end(), i) != global_ids.end();
}

void Lon::validate() const {
  if (nodes.empty()) throw std::logic_error("lon: no nodes");
  if (out.size() != nodes.size()) throw std::logic_error("lon: adjacency size mismatch");
  if (total_basin() != factorial(n))
    throw std::logic_error("lon: basin sizes do not partition n!");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double row = 0.0;
    for (const auto& [dst, w] : out[i]) {
      if (dst >= nodes.size()) throw std::logic_error("lon: edge destination out of range");
      if (w < 0.0 || w > 1.0) throw std::logic_error("lon: edge weight outside [0,1]");
      row += w;
    }
    if (std::abs(row - 1.0) > 1e-9)
      throw std::logic_error("lon: outgoing weights of node " + std::to_string(i) +
                             " sum to " + std::to_string(row));
  }
  if (global_ids.empty()) throw std::logic_error("lon: no global optimum recorded");
  double min_fit = nodes.front().fitness;
  for (const auto& node : nodes) min_fit = std::min(min_fit, node.fitness);
  for (std::uint32_t g : global_ids)
    if (nodes[g].fitness != min_fit)
      throw std::logic_error("lon: global id does not have minimal fitness");
}

void write_lon(const Lon& lon, std::ostream& nodes_out, std::ostream& edges_out) {
  nodes_out << "id\tfitness\tbasin_size\tpermutation\n";
  for (std::size_t i = 0; i < lon.nodes.size(); ++i) {
    const LonNode& node = lon.nodes[i];
    nodes_out << i << '\t' << format_double(node.fitness) << '\t' << node.basin_size << '\t';
    for (int k = 0; k < node.optimum.size(); ++k) {
      if (k) nodes_out << ' ';
      nodes_out << node.optimum[k] + 1;  // 1-based on disk
    }
    nodes_out << '\n';
  }
  edges_out << "src\tdst\tweight\n";
  for (std::size_t i = 0; i < lon.out.size(); ++i)
    for (const auto& [dst, w] : lon.out[i])
      edges_out << i << '\t' << dst << '\t' << format_double17(w) << '\n';
}

Lon read_lon(std::istream& nodes_in, std::istream& edges_in, std::string label) {
  Lon lon;
  lon.label = std::move(label);
  std::string line;
  if (!std::getline(nodes_in, line)) throw std::runtime_error("lon read: empty nodes file");
  while (std::getline(nodes_in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t id;
    double fitness;
    std::uint64_t basin;
    if (!(ls >> id >> fitness >> basin))
      throw std::runtime_error("lon read: malformed node line '" + line + "'");
    if (id != lon.nodes.size())
      throw std::runtime_error("lon read: node ids must be consecutive from 0");
    std::vector<int> perm;
    int v;
    while (ls >> v) perm.push_back(v - 1);
    if (perm.empty()) throw std::runtime_error("lon read: node without permutation");
    lon.nodes.push_back(LonNode{Permutation(std::move(perm)), fitness, basin});
  }
  if (lon.nodes.empty()) throw std::runtime_error("lon read: no nodes");
  lon.n = lon.nodes.front().optimum.size();

  lon.out.resize(lon.nodes.size());
  if (!std::getline(edges_in, line)) throw std::runtime_error("lon read: empty edges file");
  while (std::getline(edges_in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint32_t src, dst;
    double w;
    if (!(ls >> src >> dst >> w))
      throw std::runtime_error("lon read: malformed edge line '" + line + "'");
    if (src >= lon.nodes.size() || dst >= lon.nodes.size())
      throw std::runtime_error("lon read: edge endpoint out of range");
    lon.out[src].emplace_back(dst, w);
  }
  for (auto& row : lon.out)
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

  double min_fit = lon.nodes.front().fitness;
  for (const auto& node : lon.nodes) min_fit = std::min(min_fit, node.fitness);
  for (std::size_t i = 0; i < lon.nodes.size(); ++i)
    if (lon.nodes[i].fitness == min_fit) lon.global_ids.push_back(static_cast<std::uint32_t>(i));
  return lon;
}

void save_lon(const Lon& lon, const std::string& path_stem) {
  std::ostringstream nodes, edges;
  write_lon(lon, nodes, edges);
  write_file_atomic(path_stem + ".nodes.tsv", nodes.str());
  write_file_atomic(path_stem + ".edges.tsv", edges.str());
}

Lon load_lon(const std::string& path_stem) {
  std::string nodes = read_file(path_stem + ".nodes.tsv");
  std::string edges = read_file(path_stem + ".edges.tsv");
  std::istringstream ns(nodes), es(edges);
  return read_lon(ns, es, path_stem);
}

}  // namespace qaplon
