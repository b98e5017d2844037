#pragma once

// Brute-force reference implementations shared by the tests. Deliberately
// naive: adjacency matrices and Floyd-Warshall, no BFS.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "fgsw/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<std::uint32_t>>;
inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 4;

inline Matrix all_pairs(std::size_t n, const std::vector<std::pair<fgsw::NodeId, fgsw::NodeId>>& edges) {
  Matrix d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : edges) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline Matrix all_pairs(const fgsw::Graph& g) {
  std::vector<std::pair<fgsw::NodeId, fgsw::NodeId>> edges;
  for (fgsw::NodeId u = 0; u < g.node_count(); ++u)
    for (fgsw::NodeId v : g.neighbors(u))
      if (u < v) edges.emplace_back(u, v);
  return all_pairs(g.node_count(), edges);
}

// z(u) = sum over highway h != u of d(u,h)^-s
inline double z(const Matrix& d, const std::vector<std::uint8_t>& highway, std::size_t u, double s) {
  double total = 0;
  for (std::size_t h = 0; h < d.size(); ++h)
    if (highway[h] && h != u) total += std::pow(static_cast<double>(d[u][h]), -s);
  return total;
}

// Random connected graph: a random spanning tree plus extra random edges.
inline std::vector<std::pair<fgsw::NodeId, fgsw::NodeId>> random_connected_edges(std::size_t n, std::size_t extra,
                                                                                 std::mt19937_64& rng) {
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<std::pair<fgsw::NodeId, fgsw::NodeId>> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b || used[a][b]) return;
    used[a][b] = used[b][a] = true;
    edges.emplace_back(static_cast<fgsw::NodeId>(a), static_cast<fgsw::NodeId>(b));
  };
  for (std::size_t v = 1; v < n; ++v) add(v, std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
  for (std::size_t i = 0; i < extra; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    add(pick(rng), pick(rng));
  }
  return edges;
}

inline fgsw::Graph random_connected_graph(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
  const auto edges = random_connected_edges(n, extra, rng);
  return fgsw::Graph::from_edges(n, edges);
}

}  // namespace oracle
