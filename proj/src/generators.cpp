#include "fgsw/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fgsw {

Graph gen_lattice(int dim, std::size_t side, bool wrap, std::size_t node_budget) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("gen_lattice: dim must be 1, 2 or 3");
  if (side < 2) throw std::invalid_argument("gen_lattice: side must be >= 2");

  std::size_t n = 1;
  for (int axis = 0; axis < dim; ++axis) {
    if (n > node_budget / side) {
      throw DataError("gen_lattice: side^dim exceeds node budget " + std::to_string(node_budget));
    }
    n *= side;
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n * static_cast<std::size_t>(dim));
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t stride = 1;
    for (int axis = 0; axis < dim; ++axis) {
      const std::size_t coord = (u / stride) % side;
      if (coord + 1 < side) {
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(u + stride));
      } else if (wrap && side > 2) {
        // side 2: the wrap edge coincides with the interior one
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(u + stride - side * stride));
      }
      stride *= side;
    }
  }

  std::optional<TorusShape> shape;
  if (wrap) shape = TorusShape{dim, static_cast<NodeId>(side)};
  return Graph::from_edges(n, edges, shape);
}

std::size_t sierpinski_node_count(int level) {
  std::size_t n = 3;
  for (int l = 1; l < level; ++l) n = 3 * n - 3;
  return n;
}

Graph gen_sierpinski(int level, std::size_t node_budget) {
  if (level < 1) throw std::invalid_argument("gen_sierpinski: level must be >= 1");
  if (level > 20 || sierpinski_node_count(level) > node_budget) {
    throw DataError("gen_sierpinski: level " + std::to_string(level) + " exceeds node budget " +
                    std::to_string(node_budget));
  }

  // corners: 0 = top, 1 = bottom-left, 2 = bottom-right
  std::size_t n = 3;
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {0, 2}, {1, 2}};
  std::array<NodeId, 3> corner = {0, 1, 2};

  for (int l = 1; l < level; ++l) {
    const std::size_t copy_n = n;
    const auto copy_edges = edges;
    const auto copy_corner = corner;

    std::vector<std::pair<NodeId, NodeId>> next_edges;
    next_edges.reserve(3 * copy_edges.size());
    std::size_t next_n = 0;
    std::array<std::vector<NodeId>, 3> remap;

    // copy 0 = top, 1 = bottom-left, 2 = bottom-right. Glued corners keep the
    // id assigned by the earlier copy, which is always the lower one.
    for (int c = 0; c < 3; ++c) {
      remap[c].assign(copy_n, 0);
      std::vector<std::int64_t> fixed(copy_n, -1);
      if (c == 1) fixed[copy_corner[0]] = remap[0][copy_corner[1]];
      if (c == 2) {
        fixed[copy_corner[0]] = remap[0][copy_corner[2]];
        fixed[copy_corner[1]] = remap[1][copy_corner[2]];
      }
      for (std::size_t v = 0; v < copy_n; ++v) {
        remap[c][v] = fixed[v] >= 0 ? static_cast<NodeId>(fixed[v]) : static_cast<NodeId>(next_n++);
      }
      for (const auto& [a, b] : copy_edges) next_edges.emplace_back(remap[c][a], remap[c][b]);
    }

    corner = {remap[0][copy_corner[0]], remap[1][copy_corner[1]], remap[2][copy_corner[2]]};
    n = next_n;
    edges = std::move(next_edges);
  }
  return Graph::from_edges(n, edges);
}

Graph recognize_torus(Graph graph) {
  const std::size_t n = graph.node_count();
  for (int dim = 1; dim <= 3; ++dim) {
    const auto side = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / dim)));
    if (side < 2) continue;
    std::size_t power = 1;
    for (int i = 0; i < dim; ++i) power *= side;
    if (power != n) continue;
    const std::size_t expected_m = side > 2 ? n * dim : n * dim / 2;
    if (graph.edge_count() != expected_m) continue;
    Graph lattice = gen_lattice(dim, side, true, n);
    if (lattice == graph) return lattice;
  }
  return graph;
}

namespace {

[[noreturn]] void dimacs_error(std::size_t line_no, const std::string& what) {
  throw DataError("DIMACS line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

DimacsImport import_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  long long declared_arcs = 0;
  long long arc_lines = 0;
  std::vector<std::pair<NodeId, NodeId>> arcs;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (n >= 0) dimacs_error(line_no, "duplicate problem line");
      if (!(row >> kind >> n >> declared_arcs) || kind != "sp" || n < 0 || declared_arcs < 0) {
        dimacs_error(line_no, "expected 'p sp <n> <m>'");
      }
    } else if (tag == "a") {
      if (n < 0) dimacs_error(line_no, "arc before problem line");
      long long u = 0;
      long long v = 0;
      double weight = 0;
      if (!(row >> u >> v >> weight)) dimacs_error(line_no, "expected 'a <u> <v> <w>'");
      if (u < 1 || u > n || v < 1 || v > n) {
        dimacs_error(line_no, "arc endpoint outside [1, " + std::to_string(n) + "]");
      }
      ++arc_lines;
      if (u == v) continue;
      auto a = static_cast<NodeId>(u - 1);
      auto b = static_cast<NodeId>(v - 1);
      arcs.emplace_back(std::min(a, b), std::max(a, b));
    } else {
      dimacs_error(line_no, "unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw DataError("DIMACS file has no problem line");
  if (n == 0) throw DataError("DIMACS graph is empty");

  DimacsImport result;
  if (arc_lines != declared_arcs) {
    result.warnings.push_back("problem line declares " + std::to_string(declared_arcs) +
                              " arcs, file has " + std::to_string(arc_lines));
  }

  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  // union-find for components
  std::vector<NodeId> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : arcs) {
    NodeId ra = find(a);
    NodeId rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::size_t> size(static_cast<std::size_t>(n), 0);
  for (NodeId v = 0; v < n; ++v) ++size[find(v)];
  // ties go to the component containing the lowest id
  NodeId best = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (size[v] > size[best]) best = v;
  }

  std::vector<NodeId> new_id(static_cast<std::size_t>(n), kUnreachable);
  for (NodeId v = 0; v < n; ++v) {
    if (find(v) == best) {
      new_id[v] = static_cast<NodeId>(result.original_ids.size());
      result.original_ids.push_back(static_cast<std::uint64_t>(v) + 1);
    }
  }
  const std::size_t dropped = static_cast<std::size_t>(n) - result.original_ids.size();
  if (dropped > 0) {
    result.warnings.push_back("dropped " + std::to_string(dropped) +
                              " nodes outside the largest connected component");
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(arcs.size());
  for (const auto& [a, b] : arcs) {
    if (new_id[a] != kUnreachable) edges.emplace_back(new_id[a], new_id[b]);
  }
  result.graph = Graph::from_edges(result.original_ids.size(), edges);
  return result;
}

DimacsImport import_dimacs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open DIMACS file " + path.string());
  return import_dimacs(in);
}

void write_renumbering_csv(std::ostream& out, const DimacsImport& imported) {
  out << "new_id,original_id\n";
  for (std::size_t i = 0; i < imported.original_ids.size(); ++i) {
    out << i << ',' << imported.original_ids[i] << '\n';
  }
}

}  // namespace fgsw
