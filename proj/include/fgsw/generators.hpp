#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fgsw/graph.hpp"

namespace fgsw {

inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 22;

// dim-dimensional lattice with `side` nodes per axis, row-major ids. With
// `wrap` the lattice is a torus and the result carries its TorusShape.
Graph gen_lattice(int dim, std::size_t side, bool wrap,
                  std::size_t node_budget = kDefaultNodeBudget);

// Sierpinski gasket graph. Level 1 is a triangle; level L+1 glues three copies
// of level L pairwise at their corners. Node count is 3(3^(L-1) + 1)/2.
Graph gen_sierpinski(int level, std::size_t node_budget = kDefaultNodeBudget);

std::size_t sierpinski_node_count(int level);

// If `graph` is exactly gen_lattice(dim, side, true) for some dim in 1..3,
// returns that lattice (which carries its TorusShape); otherwise returns the
// input unchanged.
Graph recognize_torus(Graph graph);

struct DimacsImport {
  Graph graph;
  std::vector<std::uint64_t> original_ids;  // new id -> 1-based DIMACS id
  std::vector<std::string> warnings;
};

// DIMACS shortest-path format ("p sp n m", "a u v w"). Weights are dropped,
// arcs collapse to undirected edges, and the largest component is kept.
DimacsImport import_dimacs(std::istream& in);
DimacsImport import_dimacs(const std::filesystem::path& path);

// "new_id,original_id" rows.
void write_renumbering_csv(std::ostream& out, const DimacsImport& imported);

}  // namespace fgsw
