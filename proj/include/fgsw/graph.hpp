#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fgsw {

using NodeId = std::uint32_t;
using Distance = std::uint32_t;

inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

// Raised for bad input data (malformed files, disconnected graphs, budget
// overflows). Precondition violations by the caller use std::invalid_argument
// or std::out_of_range instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wrap-around lattice metadata. Node ids are row-major coordinates, so the
// translation x -> x + offset (mod side, per axis) is a graph automorphism.
struct TorusShape {
  int dim = 0;
  NodeId side = 0;

  NodeId offset(NodeId from, NodeId to) const noexcept;     // id of to - from
  NodeId translate(NodeId from, NodeId offset) const noexcept;  // id of from + offset

  bool operator==(const TorusShape&) const = default;
};

// Immutable undirected graph in offset + target (CSR) layout. Every neighbor
// list is sorted ascending. Construction rejects self-loops, duplicate edges,
// out-of-range ids and disconnected inputs.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t node_count,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          std::optional<TorusShape> torus = std::nullopt);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;
  bool contains(NodeId u) const noexcept { return u < node_count(); }

  const std::optional<TorusShape>& torus() const noexcept { return torus_; }

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> targets() const noexcept { return targets_; }

  bool operator==(const Graph& other) const noexcept {
    return offsets_ == other.offsets_ && targets_ == other.targets_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::optional<TorusShape> torus_;
};

// Single-source hop distances over local contacts.
struct DistanceField {
  NodeId source = 0;
  std::vector<Distance> dist;

  Distance operator[](NodeId v) const noexcept { return dist[v]; }
  bool reached(NodeId v) const noexcept { return dist[v] != kUnreachable; }
};

// Caller-owned BFS work space; one per thread.
struct BfsScratch {
  std::vector<NodeId> queue;
};

// Exact BFS from `source`. Nodes farther than `cutoff` keep kUnreachable.
// Returns the number of nodes reached; afterwards scratch.queue holds them in
// visit order.
std::size_t bfs(const Graph& graph, NodeId source, std::optional<Distance> cutoff,
                DistanceField& out, BfsScratch& scratch);
DistanceField bfs(const Graph& graph, NodeId source,
                  std::optional<Distance> cutoff = std::nullopt);

// Distance from every node to the nearest node of `sources`.
std::vector<Distance> multi_source_bfs(const Graph& graph, std::span<const NodeId> sources);

// Largest finite distance from `source` (its eccentricity).
Distance eccentricity(const Graph& graph, NodeId source, BfsScratch& scratch,
                      DistanceField& field);

// Nodes within distance `radius` of `center`, ascending id.
std::vector<NodeId> ball(const Graph& graph, NodeId center, Distance radius);
std::size_t ball_size(const Graph& graph, NodeId center, Distance radius);

struct ShellSpec {
  Distance width = 1;
  Distance index = 0;

  Distance inner() const noexcept { return index * width; }
  Distance outer() const noexcept { return (index + 1) * width; }
};

// Nodes at distance in (b*w, (b+1)*w] from `center`, ascending id.
std::vector<NodeId> shell(const Graph& graph, NodeId center, ShellSpec spec);

struct BallProfile {
  NodeId center = 0;
  std::vector<std::size_t> sizes;  // sizes[l] = |B_l(center)|
};

// Ball sizes for l = 0..max_radius (clamped to the eccentricity of center).
BallProfile ball_profile(const Graph& graph, NodeId center, Distance max_radius);

// Greedy packing: scan nodes in ascending id, take each still-available node
// as a center and retire B_{2l}(center). Centers end up pairwise > 2l apart.
std::vector<NodeId> pack_independent_balls(const Graph& graph, Distance radius);

// Graph text format: "n m" then m lines "u v".
Graph read_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& graph);
void write_graph(const std::filesystem::path& path, const Graph& graph);

}  // namespace fgsw
