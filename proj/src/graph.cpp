#include "fgsw/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fgsw {

NodeId TorusShape::offset(NodeId from, NodeId to) const noexcept {
  NodeId result = 0;
  NodeId stride = 1;
  for (int axis = 0; axis < dim; ++axis) {
    const NodeId a = from % side;
    const NodeId b = to % side;
    from /= side;
    to /= side;
    result += ((b + side - a) % side) * stride;
    stride *= side;
  }
  return result;
}

NodeId TorusShape::translate(NodeId from, NodeId offset) const noexcept {
  NodeId result = 0;
  NodeId stride = 1;
  for (int axis = 0; axis < dim; ++axis) {
    const NodeId a = from % side;
    const NodeId b = offset % side;
    from /= side;
    offset /= side;
    result += ((a + b) % side) * stride;
    stride *= side;
  }
  return result;
}

Graph Graph::from_edges(std::size_t node_count,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        std::optional<TorusShape> torus) {
  if (node_count == 0) throw DataError("graph has no nodes");
  if (node_count > std::numeric_limits<NodeId>::max())
    throw DataError("graph has too many nodes for 32-bit ids");

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      std::ostringstream msg;
      msg << "edge (" << u << ", " << v << ") references a node outside [0, " << node_count << ")";
      throw DataError(msg.str());
    }
    if (u == v) throw DataError("self-loop on node " + std::to_string(u));
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t u = 0; u < node_count; ++u) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      std::ostringstream msg;
      msg << "duplicate edge (" << u << ", " << *dup << ")";
      throw DataError(msg.str());
    }
  }

  // connectivity: count components with a plain BFS
  std::vector<std::uint8_t> seen(node_count, 0);
  std::vector<NodeId> queue;
  queue.reserve(node_count);
  std::size_t components = 0;
  for (NodeId root = 0; root < node_count; ++root) {
    if (seen[root]) continue;
    ++components;
    seen[root] = 1;
    queue.clear();
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId w : g.neighbors(queue[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  if (components != 1) {
    throw DataError("graph is disconnected: " + std::to_string(components) + " components");
  }

  g.torus_ = torus;
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (!contains(u) || !contains(v)) return false;
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t bfs(const Graph& graph, NodeId source, std::optional<Distance> cutoff,
                DistanceField& out, BfsScratch& scratch) {
  if (!graph.contains(source)) throw std::out_of_range("bfs: invalid source " + std::to_string(source));
  const Distance limit = cutoff.value_or(kUnreachable - 1);

  out.source = source;
  out.dist.assign(graph.node_count(), kUnreachable);
  auto& queue = scratch.queue;
  queue.clear();
  queue.reserve(graph.node_count());

  out.dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const Distance next = out.dist[u] + 1;
    if (next > limit) continue;
    for (NodeId v : graph.neighbors(u)) {
      if (out.dist[v] == kUnreachable) {
        out.dist[v] = next;
        queue.push_back(v);
      }
    }
  }
  return queue.size();
}

DistanceField bfs(const Graph& graph, NodeId source, std::optional<Distance> cutoff) {
  DistanceField field;
  BfsScratch scratch;
  bfs(graph, source, cutoff, field, scratch);
  return field;
}

std::vector<Distance> multi_source_bfs(const Graph& graph, std::span<const NodeId> sources) {
  std::vector<Distance> dist(graph.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(graph.node_count());
  for (NodeId s : sources) {
    if (!graph.contains(s)) throw std::out_of_range("multi_source_bfs: invalid source");
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId v : graph.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

Distance eccentricity(const Graph& graph, NodeId source, BfsScratch& scratch,
                      DistanceField& field) {
  bfs(graph, source, std::nullopt, field, scratch);
  return field.dist[scratch.queue.back()];
}

std::vector<NodeId> ball(const Graph& graph, NodeId center, Distance radius) {
  if (!graph.contains(center)) throw std::out_of_range("ball: invalid center");
  DistanceField field;
  BfsScratch scratch;
  bfs(graph, center, radius, field, scratch);
  std::vector<NodeId> nodes(scratch.queue.begin(), scratch.queue.end());
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::size_t ball_size(const Graph& graph, NodeId center, Distance radius) {
  if (!graph.contains(center)) throw std::out_of_range("ball: invalid center");
  DistanceField field;
  BfsScratch scratch;
  return bfs(graph, center, radius, field, scratch);
}

std::vector<NodeId> shell(const Graph& graph, NodeId center, ShellSpec spec) {
  if (!graph.contains(center)) throw std::out_of_range("shell: invalid center");
  if (spec.width < 1) throw std::invalid_argument("shell: width must be >= 1");
  DistanceField field;
  BfsScratch scratch;
  bfs(graph, center, spec.outer(), field, scratch);
  std::vector<NodeId> nodes;
  for (NodeId v : scratch.queue) {
    if (field.dist[v] > spec.inner()) nodes.push_back(v);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

BallProfile ball_profile(const Graph& graph, NodeId center, Distance max_radius) {
  if (!graph.contains(center)) throw std::out_of_range("ball_profile: invalid center");
  DistanceField field;
  BfsScratch scratch;
  bfs(graph, center, max_radius, field, scratch);

  BallProfile profile;
  profile.center = center;
  const Distance reached = field.dist[scratch.queue.back()];
  profile.sizes.assign(reached + 1, 0);
  for (NodeId v : scratch.queue) ++profile.sizes[field.dist[v]];
  for (std::size_t l = 1; l < profile.sizes.size(); ++l) profile.sizes[l] += profile.sizes[l - 1];
  return profile;
}

std::vector<NodeId> pack_independent_balls(const Graph& graph, Distance radius) {
  if (radius < 1) throw std::invalid_argument("pack_independent_balls: radius must be >= 1");
  std::vector<std::uint8_t> available(graph.node_count(), 1);
  std::vector<NodeId> centers;
  DistanceField field;
  BfsScratch scratch;
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    if (!available[u]) continue;
    centers.push_back(u);
    bfs(graph, u, 2 * radius, field, scratch);
    for (NodeId v : scratch.queue) available[v] = 0;
  }
  return centers;
}

namespace {

// Reads the next line that is not blank; returns false at EOF.
bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw DataError("graph file is empty");

  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  if (!(header >> n >> m) || n <= 0 || m < 0) {
    throw DataError("line " + std::to_string(line_no) + ": expected header 'n m'");
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw DataError("graph file ends after " + std::to_string(i) + " of " +
                      std::to_string(m) + " edges");
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) {
      throw DataError("line " + std::to_string(line_no) + ": expected 'u v'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw DataError("line " + std::to_string(line_no) + ": node id out of range [0, " +
                      std::to_string(n) + ")");
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (next_content_line(in, line, line_no)) {
    throw DataError("line " + std::to_string(line_no) + ": more edges than the header declares");
  }
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.node_count() << ' ' << graph.edge_count() << '\n';
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (NodeId v : graph.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

void write_graph(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write graph file " + path.string());
  write_graph(out, graph);
}

}  // namespace fgsw
