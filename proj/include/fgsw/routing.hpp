#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fgsw/graph.hpp"
#include "fgsw/highway.hpp"

namespace fgsw {

enum class Variant { plain, highway_sticky, highway_aware };
enum class EdgeKind : std::uint8_t { local, long_range };
enum class Phase : std::uint8_t { to_highway, on_highway, to_target };

std::string_view to_string(Variant variant);
std::string_view to_string(EdgeKind kind);
std::string_view to_string(Phase phase);
Variant parse_variant(std::string_view name);

struct RoutingTrace {
  NodeId source = 0;
  NodeId target = 0;
  Variant variant = Variant::plain;
  std::vector<NodeId> path;  // source ... target
  std::vector<EdgeKind> edge_kinds;  // one per hop
  std::vector<Phase> phases;  // one per hop
  bool success = false;

  std::size_t hops() const noexcept { return edge_kinds.size(); }
  std::size_t hops_in(Phase phase) const noexcept;
};

// Greedy router over a graph and its overlay. Distances to the target come
// from one exact BFS per call. Ties always go to the lowest node id.
//
//   plain           best of local + long-range neighbors, strict improvement
//   highway_sticky  local steps until a highway node, then improving
//                   long-range hops while any exist, then local steps
//   highway_aware   as highway_sticky, but the first phase follows
//                   nearest-highway pointers
//
// Not thread safe; use one Router per thread.
class Router {
 public:
  Router(const Graph& graph, const HighwayOverlay& overlay);

  RoutingTrace route(NodeId source, NodeId target, Variant variant);

  // d(source, target) from the most recent route() call.
  Distance last_distance() const noexcept { return last_distance_; }

 private:
  NodeId best_local(NodeId u) const;
  std::optional<NodeId> best_improving_contact(NodeId u) const;
  void hop(RoutingTrace& trace, NodeId next, EdgeKind kind, Phase phase) const;

  const Graph* graph_;
  const HighwayOverlay* overlay_;
  std::optional<HighwayField> field_;
  DistanceField to_target_;
  BfsScratch scratch_;
  Distance last_distance_ = 0;
};

RoutingTrace route(const Graph& graph, const HighwayOverlay& overlay, NodeId source,
                   NodeId target, Variant variant);

// Empty when every hop is a local edge or a recorded long-range contact and the
// path runs from source to target; otherwise a description of the first defect.
std::optional<std::string> validate_trace(const Graph& graph, const HighwayOverlay& overlay,
                                          const RoutingTrace& trace);

struct RouteRow {
  std::size_t pair_id = 0;
  NodeId source = 0;
  NodeId target = 0;
  Variant variant = Variant::plain;
  std::size_t hops = 0;
  std::size_t hops_to_highway = 0;
  std::size_t hops_on_highway = 0;
  std::size_t hops_to_target = 0;
  Distance dist_st = 0;
  std::string error;  // non-empty if this pair failed

  bool operator==(const RouteRow&) const = default;
};

// Routes every pair; row order = input order, independent of `threads`. A
// failing pair yields a row with `error` set and does not stop the batch.
std::vector<RouteRow> route_batch(const Graph& graph, const HighwayOverlay& overlay,
                                  std::span<const std::pair<NodeId, NodeId>> pairs,
                                  Variant variant, unsigned threads = 1);

// pair_id,source,target,variant,hops,hops_to_highway,hops_on_highway,hops_to_target,dist_st
void write_route_csv(std::ostream& out, std::span<const RouteRow> rows);

}  // namespace fgsw
