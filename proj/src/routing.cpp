#include "fgsw/routing.hpp"

#include <ostream>
#include <stdexcept>

#include "fgsw/parallel.hpp"

namespace fgsw {

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::plain: return "plain";
    case Variant::highway_sticky: return "highway-sticky";
    case Variant::highway_aware: return "highway-aware";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) {
  return kind == EdgeKind::local ? "local" : "long-range";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::to_highway: return "to-highway";
    case Phase::on_highway: return "on-highway";
    case Phase::to_target: return "to-target";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::plain, Variant::highway_sticky, Variant::highway_aware}) {
    if (name == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown routing variant '" + std::string(name) + "'");
}

std::size_t RoutingTrace::hops_in(Phase phase) const noexcept {
  std::size_t count = 0;
  for (Phase p : phases) count += p == phase ? 1 : 0;
  return count;
}

Router::Router(const Graph& graph, const HighwayOverlay& overlay)
    : graph_(&graph), overlay_(&overlay) {
  if (overlay.node_count() != graph.node_count()) {
    throw std::invalid_argument("Router: overlay does not match graph");
  }
}

NodeId Router::best_local(NodeId u) const {
  const auto& d = to_target_.dist;
  NodeId best = u;
  Distance best_d = d[u];
  for (NodeId v : graph_->neighbors(u)) {
    if (d[v] < best_d) {
      best = v;
      best_d = d[v];
    }
  }
  return best;
}

std::optional<NodeId> Router::best_improving_contact(NodeId u) const {
  const auto& d = to_target_.dist;
  std::optional<NodeId> best;
  Distance best_d = d[u];
  for (NodeId c : overlay_->contacts(u)) {
    if (d[c] < best_d) {
      best = c;
      best_d = d[c];
    }
  }
  return best;
}

void Router::hop(RoutingTrace& trace, NodeId next, EdgeKind kind, Phase phase) const {
  trace.path.push_back(next);
  trace.edge_kinds.push_back(kind);
  trace.phases.push_back(phase);
}

RoutingTrace Router::route(NodeId source, NodeId target, Variant variant) {
  if (!graph_->contains(source) || !graph_->contains(target)) {
    throw std::out_of_range("route: node id out of range");
  }
  RoutingTrace trace;
  trace.source = source;
  trace.target = target;
  trace.variant = variant;
  trace.path.push_back(source);

  bfs(*graph_, target, std::nullopt, to_target_, scratch_);
  const auto& d = to_target_.dist;
  last_distance_ = d[source];

  NodeId cur = source;
  bool reached_highway = overlay_->is_highway(cur);
  auto local_phase = [&] { return reached_highway ? Phase::to_target : Phase::to_highway; };

  if (variant == Variant::plain) {
    while (cur != target) {
      NodeId next = best_local(cur);
      EdgeKind kind = EdgeKind::local;
      for (NodeId c : overlay_->contacts(cur)) {
        if (d[c] < d[next] || (d[c] == d[next] && c < next)) {
          next = c;
          kind = graph_->has_edge(cur, c) ? EdgeKind::local : EdgeKind::long_range;
        }
      }
      hop(trace, next, kind, kind == EdgeKind::long_range ? Phase::on_highway : local_phase());
      cur = next;
      reached_highway = reached_highway || overlay_->is_highway(cur);
    }
    trace.success = true;
    return trace;
  }

  if (variant == Variant::highway_aware) {
    if (!field_) field_ = nearest_highway_field(*graph_, *overlay_);
    while (cur != target && !overlay_->is_highway(cur)) {
      cur = field_->next_hop[cur];
      hop(trace, cur, EdgeKind::local, Phase::to_highway);
    }
    reached_highway = reached_highway || overlay_->is_highway(cur);
  }

  while (cur != target) {
    if (overlay_->is_highway(cur)) {
      reached_highway = true;
      if (auto contact = best_improving_contact(cur)) {
        cur = *contact;
        hop(trace, cur, EdgeKind::long_range, Phase::on_highway);
        continue;
      }
    }
    const Phase phase = local_phase();
    cur = best_local(cur);
    hop(trace, cur, EdgeKind::local, phase);
  }
  trace.success = true;
  return trace;
}

RoutingTrace route(const Graph& graph, const HighwayOverlay& overlay, NodeId source,
                   NodeId target, Variant variant) {
  Router router(graph, overlay);
  return router.route(source, target, variant);
}

std::optional<std::string> validate_trace(const Graph& graph, const HighwayOverlay& overlay,
                                          const RoutingTrace& trace) {
  if (trace.path.empty()) return "empty path";
  if (trace.path.front() != trace.source) return "path does not start at the source";
  if (trace.path.back() != trace.target) return "path does not end at the target";
  if (trace.edge_kinds.size() + 1 != trace.path.size() || trace.phases.size() != trace.edge_kinds.size()) {
    return "hop label count does not match path length";
  }
  for (std::size_t i = 0; i + 1 < trace.path.size(); ++i) {
    const NodeId a = trace.path[i];
    const NodeId b = trace.path[i + 1];
    const bool ok = trace.edge_kinds[i] == EdgeKind::local ? graph.has_edge(a, b)
                                                           : overlay.has_contact(a, b);
    if (!ok) {
      return "hop " + std::to_string(i) + " (" + std::to_string(a) + " -> " + std::to_string(b) +
             ") is not a " + std::string(to_string(trace.edge_kinds[i])) + " edge";
    }
  }
  return std::nullopt;
}

std::vector<RouteRow> route_batch(const Graph& graph, const HighwayOverlay& overlay,
                                  std::span<const std::pair<NodeId, NodeId>> pairs,
                                  Variant variant, unsigned threads) {
  std::vector<RouteRow> rows(pairs.size());
  std::vector<std::optional<Router>> routers(worker_count(pairs.size(), threads));
  parallel_for(pairs.size(), threads, [&](std::size_t i, unsigned worker) {
    auto& router = routers[worker];
    if (!router) router.emplace(graph, overlay);
    RouteRow& row = rows[i];
    row.pair_id = i;
    row.source = pairs[i].first;
    row.target = pairs[i].second;
    row.variant = variant;
    try {
      const RoutingTrace trace = router->route(row.source, row.target, variant);
      row.hops = trace.hops();
      row.hops_to_highway = trace.hops_in(Phase::to_highway);
      row.hops_on_highway = trace.hops_in(Phase::on_highway);
      row.hops_to_target = trace.hops_in(Phase::to_target);
      row.dist_st = router->last_distance();
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

void write_route_csv(std::ostream& out, std::span<const RouteRow> rows) {
  out << "pair_id,source,target,variant,hops,hops_to_highway,hops_on_highway,hops_to_target,dist_st\n";
  for (const RouteRow& r : rows) {
    out << r.pair_id << ',' << r.source << ',' << r.target << ',' << to_string(r.variant) << ',';
    if (r.error.empty()) {
      out << r.hops << ',' << r.hops_to_highway << ',' << r.hops_on_highway << ','
          << r.hops_to_target << ',' << r.dist_st << '\n';
    } else {
      out << ",,,,\n";
    }
  }
}

}  // namespace fgsw
