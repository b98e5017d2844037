#include <algorithm>
#include <cmath>

#include "fgsw/analysis.hpp"
#include "fgsw/parallel.hpp"

namespace fgsw {

namespace {

// Eccentricity of `source` following local edges and the outgoing contacts of
// highway nodes.
Distance augmented_eccentricity(const Graph& graph, const HighwayOverlay& overlay, NodeId source,
                                std::vector<Distance>& dist, std::vector<NodeId>& queue) {
  dist.assign(graph.node_count(), kUnreachable);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::size_t head = 0;
  Distance last = 0;
  while (head < queue.size()) {
    const NodeId u = queue[head++];
    const Distance next = dist[u] + 1;
    last = dist[u];
    for (NodeId v : graph.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = next;
        queue.push_back(v);
      }
    }
    for (NodeId v : overlay.contacts(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = next;
        queue.push_back(v);
      }
    }
  }
  return last;
}

}  // namespace

StatReport estimate_diameter(const Graph& graph, const HighwayOverlay& overlay,
                             const DiameterOptions& options) {
  if (graph.node_count() != overlay.node_count()) {
    throw std::invalid_argument("estimate_diameter: overlay does not match graph");
  }
  const std::size_t n = graph.node_count();
  std::vector<NodeId> sources;
  if (options.mode == DiameterMode::exact) {
    if (n > options.exact_cap) {
      throw std::invalid_argument("estimate_diameter: exact mode needs n <= " +
                                  std::to_string(options.exact_cap) + " (n = " + std::to_string(n) +
                                  "); use sampled mode");
    }
    sources = sample_nodes(n, n, options.seed);
  } else {
    if (options.sources == 0) throw std::invalid_argument("estimate_diameter: need >= 1 source");
    sources = sample_nodes(n, options.sources, options.seed);
  }

  std::vector<Distance> augmented(sources.size());
  std::vector<Distance> underlying(sources.size());
  struct Work {
    std::vector<Distance> dist;
    std::vector<NodeId> queue;
    BfsScratch scratch;
    DistanceField field;
  };
  std::vector<Work> work(worker_count(sources.size(), options.threads));
  const bool symmetric = graph.torus().has_value();
  Distance torus_ecc = 0;
  if (symmetric) torus_ecc = eccentricity(graph, 0, work[0].scratch, work[0].field);

  parallel_for(sources.size(), options.threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    augmented[i] = augmented_eccentricity(graph, overlay, sources[i], w.dist, w.queue);
    underlying[i] = symmetric ? torus_ecc : eccentricity(graph, sources[i], w.scratch, w.field);
  });

  const Distance aug = *std::max_element(augmented.begin(), augmented.end());
  const Distance base = *std::max_element(underlying.begin(), underlying.end());
  const bool exact = options.mode == DiameterMode::exact;

  StatReport report("diameter");
  const auto& p = overlay.params();
  report.set("n", n);
  report.set("k", p.k);
  report.set("q", p.q);
  report.set("s", p.s);
  report.set("overlay_seed", p.seed);
  report.set("highway_count", overlay.highway_count());
  report.set("mode", exact ? "exact" : "sampled");
  report.set("bound", exact ? "exact" : "lower-bound");
  report.set("seed", options.seed);
  report.set("samples", sources.size());
  report.set("augmented_diameter", static_cast<std::uint64_t>(aug));
  report.set("underlying_diameter", static_cast<std::uint64_t>(base));
  report.set("ln_n", std::log(static_cast<double>(n)));
  report.set_columns({"n", "mode", "sources", "augmented_diameter", "underlying_diameter", "ln_n",
                      "seed", "samples"});
  report.add_row({static_cast<std::int64_t>(n), std::string(exact ? "exact" : "sampled-lower-bound"),
                  static_cast<std::int64_t>(sources.size()), static_cast<std::int64_t>(aug),
                  static_cast<std::int64_t>(base), std::log(static_cast<double>(n)),
                  static_cast<std::int64_t>(options.seed), static_cast<std::int64_t>(sources.size())});
  return report;
}

}  // namespace fgsw
