#include <algorithm>
#include <numeric>

#include "fgsw/analysis.hpp"
#include "fgsw/parallel.hpp"
#include "fgsw/rng.hpp"

namespace fgsw {

namespace {
constexpr std::uint64_t kMaxPairRejections = 100;
}

Distance sampled_radius(const Graph& graph, std::uint64_t seed, std::size_t probes) {
  const CounterRng rng(seed, Stream::radius);
  BfsScratch scratch;
  DistanceField field;
  Distance best = kUnreachable;
  for (std::size_t i = 0; i < std::max<std::size_t>(probes, 1); ++i) {
    const auto v = static_cast<NodeId>(rng.below(graph.node_count(), i));
    best = std::min(best, eccentricity(graph, v, scratch, field));
  }
  return best;
}

FarPairs sample_far_pairs(const Graph& graph, std::size_t count, std::uint64_t seed,
                          unsigned threads) {
  if (graph.node_count() < 2) throw std::invalid_argument("sample_far_pairs: graph has a single node");
  FarPairs result;
  result.radius_estimate = sampled_radius(graph, seed);
  result.threshold = (result.radius_estimate + 1) / 2;
  result.pairs.resize(count);

  const CounterRng rng(seed, Stream::pairs);
  const std::size_t n = graph.node_count();
  struct Work {
    BfsScratch scratch;
    DistanceField field;
  };
  std::vector<Work> work(worker_count(count, threads));

  parallel_for(count, threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    const auto source = static_cast<NodeId>(rng.below(n, i, 0));
    bfs(graph, source, std::nullopt, w.field, w.scratch);
    NodeId farthest = source;
    for (std::uint64_t attempt = 0; attempt <= kMaxPairRejections; ++attempt) {
      const auto target = static_cast<NodeId>(rng.below(n, i, attempt + 1));
      if (w.field.dist[target] >= result.threshold) {
        farthest = target;
        break;
      }
      if (w.field.dist[target] > w.field.dist[farthest]) farthest = target;
    }
    if (farthest == source) {
      // every draw hit the source itself; take its lowest-id neighbor
      farthest = graph.neighbors(source).front();
    }
    result.pairs[i] = {source, farthest};
  });
  return result;
}

std::vector<NodeId> sample_nodes(std::size_t node_count, std::size_t count, std::uint64_t seed) {
  std::vector<NodeId> nodes(node_count);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  if (count >= node_count) return nodes;
  const CounterRng rng(seed, Stream::samples);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(node_count - i, i);
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(count);
  return nodes;
}

}  // namespace fgsw
