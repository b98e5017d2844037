#include <algorithm>
#include <cmath>

#include "fgsw/analysis.hpp"
#include "fgsw/parallel.hpp"

namespace fgsw {

namespace {

std::vector<double> alpha_grid(const AlphaOptions& options) {
  if (!(options.alpha_min >= 0.5) || !(options.alpha_max <= 4.0) ||
      !(options.alpha_min <= options.alpha_max)) {
    throw std::invalid_argument("estimate_alpha: grid must lie inside [0.5, 4]");
  }
  if (!(options.step > 0.0) || !(options.step <= 0.01 + 1e-12)) {
    throw std::invalid_argument("estimate_alpha: step must be in (0, 0.01]");
  }
  const auto steps =
      static_cast<std::size_t>(std::floor((options.alpha_max - options.alpha_min) / options.step + 1e-9));
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid[i] = options.alpha_min + static_cast<double>(i) * options.step;
  }
  return grid;
}

}  // namespace

DimEstimate estimate_alpha(const Graph& graph, const AlphaOptions& options) {
  const std::vector<double> grid = alpha_grid(options);
  const std::size_t n = graph.node_count();
  const auto nodes = sample_nodes(n, options.samples, options.seed);

  std::vector<NodeAlpha> results(nodes.size());
  std::vector<std::uint8_t> usable(nodes.size(), 0);
  struct Work {
    BfsScratch scratch;
    DistanceField field;
    std::vector<std::size_t> sizes;
    std::vector<double> log_l;
    std::vector<double> log_c;
  };
  std::vector<Work> work(worker_count(nodes.size(), options.threads));

  parallel_for(nodes.size(), options.threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    const NodeId u = nodes[i];
    bfs(graph, u, std::nullopt, w.field, w.scratch);
    const Distance ecc = w.field.dist[w.scratch.queue.back()];
    w.sizes.assign(ecc + 1, 0);
    for (NodeId v : w.scratch.queue) ++w.sizes[w.field.dist[v]];
    for (std::size_t l = 1; l < w.sizes.size(); ++l) w.sizes[l] += w.sizes[l - 1];

    // |B_l| < n/2, compared as 2|B_l| < n
    Distance l_max = 0;
    while (l_max + 1 < w.sizes.size() && 2 * w.sizes[l_max + 1] < n) ++l_max;
    NodeAlpha& r = results[i];
    r.node = u;
    r.radius_max = l_max;
    if (l_max < 3) return;
    usable[i] = 1;

    w.log_l.clear();
    w.log_c.clear();
    for (Distance l = 1; l <= l_max; ++l) {
      w.log_l.push_back(std::log(static_cast<double>(l)));
      w.log_c.push_back(std::log(static_cast<double>(w.sizes[l] - 1)));
    }
    double best_spread = std::numeric_limits<double>::infinity();
    for (double alpha : grid) {
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < w.log_l.size(); ++j) {
        const double c = w.log_c[j] - alpha * w.log_l[j];
        hi = std::max(hi, c);
        lo = std::min(lo, c);
      }
      if (hi - lo < best_spread) {
        best_spread = hi - lo;
        r.alpha = alpha;
      }
    }
    r.ratio = std::exp(best_spread);
  });

  DimEstimate estimate;
  estimate.alpha_min = grid.front();
  estimate.alpha_max = grid.back();
  estimate.step = options.step;
  estimate.seed = options.seed;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (usable[i]) {
      estimate.per_node.push_back(results[i]);
    } else {
      estimate.skipped.push_back(results[i].node);
    }
  }
  if (estimate.per_node.empty()) {
    throw DataError("estimate_alpha: every sampled node has l_max < 3");
  }
  std::vector<double> alphas;
  for (const auto& r : estimate.per_node) alphas.push_back(r.alpha);
  std::sort(alphas.begin(), alphas.end());
  const std::size_t m = alphas.size();
  estimate.alpha_median = m % 2 ? alphas[m / 2] : 0.5 * (alphas[m / 2 - 1] + alphas[m / 2]);
  return estimate;
}

StatReport DimEstimate::to_report(const Graph& graph) const {
  StatReport report("alpha");
  report.set("n", graph.node_count());
  report.set("alpha_min", alpha_min);
  report.set("alpha_max", alpha_max);
  report.set("step", step);
  report.set("seed", seed);
  report.set("samples", per_node.size() + skipped.size());
  report.set("used", per_node.size());
  report.set("skipped", skipped.size());
  report.set("alpha_median", alpha_median);
  report.set_columns({"node", "alpha", "ratio", "radius_max", "seed", "samples"});
  const auto samples = static_cast<std::int64_t>(per_node.size() + skipped.size());
  for (const auto& r : per_node) {
    report.add_row({static_cast<std::int64_t>(r.node), r.alpha, r.ratio,
                    static_cast<std::int64_t>(r.radius_max), static_cast<std::int64_t>(seed), samples});
  }
  return report;
}

}  // namespace fgsw
