#include <algorithm>
#include <cmath>

#include "fgsw/analysis.hpp"
#include "fgsw/generators.hpp"

namespace fgsw {

namespace {

struct HopSummary {
  std::size_t routed = 0;
  std::size_t failed = 0;
  double mean = 0;
  double sd = 0;
  double ci95 = 0;  // half-width, 1.96 sd / sqrt(N)
  double to_highway = 0;
  double on_highway = 0;
  double to_target = 0;
  double mean_distance = 0;
};

HopSummary summarize(const std::vector<RouteRow>& rows) {
  HopSummary s;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++s.failed;
      continue;
    }
    ++s.routed;
    s.mean += static_cast<double>(r.hops);
    s.to_highway += static_cast<double>(r.hops_to_highway);
    s.on_highway += static_cast<double>(r.hops_on_highway);
    s.to_target += static_cast<double>(r.hops_to_target);
    s.mean_distance += static_cast<double>(r.dist_st);
  }
  if (s.routed == 0) throw DataError("routing failed for every pair");
  const double m = static_cast<double>(s.routed);
  s.mean /= m;
  s.to_highway /= m;
  s.on_highway /= m;
  s.to_target /= m;
  s.mean_distance /= m;
  double ss = 0;
  for (const auto& r : rows) {
    if (r.error.empty()) ss += (static_cast<double>(r.hops) - s.mean) * (static_cast<double>(r.hops) - s.mean);
  }
  s.sd = s.routed > 1 ? std::sqrt(ss / (m - 1)) : 0.0;
  s.ci95 = 1.96 * s.sd / std::sqrt(m);
  return s;
}

}  // namespace

StatReport sweep_clustering_exponent(const Graph& graph, const SweepOptions& options) {
  if (options.s_values.empty()) throw std::invalid_argument("sweep: s_values is empty");
  std::vector<double> s_values = options.s_values;
  std::sort(s_values.begin(), s_values.end());
  s_values.erase(std::unique(s_values.begin(), s_values.end()), s_values.end());

  OverlayParams params{options.k, options.q, s_values.front(), options.seed};
  params.validate();
  const Membership membership = sample_highway_membership(graph, params);
  const FarPairs pairs = sample_far_pairs(graph, options.pairs_per_s, options.seed, options.threads);

  StatReport report("sweep");
  report.set("n", graph.node_count());
  report.set("k", options.k);
  report.set("q", options.q);
  report.set("seed", options.seed);
  report.set("samples", options.pairs_per_s);
  report.set("variant", std::string(to_string(options.variant)));
  report.set("highway_count", membership.highway_count);
  report.set("radius_estimate", static_cast<std::uint64_t>(pairs.radius_estimate));
  report.set("pair_threshold", static_cast<std::uint64_t>(pairs.threshold));
  report.set_columns({"s", "mean_hops", "sd", "ci95", "pairs", "failed", "mean_to_highway",
                      "mean_on_highway", "mean_to_target", "mean_dist_st", "seed", "samples"});

  double best_s = s_values.front();
  double best_mean = std::numeric_limits<double>::infinity();
  for (double s : s_values) {
    params.s = s;
    const HighwayOverlay overlay = build_overlay(graph, params, membership, options.threads);
    const auto rows = route_batch(graph, overlay, pairs.pairs, options.variant, options.threads);
    const HopSummary h = summarize(rows);
    report.add_row({s, h.mean, h.sd, h.ci95, static_cast<std::int64_t>(h.routed),
                    static_cast<std::int64_t>(h.failed), h.to_highway, h.on_highway, h.to_target,
                    h.mean_distance, static_cast<std::int64_t>(options.seed),
                    static_cast<std::int64_t>(options.pairs_per_s)});
    if (h.mean < best_mean) {
      best_mean = h.mean;
      best_s = s;
    }
  }
  report.set("argmin_s", best_s);
  report.set("argmin_mean_hops", best_mean);
  return report;
}

StatReport routing_scaling(const ScalingOptions& options) {
  if (options.sides.empty()) throw std::invalid_argument("scaling: no sides given");
  if (options.pairs == 0) throw std::invalid_argument("scaling: pairs must be >= 1");

  StatReport report("scaling");
  report.set("dim", options.dim);
  report.set("k", options.k ? format_number(*options.k) : std::string("auto"));
  report.set("q", options.q);
  report.set("s", options.s);
  report.set("seed", options.seed);
  report.set("samples", options.pairs);
  report.set("variant", std::string(to_string(options.variant)));
  std::string sides;
  for (std::size_t side : options.sides) sides += (sides.empty() ? "" : ";") + std::to_string(side);
  report.set("sides", sides);

  std::vector<std::string> columns = {"side", "n", "ln_n", "k", "highway_count", "mean_hops",
                                      "sd", "ci95", "mean_to_highway", "mean_on_highway",
                                      "mean_to_target", "mean_dist_st", "failed"};
  if (options.diameter) {
    columns.insert(columns.end(), {"diameter_mode", "augmented_diameter", "underlying_diameter"});
  }
  columns.insert(columns.end(), {"seed", "samples"});
  report.set_columns(columns);

  std::vector<double> ln_n;
  std::vector<double> hops;
  std::size_t largest = 0;
  for (std::size_t side : options.sides) {
    const Graph graph = gen_lattice(options.dim, side, true);
    const std::size_t n = graph.node_count();
    const double k = options.k ? *options.k : auto_highway_constant(n);
    const OverlayParams params{k, options.q, options.s, options.seed};
    const HighwayOverlay overlay = build_overlay(graph, params, options.threads);
    const FarPairs pairs = sample_far_pairs(graph, options.pairs, options.seed, options.threads);
    const auto rows = route_batch(graph, overlay, pairs.pairs, options.variant, options.threads);
    const HopSummary h = summarize(rows);
    const double log_n = std::log(static_cast<double>(n));
    largest = std::max(largest, n);
    ln_n.push_back(log_n);
    hops.push_back(h.mean);

    std::vector<StatReport::Cell> row = {
        static_cast<std::int64_t>(side), static_cast<std::int64_t>(n), log_n, k,
        static_cast<std::int64_t>(overlay.highway_count()), h.mean, h.sd, h.ci95, h.to_highway,
        h.on_highway, h.to_target, h.mean_distance, static_cast<std::int64_t>(h.failed)};
    if (options.diameter) {
      DiameterOptions d;
      d.mode = n <= options.diameter_cap ? DiameterMode::exact : DiameterMode::sampled;
      d.exact_cap = options.diameter_cap;
      d.seed = options.seed;
      d.threads = options.threads;
      const StatReport dr = estimate_diameter(graph, overlay, d);
      row.push_back(std::string(d.mode == DiameterMode::exact ? "exact" : "sampled-lower-bound"));
      row.push_back(static_cast<std::int64_t>(dr.scalar("augmented_diameter")));
      row.push_back(static_cast<std::int64_t>(dr.scalar("underlying_diameter")));
    }
    row.push_back(static_cast<std::int64_t>(options.seed));
    row.push_back(static_cast<std::int64_t>(options.pairs));
    report.add_row(std::move(row));
  }

  report.set("n", largest);
  if (ln_n.size() >= 2) {
    const LinearFit fit = fit_line(ln_n, hops);
    report.set("fit_slope", fit.slope);
    report.set("fit_intercept", fit.intercept);
    report.set("fit_r2", fit.r2);
  }
  return report;
}

}  // namespace fgsw
