#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgsw/analysis.hpp"
#include "fgsw/parallel.hpp"
#include "fgsw/rng.hpp"

namespace fgsw {

namespace {

void check_match(const Graph& graph, const HighwayOverlay& overlay) {
  if (graph.node_count() != overlay.node_count()) {
    throw std::invalid_argument("overlay does not match graph");
  }
}

void put_overlay_params(StatReport& report, const Graph& graph, const HighwayOverlay& overlay) {
  const auto& p = overlay.params();
  report.set("n", graph.node_count());
  report.set("k", p.k);
  report.set("q", p.q);
  report.set("s", p.s);
  report.set("overlay_seed", p.seed);
  report.set("highway_count", overlay.highway_count());
}

// (k ln n)^(1/alpha)
double highway_scale(double k, std::size_t n, double alpha) {
  return std::pow(k * std::log(static_cast<double>(n)), 1.0 / alpha);
}

struct BfsWork {
  BfsScratch scratch;
  DistanceField field;
};

}  // namespace

StatReport ball_highway_stats(const Graph& graph, const HighwayOverlay& overlay,
                              const BallStatsOptions& options) {
  check_match(graph, overlay);
  const std::size_t n = graph.node_count();
  const double k = overlay.params().k;
  const auto radius = static_cast<Distance>(std::ceil(options.c * highway_scale(k, n, options.alpha)));
  const Distance graph_radius = sampled_radius(graph, options.seed);
  if (radius > graph_radius) {
    throw std::invalid_argument("ball_highway_stats: radius " + std::to_string(radius) +
                                " exceeds graph radius " + std::to_string(graph_radius));
  }

  const auto centers = sample_nodes(n, options.samples, options.seed);
  std::vector<std::size_t> sizes(centers.size());
  std::vector<std::size_t> counts(centers.size());
  const unsigned workers = worker_count(centers.size(), options.threads);
  std::vector<BfsWork> work(workers);
  // coverage[v] = number of sampled balls containing v, kept per worker
  std::vector<std::vector<std::uint32_t>> coverage(workers, std::vector<std::uint32_t>(n, 0));

  parallel_for(centers.size(), options.threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    sizes[i] = bfs(graph, centers[i], radius, w.field, w.scratch);
    std::size_t count = 0;
    for (NodeId v : w.scratch.queue) {
      count += overlay.is_highway(v) ? 1 : 0;
      ++coverage[worker][v];
    }
    counts[i] = count;
  });

  double sum_sq_coverage = 0;
  for (NodeId v = 0; v < n; ++v) {
    double m = 0;
    for (const auto& c : coverage) m += c[v];
    sum_sq_coverage += m * m;
  }

  const double samples = static_cast<double>(centers.size());
  const double p = 1.0 / k;
  const double mean_count = std::accumulate(counts.begin(), counts.end(), 0.0) / samples;
  const double mean_size = std::accumulate(sizes.begin(), sizes.end(), 0.0) / samples;
  const double theory = std::pow(static_cast<double>(radius), options.alpha) / k;

  StatReport report("balls");
  put_overlay_params(report, graph, overlay);
  report.set("alpha", options.alpha);
  report.set("c", options.c);
  report.set("radius", static_cast<std::uint64_t>(radius));
  report.set("seed", options.seed);
  report.set("samples", centers.size());
  report.set("min_count", static_cast<std::uint64_t>(*std::min_element(counts.begin(), counts.end())));
  report.set("max_count", static_cast<std::uint64_t>(*std::max_element(counts.begin(), counts.end())));
  report.set("mean_count", mean_count);
  report.set("mean_ball_size", mean_size);
  report.set("expected_mean", mean_size * p);
  report.set("sigma_mean", std::sqrt(p * (1 - p) * sum_sq_coverage) / samples);
  report.set("ratio_to_theory", mean_count / theory);

  report.set_columns({"center", "ball_size", "highway_count", "seed", "samples"});
  for (std::size_t i = 0; i < centers.size(); ++i) {
    report.add_row({static_cast<std::int64_t>(centers[i]), static_cast<std::int64_t>(sizes[i]),
                    static_cast<std::int64_t>(counts[i]), static_cast<std::int64_t>(options.seed),
                    static_cast<std::int64_t>(centers.size())});
  }
  return report;
}

StatReport shell_highway_stats(const Graph& graph, const HighwayOverlay& overlay,
                               const ShellStatsOptions& options) {
  check_match(graph, overlay);
  if (options.width < 1) throw std::invalid_argument("shell_highway_stats: width must be >= 1");
  if (options.b_max < 1) throw std::invalid_argument("shell_highway_stats: b_max must be >= 1");
  const Distance outer = (options.b_max + 1) * options.width;
  const Distance graph_radius = sampled_radius(graph, options.seed);
  if (outer > graph_radius) {
    throw std::invalid_argument("shell_highway_stats: (b_max+1)*w = " + std::to_string(outer) +
                                " exceeds graph radius " + std::to_string(graph_radius));
  }

  const std::size_t shells = options.b_max + 1;
  const auto centers = sample_nodes(graph.node_count(), options.samples, options.seed);
  std::vector<std::vector<std::size_t>> highway(centers.size(), std::vector<std::size_t>(shells, 0));
  std::vector<std::vector<std::size_t>> nodes(centers.size(), std::vector<std::size_t>(shells, 0));
  std::vector<BfsWork> work(worker_count(centers.size(), options.threads));

  parallel_for(centers.size(), options.threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    bfs(graph, centers[i], outer, w.field, w.scratch);
    for (NodeId v : w.scratch.queue) {
      const Distance d = w.field.dist[v];
      if (d == 0) continue;
      const std::size_t b = (d - 1) / options.width;
      ++nodes[i][b];
      if (overlay.is_highway(v)) ++highway[i][b];
    }
  });

  StatReport report("shells");
  put_overlay_params(report, graph, overlay);
  report.set("width", static_cast<std::uint64_t>(options.width));
  report.set("b_max", static_cast<std::uint64_t>(options.b_max));
  report.set("seed", options.seed);
  report.set("samples", centers.size());
  report.set_columns({"b", "inner", "outer", "mean_highway", "mean_nodes", "seed", "samples"});

  std::vector<double> log_b;
  std::vector<double> log_count;
  const double samples = static_cast<double>(centers.size());
  for (std::size_t b = 0; b < shells; ++b) {
    double h = 0;
    double m = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      h += static_cast<double>(highway[i][b]);
      m += static_cast<double>(nodes[i][b]);
    }
    h /= samples;
    m /= samples;
    report.add_row({static_cast<std::int64_t>(b), static_cast<std::int64_t>(b * options.width),
                    static_cast<std::int64_t>((b + 1) * options.width), h, m,
                    static_cast<std::int64_t>(options.seed), static_cast<std::int64_t>(centers.size())});
    if (b >= 1 && h > 0) {
      log_b.push_back(std::log(static_cast<double>(b)));
      log_count.push_back(std::log(h));
    }
  }
  if (log_b.size() >= 2) {
    const LinearFit fit = fit_line(log_b, log_count);
    report.set("fit_exponent", fit.slope);
    report.set("fit_intercept", fit.intercept);
    report.set("fit_r2", fit.r2);
  }
  return report;
}

StatReport z_stats(const HighwayOverlay& overlay, const Graph& graph) {
  check_match(graph, overlay);
  const double n = static_cast<double>(graph.node_count());
  const double k = overlay.params().k;
  const double ln_n = std::log(n);
  double z_min = std::numeric_limits<double>::infinity();
  double z_max = 0;
  double z_sum = 0;
  for (NodeId h : overlay.highway_nodes()) {
    const double z = overlay.z(h);
    z_min = std::min(z_min, z);
    z_max = std::max(z_max, z);
    z_sum += z;
  }
  const double z_mean = z_sum / static_cast<double>(overlay.highway_count());
  const double upper_scale = ln_n / k + std::log(ln_n);
  const double lower_scale = ln_n / k;

  StatReport report("z");
  put_overlay_params(report, graph, overlay);
  report.set("seed", overlay.params().seed);
  report.set("samples", overlay.highway_count());
  report.set("ln_n", ln_n);
  report.set("z_min", z_min);
  report.set("z_max", z_max);
  report.set("z_mean", z_mean);
  report.set("max_ratio", z_max / upper_scale);
  report.set("min_ratio", z_min / lower_scale);
  report.set_columns({"highway_count", "z_min", "z_max", "z_mean", "ln_n", "max_ratio", "min_ratio",
                      "seed", "samples"});
  report.add_row({static_cast<std::int64_t>(overlay.highway_count()), z_min, z_max, z_mean, ln_n,
                  z_max / upper_scale, z_min / lower_scale,
                  static_cast<std::int64_t>(overlay.params().seed),
                  static_cast<std::int64_t>(overlay.highway_count())});
  return report;
}

StatReport highway_distance_stats(const Graph& graph, const HighwayOverlay& overlay, double alpha) {
  check_match(graph, overlay);
  const HighwayField field = nearest_highway_field(graph, overlay);
  const Distance max_d = field.max_distance();
  double mean = 0;
  for (Distance d : field.distance) mean += d;
  mean /= static_cast<double>(graph.node_count());
  const double scale = highway_scale(overlay.params().k, graph.node_count(), alpha);

  StatReport report("highway-dist");
  put_overlay_params(report, graph, overlay);
  report.set("alpha", alpha);
  report.set("seed", overlay.params().seed);
  report.set("samples", graph.node_count());
  report.set("max_distance", static_cast<std::uint64_t>(max_d));
  report.set("mean_distance", mean);
  report.set("scale", scale);
  report.set("normalized_max", max_d / scale);
  report.set_columns({"max_distance", "mean_distance", "scale", "normalized_max", "seed", "samples"});
  report.add_row({static_cast<std::int64_t>(max_d), mean, scale, max_d / scale,
                  static_cast<std::int64_t>(overlay.params().seed),
                  static_cast<std::int64_t>(graph.node_count())});
  return report;
}

StatReport improvement_probability(const Graph& graph, const HighwayOverlay& overlay,
                                   const ImprovementOptions& options) {
  check_match(graph, overlay);
  if (options.factors.empty()) throw std::invalid_argument("improvement_probability: no factors");
  for (double c : options.factors) {
    if (!(c > 1.0)) throw std::invalid_argument("improvement_probability: factors must exceed 1");
  }
  const std::size_t n = graph.node_count();
  const auto& params = overlay.params();
  const double c_max = *std::max_element(options.factors.begin(), options.factors.end());
  const auto min_distance =
      static_cast<Distance>(std::ceil(c_max * highway_scale(params.k, n, options.alpha)));
  const auto highway = overlay.highway_nodes();
  const double draws = static_cast<double>(overlay.draws_per_node());

  const std::size_t factors = options.factors.size();
  struct Sample {
    bool eligible = false;
    double z = 0;
    std::vector<std::uint8_t> hit;
    std::vector<double> expected;  // 1 - (1 - mass in ball)^draws
  };
  std::vector<Sample> samples(options.samples);
  struct Work {
    BfsWork from_u;
    BfsWork from_t;
  };
  std::vector<Work> work(worker_count(options.samples, options.threads));
  const CounterRng rng(options.seed, Stream::samples);

  std::vector<double> weight;
  {
    // d^-s lookup up to the largest possible distance
    BfsWork probe;
    const Distance ecc = eccentricity(graph, 0, probe.scratch, probe.field);
    weight.resize(2 * static_cast<std::size_t>(ecc) + 1, 0.0);
    for (std::size_t d = 1; d < weight.size(); ++d) weight[d] = std::pow(static_cast<double>(d), -params.s);
  }

  parallel_for(options.samples, options.threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    const NodeId u = highway[rng.below(highway.size(), i, 0)];
    bfs(graph, u, std::nullopt, w.from_u.field, w.from_u.scratch);
    const auto& du = w.from_u.field.dist;
    std::optional<NodeId> target;
    for (std::uint64_t attempt = 0; attempt <= 100 && !target; ++attempt) {
      const auto t = static_cast<NodeId>(rng.below(n, i, attempt + 1));
      if (du[t] >= min_distance) target = t;
    }
    if (!target) return;

    bfs(graph, *target, std::nullopt, w.from_t.field, w.from_t.scratch);
    const auto& dt = w.from_t.field.dist;
    Sample& s = samples[i];
    s.eligible = true;
    s.z = overlay.z(u);
    s.hit.assign(factors, 0);
    s.expected.assign(factors, 0.0);
    const Distance d = du[*target];
    for (std::size_t f = 0; f < factors; ++f) {
      const auto radius = static_cast<Distance>(std::floor(d / options.factors[f]));
      for (NodeId v : overlay.contacts(u)) {
        if (dt[v] <= radius) s.hit[f] = 1;
      }
      double mass = 0;
      for (NodeId h : highway) {
        if (h != u && dt[h] <= radius) mass += weight[du[h]];
      }
      s.expected[f] = 1.0 - std::pow(std::max(0.0, 1.0 - mass / s.z), draws);
    }
  });

  std::size_t eligible = 0;
  for (const auto& s : samples) eligible += s.eligible ? 1 : 0;
  if (eligible == 0) {
    throw DataError("improvement_probability: no eligible pairs at distance >= " +
                    std::to_string(min_distance));
  }

  StatReport report("improve");
  put_overlay_params(report, graph, overlay);
  report.set("alpha", options.alpha);
  report.set("min_distance", static_cast<std::uint64_t>(min_distance));
  report.set("seed", options.seed);
  report.set("samples", options.samples);
  report.set("eligible", eligible);
  report.set_columns({"c", "eligible", "probability", "expected_probability", "sigma",
                      "scaled", "seed", "samples"});
  for (std::size_t f = 0; f < factors; ++f) {
    const double c = options.factors[f];
    double hits = 0;
    double expected = 0;
    double variance = 0;
    double scaled = 0;
    for (const auto& s : samples) {
      if (!s.eligible) continue;
      hits += s.hit[f];
      expected += s.expected[f];
      variance += s.expected[f] * (1 - s.expected[f]);
      scaled += s.hit[f] * std::pow(c + 1, options.alpha) * s.z;
    }
    const double m = static_cast<double>(eligible);
    report.add_row({c, static_cast<std::int64_t>(eligible), hits / m, expected / m,
                    std::sqrt(variance) / m, scaled / m, static_cast<std::int64_t>(options.seed),
                    static_cast<std::int64_t>(options.samples)});
  }
  return report;
}

StatReport fresh_contact_probability(const Graph& graph, const HighwayOverlay& overlay,
                                     const FreshOptions& options) {
  check_match(graph, overlay);
  const std::size_t n = graph.node_count();
  const double cap = std::pow(static_cast<double>(n), options.theta / options.alpha);
  if (static_cast<double>(options.radius) > cap) {
    throw std::invalid_argument("fresh_contact_probability: radius exceeds n^(theta/alpha) = " +
                                format_number(cap));
  }
  const auto highway = overlay.highway_nodes();
  if (highway.empty() || options.samples == 0) {
    throw std::invalid_argument("fresh_contact_probability: no highway samples");
  }

  const auto& params = overlay.params();
  const ContactModel model(graph, overlay.membership(), params.s);
  const CounterRng contact_rng(params.seed, Stream::contacts);
  const CounterRng rng(options.seed, Stream::samples);
  const std::size_t draws = overlay.draws_per_node();
  const double ln_n = std::log(static_cast<double>(n));

  struct Result {
    NodeId u = 0;
    std::size_t outside = 0;
    double z = 0;
    double exact = 0;  // probability mass outside the ball
  };
  std::vector<Result> results(options.samples);
  struct Work {
    BfsWork ball;
    ContactSampler::Scratch sampler;
  };
  std::vector<Work> work(worker_count(options.samples, options.threads));

  parallel_for(options.samples, options.threads, [&](std::size_t i, unsigned worker) {
    auto& w = work[worker];
    Result& r = results[i];
    r.u = highway[rng.below(highway.size(), i)];
    bfs(graph, r.u, options.radius, w.ball.field, w.ball.scratch);
    const auto& dist = w.ball.field.dist;
    double inside = 0;
    for (NodeId v : w.ball.scratch.queue) {
      if (overlay.is_highway(v)) inside += model.weight(dist[v]);
    }
    const ContactSampler sampler(model, r.u, w.sampler);
    r.z = sampler.z();
    r.exact = std::max(0.0, 1.0 - inside / r.z);
    for (std::size_t j = 0; j < draws; ++j) {
      const NodeId v = sampler.draw(contact_rng, j);
      if (w.ball.field.dist[v] == kUnreachable) ++r.outside;
    }
  });

  double outside = 0;
  double exact = 0;
  double normalized = 0;
  for (const auto& r : results) {
    outside += static_cast<double>(r.outside);
    exact += r.exact;
    normalized += (static_cast<double>(r.outside) / static_cast<double>(draws)) /
                  (ln_n / (params.k * r.z));
  }
  const double samples = static_cast<double>(results.size());
  const double total_draws = samples * static_cast<double>(draws);

  StatReport report("fresh");
  put_overlay_params(report, graph, overlay);
  report.set("alpha", options.alpha);
  report.set("theta", options.theta);
  report.set("radius", static_cast<std::uint64_t>(options.radius));
  report.set("seed", options.seed);
  report.set("samples", results.size());
  report.set("draws", static_cast<std::uint64_t>(total_draws));
  report.set("probability", outside / total_draws);
  report.set("exact_probability", exact / samples);
  report.set("normalized", normalized / samples);
  report.set_columns({"node", "draws", "outside", "z", "exact_outside", "seed", "samples"});
  for (const auto& r : results) {
    report.add_row({static_cast<std::int64_t>(r.u), static_cast<std::int64_t>(draws),
                    static_cast<std::int64_t>(r.outside), r.z, r.exact,
                    static_cast<std::int64_t>(options.seed), static_cast<std::int64_t>(results.size())});
  }
  return report;
}

}  // namespace fgsw
