#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fgsw/graph.hpp"
#include "fgsw/highway.hpp"
#include "fgsw/routing.hpp"

namespace fgsw {

// Experiment output: "# key=value" header lines followed by a CSV table.
// All logarithms are natural; every report says so in its header.
class StatReport {
 public:
  using Cell = std::variant<std::int64_t, double, std::string>;

  explicit StatReport(std::string experiment);

  const std::string& experiment() const noexcept { return experiment_; }

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, double value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, unsigned value) { set(key, static_cast<std::uint64_t>(value)); }
  void set(const std::string& key, int value) { set(key, static_cast<std::int64_t>(value)); }

  bool has(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  double scalar(std::string_view key) const;

  void set_columns(std::vector<std::string> columns);
  void add_row(std::vector<Cell> row);

  std::span<const std::string> columns() const noexcept { return columns_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  double value(std::size_t row, std::string_view column) const;
  std::vector<double> column(std::string_view column) const;

  void write_csv(std::ostream& out) const;
  // <experiment>_<graph>_<n>_<seed>.csv
  std::string file_name(std::string_view graph_name) const;

 private:
  struct Entry {
    std::string key;
    std::string text;
    std::optional<double> number;
  };

  std::size_t column_index(std::string_view column) const;

  std::string experiment_;
  std::vector<Entry> header_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double value);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

// Ordinary least squares y = intercept + slope * x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// ceil(ln n): the canonical k = log n.
double auto_highway_constant(std::size_t node_count);

// Min eccentricity over a few seeded probe nodes (an upper bound on the radius).
Distance sampled_radius(const Graph& graph, std::uint64_t seed, std::size_t probes = 8);

struct FarPairs {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  Distance radius_estimate = 0;
  Distance threshold = 0;  // ceil(radius_estimate / 2)
};

// Uniform source, then uniform targets until d(s,t) >= threshold; after 100
// rejections the farthest target seen is accepted. Pair i depends only on
// (seed, i).
FarPairs sample_far_pairs(const Graph& graph, std::size_t count, std::uint64_t seed,
                          unsigned threads = 1);

// `count` distinct nodes (all nodes, ascending, if count >= n).
std::vector<NodeId> sample_nodes(std::size_t node_count, std::size_t count, std::uint64_t seed);

struct BallStatsOptions {
  double alpha = 2.0;
  double c = 2.0;  // radius multiplier: l = ceil(c * (k ln n)^(1/alpha))
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Highway nodes inside balls of radius ceil(c (k ln n)^(1/alpha)).
StatReport ball_highway_stats(const Graph& graph, const HighwayOverlay& overlay,
                              const BallStatsOptions& options);

struct ShellStatsOptions {
  Distance width = 1;
  Distance b_max = 1;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Mean highway count per shell index and the log-log slope of count vs index
// over b >= 1.
StatReport shell_highway_stats(const Graph& graph, const HighwayOverlay& overlay,
                               const ShellStatsOptions& options);

// Spread of z(u) against ln n / k + ln ln n (upper) and ln n / k (lower).
StatReport z_stats(const HighwayOverlay& overlay, const Graph& graph);

// Exact max / mean distance to the nearest highway node.
StatReport highway_distance_stats(const Graph& graph, const HighwayOverlay& overlay, double alpha);

struct ImprovementOptions {
  double alpha = 2.0;
  std::vector<double> factors = {2, 4, 8, 16};
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Probability that some contact of a highway node u lands in B_{d/c}(t),
// d = d(u,t), over pairs with d >= max(c) * (k ln n)^(1/alpha).
StatReport improvement_probability(const Graph& graph, const HighwayOverlay& overlay,
                                   const ImprovementOptions& options);

struct FreshOptions {
  Distance radius = 0;
  double alpha = 2.0;
  double theta = 0.9;  // radius must not exceed n^(theta/alpha)
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Probability that a raw contact draw of u leaves B_radius(u). Draws are
// regenerated from the overlay seed, so duplicates collapsed in storage count.
StatReport fresh_contact_probability(const Graph& graph, const HighwayOverlay& overlay,
                                     const FreshOptions& options);

enum class DiameterMode { exact, sampled };

struct DiameterOptions {
  DiameterMode mode = DiameterMode::exact;
  std::size_t sources = 64;  // sampled mode only
  std::size_t exact_cap = 20000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Max directed eccentricity over the augmented graph (local edges both ways,
// long-range edges forward), next to the underlying graph's value from the
// same sources. Sampled mode reports a lower bound.
StatReport estimate_diameter(const Graph& graph, const HighwayOverlay& overlay,
                             const DiameterOptions& options);

struct AlphaOptions {
  std::size_t samples = 1000;
  double alpha_min = 0.5;
  double alpha_max = 4.0;
  double step = 0.01;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct NodeAlpha {
  NodeId node = 0;
  double alpha = 0;
  double ratio = 0;  // c2 / c1 at the best alpha
  Distance radius_max = 0;
};

struct DimEstimate {
  double alpha_median = 0;
  std::vector<NodeAlpha> per_node;
  std::vector<NodeId> skipped;  // radius_max < 3
  double alpha_min = 0;
  double alpha_max = 0;
  double step = 0;
  std::uint64_t seed = 0;

  StatReport to_report(const Graph& graph) const;
};

// For each sampled node: c(l) = (|B_l| - 1) / l^alpha over 1 <= l <= l_max,
// where l_max is the largest radius with |B_l| < n/2, and the grid alpha that
// minimizes max c / min c (ties to the smaller alpha). Returns the median.
DimEstimate estimate_alpha(const Graph& graph, const AlphaOptions& options);

struct SweepOptions {
  double k = 1.0;
  double q = 2.0;
  std::vector<double> s_values;
  std::size_t pairs_per_s = 2000;
  std::uint64_t seed = 0;
  Variant variant = Variant::highway_sticky;
  unsigned threads = 1;
};

// One membership for all s; contacts redrawn per s from the same seed, so draw
// j of node u uses the same uniform at every s; the same far pairs are routed
// at every s. Rows ascend in s; the argmin prefers the smaller s on ties.
StatReport sweep_clustering_exponent(const Graph& graph, const SweepOptions& options);

struct ScalingOptions {
  int dim = 2;
  std::vector<std::size_t> sides;
  std::optional<double> k;  // nullopt: ceil(ln n)
  double q = 2.0;
  double s = 2.0;
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  Variant variant = Variant::highway_sticky;
  bool diameter = false;
  std::size_t diameter_cap = 20000;
  unsigned threads = 1;
};

// Routing hops (and optionally diameter) on wrap lattices of several sizes,
// with a fit of mean hops against ln n.
StatReport routing_scaling(const ScalingOptions& options);

}  // namespace fgsw
