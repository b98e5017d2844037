// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <unistd.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fgsw/analysis.hpp"
#include "fgsw/generators.hpp"
#include "fgsw/highway.hpp"
#include "fgsw/routing.hpp"
#include "oracles.hpp"

#ifndef FGSW_CLI
#error "FGSW_CLI must name the command-line binary"
#endif

using namespace fgsw;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) { return format_number(x); }

double auto_k(std::size_t n) { return auto_highway_constant(n); }

// Kept across criteria 3, 4 and 9 so each lattice overlay is built once.
struct Lattice {
  std::size_t side;
  Graph graph;
  HighwayOverlay overlay;
};

std::vector<Lattice>& lattices() {
  static std::vector<Lattice> cache;
  return cache;
}

const Lattice& lattice(std::size_t side) {
  for (const auto& l : lattices())
    if (l.side == side) return l;
  Graph g = gen_lattice(2, side, true);
  const OverlayParams p{auto_k(g.node_count()), 2, 2, kSeed};
  HighwayOverlay o = build_overlay(g, p);
  lattices().push_back({side, std::move(g), std::move(o)});
  return lattices().back();
}

Outcome contact_exactness() {
  const Graph ring = gen_lattice(1, 8, true);
  const std::vector<std::uint8_t> flags(8, 1);
  const ContactModel model(ring, flags, 1.0);
  ContactSampler::Scratch scratch;
  const ContactSampler sampler(model, 0, scratch);

  const auto d = oracle::all_pairs(ring);
  const double z_oracle = oracle::z(d, flags, 0, 1.0);
  const double z_exact = 47.0 / 12.0;
  const double p01 = model.weight(1) / sampler.z();
  const bool z_ok = std::abs(sampler.z() - z_exact) <= 1e-14 * z_exact &&
                    std::abs(z_oracle - z_exact) <= 1e-14 * z_exact;
  const bool p_ok = std::abs(p01 - 12.0 / 47.0) <= 1e-14;

  const CounterRng rng(kSeed, Stream::contacts);
  std::vector<double> counts(8, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) counts[sampler.draw(rng, i)] += 1;
  double stat = 0;
  for (NodeId v = 1; v < 8; ++v) {
    const double expected = draws * std::pow(static_cast<double>(d[0][v]), -1.0) / z_oracle;
    stat += (counts[v] - expected) * (counts[v] - expected) / expected;
  }
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(6), stat));
  return {z_ok && p_ok && counts[0] == 0 && p > 0.01,
          "z(0)=" + fmt(sampler.z()) + " Pr(0->1)=" + fmt(p01) + " chi2 p=" + fmt(p)};
}

Outcome z_exactness() {
  std::mt19937_64 rng(kSeed);
  double worst = 0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8 + rng() % 57;
    const Graph g = oracle::random_connected_graph(n, rng() % (2 * n), rng);
    const OverlayParams p{1.0 + static_cast<double>(rng() % 4), 2, 0.5 + static_cast<double>(rng() % 31) / 10.0,
                          rng()};
    const HighwayOverlay o = build_overlay(g, p);
    const auto d = oracle::all_pairs(g);
    for (NodeId u : o.highway_nodes()) {
      double z = 0;
      for (NodeId h : o.highway_nodes())
        if (h != u) z += std::pow(static_cast<double>(d[u][h]), -p.s);
      worst = std::max(worst, std::abs(o.z(u) - z) / z);
      ++checked;
    }
  }
  return {worst <= 1e-12, std::to_string(checked) + " nodes, max rel err " + fmt(worst)};
}

Outcome routing_speedup() {
  ScalingOptions opt;
  opt.sides = {64, 128, 256, 512};
  opt.pairs = 1000;
  opt.seed = kSeed;
  const StatReport with_log = routing_scaling(opt);
  opt.sides = {512};
  opt.k = 1.0;
  const StatReport with_one = routing_scaling(opt);
  const double r2 = with_log.scalar("fit_r2");
  const double hops_log = with_log.value(3, "mean_hops");
  const double hops_one = with_one.value(0, "mean_hops");
  const double ratio = hops_log / hops_one;
  std::string means;
  for (std::size_t i = 0; i < with_log.row_count(); ++i) means += (i ? "/" : "") + fmt(with_log.value(i, "mean_hops"));
  return {r2 >= 0.9 && ratio <= 0.5, "(a) R2=" + fmt(r2) + " hops " + means + "; (b) side 512 k=ln n " +
                                         fmt(hops_log) + " vs k=1 " + fmt(hops_one) + " ratio " + fmt(ratio)};
}

Outcome highway_distance() {
  bool ok = true;
  std::string detail;
  for (std::size_t side : {64, 128, 256, 512}) {
    const Lattice& l = lattice(side);
    const double v = highway_distance_stats(l.graph, l.overlay, 2.0).scalar("normalized_max");
    ok = ok && v >= 0.3 && v <= 3.0;
    detail += (detail.empty() ? "" : " ") + std::to_string(side) + ":" + fmt(v);
  }
  return {ok, "normalized max " + detail};
}

Outcome shell_scaling() {
  struct Case {
    int dim;
    std::size_t side;
    Distance width;
    Distance b_max;
  };
  bool ok = true;
  std::string detail;
  for (const Case c : {Case{1, 4096, 8, 20}, Case{2, 256, 4, 20}, Case{3, 96, 2, 23}}) {
    const Graph g = gen_lattice(c.dim, c.side, true);
    const HighwayOverlay o = build_overlay(g, {auto_k(g.node_count()), 2, 2, kSeed});
    const StatReport r = shell_highway_stats(g, o, {c.width, c.b_max, 200, kSeed, 1});
    const double e = r.scalar("fit_exponent");
    ok = ok && std::abs(e - (c.dim - 1)) <= 0.3;
    detail += (detail.empty() ? "" : " ") + ("alpha=" + std::to_string(c.dim)) + ":" + fmt(e);
  }
  return {ok, "exponents " + detail};
}

Outcome normalization() {
  std::vector<double> max_ratio;
  double min_ratio = 1e300;
  std::string detail;
  for (std::size_t side : {64, 128, 256}) {
    const Lattice& l = lattice(side);
    const StatReport r = z_stats(l.overlay, l.graph);
    max_ratio.push_back(r.scalar("max_ratio"));
    min_ratio = std::min(min_ratio, r.scalar("min_ratio"));
    detail += (detail.empty() ? "" : " ") + std::to_string(side) + ":max " + fmt(r.scalar("max_ratio")) + ",min " +
              fmt(r.scalar("min_ratio"));
  }
  const double growth = *std::max_element(max_ratio.begin(), max_ratio.end()) / max_ratio.front();
  return {growth <= 1.5 && min_ratio >= 0.1, detail + " growth " + fmt(growth)};
}

Outcome dimensionality() {
  AlphaOptions opt;
  opt.seed = kSeed;
  struct Case {
    std::string name;
    Graph graph;
    double lo, hi;
  };
  std::vector<Case> cases;
  cases.push_back({"ring1024", gen_lattice(1, 1024, true), 0.85, 1.15});
  cases.push_back({"torus64", gen_lattice(2, 64, true), 1.85, 2.15});
  cases.push_back({"cube12", gen_lattice(3, 12, true), 2.85, 3.15});
  cases.push_back({"sierpinski8", gen_sierpinski(8), 1.4, 1.8});
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const double a = estimate_alpha(c.graph, opt).alpha_median;
    const bool in = a >= c.lo - 1e-9 && a <= c.hi + 1e-9;
    ok = ok && in;
    detail += (detail.empty() ? "" : " ") + c.name + ":" + fmt(a) + (in ? "" : "(out)");
  }
  return {ok, "median alpha " + detail};
}

Outcome clustering_exponent() {
  const Graph gasket = gen_sierpinski(9);
  SweepOptions opt;
  opt.k = auto_k(gasket.node_count());
  opt.q = 2;
  opt.s_values = {1.585, 2.0};
  opt.pairs_per_s = 2000;
  opt.seed = kSeed;
  const StatReport sw = sweep_clustering_exponent(gasket, opt);
  const double m_alpha = sw.value(0, "mean_hops");
  const double m_two = sw.value(1, "mean_hops");
  const double gap = m_two - m_alpha;
  const bool gasket_ok = m_alpha <= 0.95 * m_two && gap > sw.value(0, "ci95") && gap > sw.value(1, "ci95");

  const Graph torus = gen_lattice(2, 128, true);
  opt.k = auto_k(torus.node_count());
  opt.s_values = {1.5, 1.75, 2.0, 2.25, 2.5};
  const StatReport lat = sweep_clustering_exponent(torus, opt);
  const double argmin = lat.scalar("argmin_s");
  std::string means;
  for (std::size_t i = 0; i < lat.row_count(); ++i) means += (i ? "/" : "") + fmt(lat.value(i, "mean_hops"));
  return {gasket_ok && argmin == 2.0, "gasket s=1.585 " + fmt(m_alpha) + "+-" + fmt(sw.value(0, "ci95")) +
                                          " vs s=2 " + fmt(m_two) + "+-" + fmt(sw.value(1, "ci95")) +
                                          "; torus128 argmin " + fmt(argmin) + " (" + means + ")"};
}

Outcome diameter_trend() {
  DiameterOptions opt;
  opt.seed = kSeed;
  std::vector<double> aug;
  std::vector<double> ln_n;
  bool below = true;
  std::string detail;
  for (std::size_t side : {64, 128}) {
    const Lattice& l = lattice(side);
    const StatReport r = estimate_diameter(l.graph, l.overlay, opt);
    aug.push_back(r.scalar("augmented_diameter"));
    ln_n.push_back(r.scalar("ln_n"));
    below = below && r.scalar("augmented_diameter") <= r.scalar("underlying_diameter");
    detail += (detail.empty() ? "" : " ") + std::to_string(side) + ":" + fmt(aug.back()) + "/" +
              fmt(r.scalar("underlying_diameter"));
  }
  const double ratio = aug[1] / aug[0];
  const double bound = 1.5 * ln_n[1] / ln_n[0];
  return {below && ratio <= bound, "augmented/underlying " + detail + "; ratio " + fmt(ratio) + " <= " + fmt(bound)};
}

Outcome routing_invariants() {
  std::mt19937_64 rng(kSeed);
  const Variant variants[] = {Variant::plain, Variant::highway_sticky, Variant::highway_aware};
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first_failure = what;
  };
  for (int g_index = 0; instances < 10000; ++g_index) {
    Graph g;
    switch (g_index % 4) {
      case 0: g = gen_lattice(2, 4 + rng() % 13, true); break;
      case 1: g = gen_lattice(1 + rng() % 2, 3 + rng() % 14, false); break;
      case 2: g = gen_sierpinski(1 + static_cast<int>(rng() % 5)); break;
      default: {
        const std::size_t n = 2 + rng() % 255;
        g = oracle::random_connected_graph(n, rng() % (2 * n), rng);
      }
    }
    const std::size_t n = g.node_count();
    const OverlayParams p{1.0 + static_cast<double>(rng() % 60) / 10.0, 0.5 + static_cast<double>(rng() % 4),
                          static_cast<double>(rng() % 41) / 10.0, rng()};
    if (p.contacts_per_node() < 1 || n < 2) continue;
    HighwayOverlay o;
    try {
      o = build_overlay(g, p);
    } catch (const DataError&) {
      continue;  // fewer than two highway nodes
    }
    Router router(g, o);
    for (int k = 0; k < 10; ++k) {
      const NodeId s = rng() % n;
      const NodeId t = rng() % n;
      const DistanceField to_t = bfs(g, t);
      ++instances;
      for (Variant v : variants) {
        const RoutingTrace tr = router.route(s, t, v);
        if (!tr.success || tr.path.back() != t) fail("no arrival");
        if (auto defect = validate_trace(g, o, tr)) fail(*defect);
        if (v != Variant::plain) continue;
        if (tr.hops() > to_t.dist[s]) fail("plain hops exceed d(s,t)");
        for (std::size_t i = 1; i < tr.path.size(); ++i)
          if (to_t.dist[tr.path[i]] >= to_t.dist[tr.path[i - 1]]) fail("plain step does not approach t");
      }
    }
  }
  return {failures == 0 && instances >= 10000,
          std::to_string(instances) + " instances, " + std::to_string(failures) + " failures" +
              (first_failure.empty() ? "" : " (" + first_failure + ")")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / ("fgsw_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream gr(root / "road.gr");
    gr << "c toy road network\np sp 7 14\n";
    const int arcs[][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {2, 5}, {5, 6}, {6, 3}};
    for (auto [a, b] : arcs) gr << "a " << a << ' ' << b << " 3\na " << b << ' ' << a << " 3\n";
  }
  const std::vector<std::string> commands = {
      "gen-lattice --dim 2 --side 24 --wrap --out {d}/g.txt",
      "gen-sierpinski --level 5 --out {d}/s.txt",
      "import-dimacs --in {r}/road.gr --out {d}/road.txt --map {d}/road_map.csv",
      "augment --graph {d}/g.txt --k auto --q 2 --s 2 --seed 7 --out {d}/o.txt",
      "augment --graph {d}/s.txt --k 3 --q 2 --s 1.585 --seed 7 --out {d}/so.txt",
      "route --graph {d}/g.txt --overlay {d}/o.txt --source 0 --target 300 --variant highway-sticky --out "
      "{d}/route.csv",
      "route-batch --graph {d}/g.txt --overlay {d}/o.txt --far-pairs 200 --seed 7 --variant highway-aware --out "
      "{d}/batch.csv",
      "stats balls --graph {d}/g.txt --overlay {d}/o.txt --seed 7 --alpha 2 --c 1 --samples 100 --out "
      "{d}/balls.csv",
      "stats shells --graph {d}/g.txt --overlay {d}/o.txt --seed 7 --width 2 --b-max 4 --samples 50 --out "
      "{d}/shells.csv",
      "stats z --graph {d}/g.txt --overlay {d}/o.txt --out {d}/z.csv",
      "stats highway-dist --graph {d}/g.txt --overlay {d}/o.txt --alpha 2 --out {d}/hd.csv",
      "stats improve --graph {d}/g.txt --overlay {d}/o.txt --seed 7 --factors 2,3 --samples 200 --out "
      "{d}/improve.csv",
      "stats fresh --graph {d}/g.txt --overlay {d}/o.txt --seed 7 --radius 2 --samples 50 --out {d}/fresh.csv",
      "diameter --graph {d}/g.txt --overlay {d}/o.txt --mode exact --out {d}/diam.csv",
      "diameter --graph {d}/s.txt --overlay {d}/so.txt --mode sampled --sources 10 --seed 7 --out "
      "{d}/diam_sampled.csv",
      "estimate-alpha --graph {d}/s.txt --samples 100 --seed 7 --out {d}/alpha.csv",
      "sweep-s --graph {d}/g.txt --k auto --q 2 --s-values 1.5,2 --pairs 100 --seed 7 --out {d}/sweep.csv",
      "scaling --dim 2 --sides 16,24 --k auto --q 2 --s 2 --pairs 100 --seed 7 --diameter --out-dir {d}",
  };
  auto expand = [&](std::string c, const fs::path& d) {
    for (const auto& [key, value] : {std::pair<std::string, std::string>{"{d}", d.string()},
                                     std::pair<std::string, std::string>{"{r}", root.string()}}) {
      for (std::size_t pos; (pos = c.find(key)) != std::string::npos;) c.replace(pos, key.size(), value);
    }
    return c;
  };

  // threads 1, threads 8, and threads 1 again
  const std::vector<std::string> runs = {"t1", "t8", "t1again"};
  for (const auto& run : runs) {
    const fs::path d = root / run;
    fs::create_directories(d);
    const std::string threads = run == "t8" ? "8" : "1";
    for (const auto& c : commands) {
      const std::string line = "FGSW_THREADS=" + threads + " '" + FGSW_CLI + "' " + expand(c, d) + " > /dev/null";
      if (std::system(line.c_str()) != 0) return {false, "command failed: " + expand(c, d)};
    }
    // the explicit flag must agree with the environment fallback
    const std::string flag = std::string("'") + FGSW_CLI + "' route-batch --graph " + (d / "g.txt").string() +
                             " --overlay " + (d / "o.txt").string() + " --far-pairs 200 --seed 7 --variant " +
                             "highway-aware --threads " + threads + " --out " + (d / "batch_flag.csv").string() +
                             " > /dev/null";
    if (std::system(flag.c_str()) != 0) return {false, "command failed: route-batch --threads"};
  }

  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(root / "t1")) names.insert(entry.path().filename().string());
  std::size_t compared = 0;
  for (const auto& name : names) {
    const std::string base = slurp(root / "t1" / name);
    for (const auto& run : runs) {
      if (!fs::exists(root / run / name) || slurp(root / run / name) != base) {
        return {false, name + " differs in run " + run};
      }
    }
    ++compared;
  }
  if (slurp(root / "t1" / "batch.csv") != slurp(root / "t1" / "batch_flag.csv")) {
    return {false, "--threads output differs from FGSW_THREADS output"};
  }
  fs::remove_all(root);
  return {compared >= commands.size(), std::to_string(commands.size()) + " commands, " + std::to_string(compared) +
                                           " files byte-identical across threads 1/8/1"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"contact distribution exact on ring of 8", contact_exactness},
      {"z matches brute force on random graphs", z_exactness},
      {"highway routing hops grow like ln n and beat k=1", routing_speedup},
      {"distance to highway scales with (k ln n)^(1/2)", highway_distance},
      {"shell counts grow with exponent alpha-1", shell_scaling},
      {"normalization constant bounds", normalization},
      {"growth exponent estimator", dimensionality},
      {"s = alpha beats s = 2", clustering_exponent},
      {"augmented diameter trend", diameter_trend},
      {"routing invariants over 10^4 instances", routing_invariants},
      {"CLI output independent of threads", cli_determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2d: %s  %s | %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
