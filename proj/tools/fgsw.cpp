#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fgsw/analysis.hpp"
#include "fgsw/generators.hpp"
#include "fgsw/graph.hpp"
#include "fgsw/highway.hpp"
#include "fgsw/routing.hpp"

namespace fs = std::filesystem;
using namespace fgsw;

namespace {

// Bad flag values found after parsing; exit code 1 like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("FGSW_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("FGSW_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

Graph load_graph(const std::string& path) { return recognize_torus(read_graph(fs::path(path))); }

double resolve_k(const std::string& text, std::size_t n) {
  if (text == "auto") return auto_highway_constant(n);
  try {
    std::size_t used = 0;
    const double k = std::stod(text, &used);
    if (used == text.size() && k >= 1.0 && std::isfinite(k)) return k;
  } catch (const std::exception&) {
  }
  throw UsageError("--k must be 'auto' or a number >= 1, got '" + text + "'");
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw DataError("error writing '" + path.string() + "'");
  std::cout << "wrote " << path.string() << '\n';
}

// Where an experiment CSV goes: --out verbatim, or --out-dir with the
// <experiment>_<graph>_<n>_<seed>.csv name.
struct ReportTarget {
  std::string out;
  std::string out_dir;
  std::string name;

  void attach(CLI::App* cmd) {
    auto* o = cmd->add_option("--out", out, "Output CSV path");
    auto* d = cmd->add_option("--out-dir", out_dir, "Directory for auto-named CSV output");
    o->excludes(d);
    cmd->add_option("--name", name, "Graph name used in auto-named files (default: graph file stem)");
  }

  void check() const {
    if (out.empty() && out_dir.empty()) throw UsageError("one of --out or --out-dir is required");
  }

  void write(const StatReport& report, const std::string& graph_path) const {
    fs::path path;
    if (!out.empty()) {
      path = out;
    } else {
      const std::string graph_name =
          !name.empty() ? name : (graph_path.empty() ? "graph" : fs::path(graph_path).stem().string());
      path = fs::path(out_dir) / report.file_name(graph_name);
    }
    auto stream = open_output(path);
    report.write_csv(stream);
    finish(stream, path);
  }
};

std::vector<std::pair<NodeId, NodeId>> read_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pairs file '" + path + "'");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream fields(line);
    long long s = -1;
    long long t = -1;
    std::string extra;
    if (!(fields >> s >> t) || (fields >> extra) || s < 0 || t < 0) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected 'source target'");
    }
    pairs.emplace_back(static_cast<NodeId>(s), static_cast<NodeId>(t));
  }
  return pairs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized highway small-world graphs: generation, routing and statistics"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  unsigned threads_flag = 0;
  std::function<void()> action;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads_flag, "Worker threads (env FGSW_THREADS as fallback)")
        ->check(CLI::PositiveNumber);
  };

  // gen-lattice
  int dim = 2;
  std::size_t side = 0;
  bool wrap = false;
  std::string out;
  {
    auto* cmd = app.add_subcommand("gen-lattice", "Write a 1-3 dimensional lattice graph");
    cmd->add_option("--dim", dim, "Dimension")->required()->check(CLI::Range(1, 3));
    cmd->add_option("--side", side, "Nodes per axis")->required()->check(CLI::Range(2, 1 << 22));
    cmd->add_flag("--wrap", wrap, "Wrap around (torus)");
    cmd->add_option("--out", out, "Output graph file")->required();
    cmd->callback([&] {
      action = [&] {
        const Graph g = gen_lattice(dim, side, wrap);
        auto stream = open_output(out);
        write_graph(stream, g);
        finish(stream, out);
      };
    });
  }

  // gen-sierpinski
  int level = 1;
  {
    auto* cmd = app.add_subcommand("gen-sierpinski", "Write a Sierpinski gasket graph");
    cmd->add_option("--level", level, "Recursion level (1 = triangle)")->required()->check(CLI::Range(1, 14));
    cmd->add_option("--out", out, "Output graph file")->required();
    cmd->callback([&] {
      action = [&] {
        const Graph g = gen_sierpinski(level);
        auto stream = open_output(out);
        write_graph(stream, g);
        finish(stream, out);
      };
    });
  }

  // import-dimacs
  std::string input;
  std::string map_out;
  {
    auto* cmd = app.add_subcommand("import-dimacs", "Convert a DIMACS .gr road network");
    cmd->add_option("--in", input, "DIMACS shortest-path file")->required();
    cmd->add_option("--out", out, "Output graph file")->required();
    cmd->add_option("--map", map_out, "CSV of new_id,original_id");
    cmd->callback([&] {
      action = [&] {
        const DimacsImport imported = import_dimacs(fs::path(input));
        for (const auto& w : imported.warnings) std::cerr << "warning: " << w << '\n';
        auto stream = open_output(out);
        write_graph(stream, imported.graph);
        finish(stream, out);
        if (!map_out.empty()) {
          auto map_stream = open_output(map_out);
          write_renumbering_csv(map_stream, imported);
          finish(map_stream, map_out);
        }
      };
    });
  }

  // augment
  std::string graph_path;
  std::string k_text;
  double q = 1.0;
  double s = 2.0;
  std::uint64_t seed = 0;
  {
    auto* cmd = app.add_subcommand("augment", "Build a highway overlay for a graph");
    cmd->add_option("--graph", graph_path, "Graph file")->required();
    cmd->add_option("--k", k_text, "Highway constant: number >= 1 or 'auto' (ceil(ln n))")->required();
    cmd->add_option("--q", q, "Contact multiplier (round(q*k) contacts per highway node)")->required();
    cmd->add_option("--s", s, "Clustering exponent")->required();
    cmd->add_option("--seed", seed, "Random seed")->required();
    cmd->add_option("--out", out, "Output overlay file")->required();
    add_threads(cmd);
    cmd->callback([&] {
      action = [&] {
        const unsigned threads = resolve_threads(threads_flag);
        const Graph g = load_graph(graph_path);
        const OverlayParams params{resolve_k(k_text, g.node_count()), q, s, seed};
        params.validate();
        const HighwayOverlay overlay = build_overlay(g, params, threads);
        auto stream = open_output(out);
        write_overlay(stream, overlay);
        finish(stream, out);
      };
    });
  }

  // route
  std::string overlay_path;
  NodeId source = 0;
  NodeId target = 0;
  std::string variant_name = "highway-sticky";
  const std::vector<std::string> variant_names = {"plain", "highway-sticky", "highway-aware"};
  {
    auto* cmd = app.add_subcommand("route", "Route one pair and write its trace");
    cmd->add_option("--graph", graph_path, "Graph file")->required();
    cmd->add_option("--overlay", overlay_path, "Overlay file")->required();
    cmd->add_option("--source", source, "Source node")->required();
    cmd->add_option("--target", target, "Target node")->required();
    cmd->add_option("--variant", variant_name, "Routing variant")->check(CLI::IsMember(variant_names));
    cmd->add_option("--out", out, "Trace CSV (step,node,edge_kind,phase)")->required();
    cmd->callback([&] {
      action = [&] {
        const Graph g = load_graph(graph_path);
        const HighwayOverlay overlay = read_overlay(fs::path(overlay_path), g);
        const RoutingTrace trace = route(g, overlay, source, target, parse_variant(variant_name));
        auto stream = open_output(out);
        stream << "# source=" << trace.source << "\n# target=" << trace.target
               << "\n# variant=" << to_string(trace.variant) << "\n# hops=" << trace.hops() << '\n';
        stream << "step,node,edge_kind,phase\n";
        stream << "0," << trace.path[0] << ",,\n";
        for (std::size_t i = 0; i < trace.hops(); ++i) {
          stream << i + 1 << ',' << trace.path[i + 1] << ',' << to_string(trace.edge_kinds[i]) << ','
                 << to_string(trace.phases[i]) << '\n';
        }
        finish(stream, out);
      };
    });
  }

  // route-batch
  std::string pairs_path;
  std::size_t far_pairs = 0;
  {
    auto* cmd = app.add_subcommand("route-batch", "Route many pairs and write the per-pair table");
    cmd->add_option("--graph", graph_path, "Graph file")->required();
    cmd->add_option("--overlay", overlay_path, "Overlay file")->required();
    auto* file_opt = cmd->add_option("--pairs", pairs_path, "File of 'source target' lines");
    auto* far_opt = cmd->add_option("--far-pairs", far_pairs, "Sample this many far pairs instead");
    file_opt->excludes(far_opt);
    cmd->add_option("--seed", seed, "Seed for --far-pairs");
    cmd->add_option("--variant", variant_name, "Routing variant")->check(CLI::IsMember(variant_names));
    cmd->add_option("--out", out, "Output CSV")->required();
    add_threads(cmd);
    cmd->callback([&, cmd, file_opt, far_opt] {
      if (file_opt->count() == 0 && far_opt->count() == 0) {
        throw CLI::ValidationError("route-batch", "one of --pairs or --far-pairs is required");
      }
      if (far_opt->count() > 0 && cmd->get_option("--seed")->count() == 0) {
        throw CLI::ValidationError("--seed", "--far-pairs requires --seed");
      }
      action = [&, far_opt] {
        const unsigned threads = resolve_threads(threads_flag);
        const Graph g = load_graph(graph_path);
        const HighwayOverlay overlay = read_overlay(fs::path(overlay_path), g);
        const auto pairs = far_opt->count() > 0 ? sample_far_pairs(g, far_pairs, seed, threads).pairs
                                                : read_pairs(pairs_path);
        const auto rows = route_batch(g, overlay, pairs, parse_variant(variant_name), threads);
        auto stream = open_output(out);
        write_route_csv(stream, rows);
        finish(stream, out);
        std::size_t failed = 0;
        for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
        if (failed > 0) std::cerr << failed << " pair(s) failed\n";
      };
    });
  }

  // stats
  ReportTarget target_out;
  double alpha = 2.0;
  double c = 2.0;
  std::size_t samples = 0;
  Distance width = 0;
  Distance b_max = 0;
  std::vector<double> factors = {2, 4, 8, 16};
  Distance radius = 0;
  double theta = 0.9;
  // outlives the block below: callbacks run after parsing
  auto run = [&](std::function<StatReport(const Graph&, const HighwayOverlay&, unsigned)> body) {
    target_out.check();
    action = [&, body] {
      const unsigned threads = resolve_threads(threads_flag);
      const Graph g = load_graph(graph_path);
      const HighwayOverlay overlay = read_overlay(fs::path(overlay_path), g);
      target_out.write(body(g, overlay, threads), graph_path);
    };
  };
  {
    auto* stats = app.add_subcommand("stats", "Highway statistics of a graph + overlay");
    stats->require_subcommand(1);
    auto common = [&](CLI::App* cmd, bool randomized) {
      cmd->add_option("--graph", graph_path, "Graph file")->required();
      cmd->add_option("--overlay", overlay_path, "Overlay file")->required();
      if (randomized) cmd->add_option("--seed", seed, "Sampling seed")->required();
      target_out.attach(cmd);
      add_threads(cmd);
    };

    auto* balls = stats->add_subcommand("balls", "Highway nodes per ball");
    common(balls, true);
    balls->add_option("--alpha", alpha, "Growth dimension")->check(CLI::PositiveNumber);
    balls->add_option("--c", c, "Radius multiplier")->check(CLI::PositiveNumber);
    balls->add_option("--samples", samples, "Sampled centers (default 500)");
    balls->callback([&] {
      run([&](const Graph& g, const HighwayOverlay& o, unsigned threads) {
        BallStatsOptions opt;
        opt.alpha = alpha;
        opt.c = c;
        if (samples) opt.samples = samples;
        opt.seed = seed;
        opt.threads = threads;
        return ball_highway_stats(g, o, opt);
      });
    });

    auto* shells = stats->add_subcommand("shells", "Highway nodes per shell");
    common(shells, true);
    shells->add_option("--width", width, "Shell width w")->required()->check(CLI::PositiveNumber);
    shells->add_option("--b-max", b_max, "Largest shell index")->required()->check(CLI::PositiveNumber);
    shells->add_option("--samples", samples, "Sampled centers (default 200)");
    shells->callback([&] {
      run([&](const Graph& g, const HighwayOverlay& o, unsigned threads) {
        ShellStatsOptions opt;
        opt.width = width;
        opt.b_max = b_max;
        if (samples) opt.samples = samples;
        opt.seed = seed;
        opt.threads = threads;
        return shell_highway_stats(g, o, opt);
      });
    });

    auto* z = stats->add_subcommand("z", "Normalization constants");
    common(z, false);
    z->callback([&] {
      run([](const Graph& g, const HighwayOverlay& o, unsigned) { return z_stats(o, g); });
    });

    auto* hd = stats->add_subcommand("highway-dist", "Distance to the nearest highway node");
    common(hd, false);
    hd->add_option("--alpha", alpha, "Growth dimension")->check(CLI::PositiveNumber);
    hd->callback([&] {
      run([&](const Graph& g, const HighwayOverlay& o, unsigned) {
        return highway_distance_stats(g, o, alpha);
      });
    });

    auto* improve = stats->add_subcommand("improve", "Probability that a contact improves by factor c");
    common(improve, true);
    improve->add_option("--alpha", alpha, "Growth dimension")->check(CLI::PositiveNumber);
    improve->add_option("--factors", factors, "Improvement factors c > 1")->delimiter(',');
    improve->add_option("--samples", samples, "Sampled pairs (default 1000)");
    improve->callback([&] {
      run([&](const Graph& g, const HighwayOverlay& o, unsigned threads) {
        ImprovementOptions opt;
        opt.alpha = alpha;
        opt.factors = factors;
        if (samples) opt.samples = samples;
        opt.seed = seed;
        opt.threads = threads;
        return improvement_probability(g, o, opt);
      });
    });

    auto* fresh = stats->add_subcommand("fresh", "Probability that a contact leaves B_radius(u)");
    common(fresh, true);
    fresh->add_option("--radius", radius, "Ball radius")->required();
    fresh->add_option("--alpha", alpha, "Growth dimension")->check(CLI::PositiveNumber);
    fresh->add_option("--theta", theta, "Radius cap exponent (< 1)")->check(CLI::Range(0.0, 1.0));
    fresh->add_option("--samples", samples, "Sampled highway nodes (default 200)");
    fresh->callback([&] {
      run([&](const Graph& g, const HighwayOverlay& o, unsigned threads) {
        FreshOptions opt;
        opt.radius = radius;
        opt.alpha = alpha;
        opt.theta = theta;
        if (samples) opt.samples = samples;
        opt.seed = seed;
        opt.threads = threads;
        return fresh_contact_probability(g, o, opt);
      });
    });
  }

  // diameter
  std::string mode = "exact";
  std::size_t sources = 64;
  std::size_t cap = 20000;
  {
    auto* cmd = app.add_subcommand("diameter", "Diameter of the augmented graph");
    cmd->add_option("--graph", graph_path, "Graph file")->required();
    cmd->add_option("--overlay", overlay_path, "Overlay file")->required();
    cmd->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
    cmd->add_option("--sources", sources, "Sampled sources")->check(CLI::PositiveNumber);
    cmd->add_option("--cap", cap, "Largest n allowed in exact mode");
    auto* seed_opt = cmd->add_option("--seed", seed, "Seed for source sampling");
    target_out.attach(cmd);
    add_threads(cmd);
    cmd->callback([&, seed_opt] {
      if (mode == "sampled" && seed_opt->count() == 0) {
        throw CLI::ValidationError("--seed", "sampled mode requires --seed");
      }
      target_out.check();
      action = [&] {
        const unsigned threads = resolve_threads(threads_flag);
        const Graph g = load_graph(graph_path);
        const HighwayOverlay overlay = read_overlay(fs::path(overlay_path), g);
        DiameterOptions opt;
        opt.mode = mode == "exact" ? DiameterMode::exact : DiameterMode::sampled;
        opt.sources = sources;
        opt.exact_cap = cap;
        opt.seed = seed;
        opt.threads = threads;
        target_out.write(estimate_diameter(g, overlay, opt), graph_path);
      };
    });
  }

  // estimate-alpha
  AlphaOptions alpha_opt;
  {
    auto* cmd = app.add_subcommand("estimate-alpha", "Estimate the growth dimension from ball sizes");
    cmd->add_option("--graph", graph_path, "Graph file")->required();
    cmd->add_option("--samples", alpha_opt.samples, "Sampled nodes")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha-min", alpha_opt.alpha_min, "Grid start");
    cmd->add_option("--alpha-max", alpha_opt.alpha_max, "Grid end");
    cmd->add_option("--step", alpha_opt.step, "Grid step");
    cmd->add_option("--seed", seed, "Sampling seed")->required();
    target_out.attach(cmd);
    add_threads(cmd);
    cmd->callback([&] {
      target_out.check();
      action = [&] {
        alpha_opt.seed = seed;
        alpha_opt.threads = resolve_threads(threads_flag);
        const Graph g = load_graph(graph_path);
        const DimEstimate est = estimate_alpha(g, alpha_opt);
        std::cout << "median alpha " << format_number(est.alpha_median) << " over "
                  << est.per_node.size() << " nodes (" << est.skipped.size() << " skipped)\n";
        target_out.write(est.to_report(g), graph_path);
      };
    });
  }

  // sweep-s
  std::vector<double> s_values;
  std::size_t pairs = 2000;
  {
    auto* cmd = app.add_subcommand("sweep-s", "Mean routing hops across clustering exponents");
    cmd->add_option("--graph", graph_path, "Graph file")->required();
    cmd->add_option("--k", k_text, "Highway constant: number >= 1 or 'auto'")->required();
    cmd->add_option("--q", q, "Contact multiplier")->required();
    cmd->add_option("--s-values", s_values, "Comma-separated exponents")->required()->delimiter(',');
    cmd->add_option("--pairs", pairs, "Far pairs routed per s")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Random seed")->required();
    cmd->add_option("--variant", variant_name, "Routing variant")->check(CLI::IsMember(variant_names));
    target_out.attach(cmd);
    add_threads(cmd);
    cmd->callback([&] {
      target_out.check();
      action = [&] {
        const Graph g = load_graph(graph_path);
        SweepOptions opt;
        opt.k = resolve_k(k_text, g.node_count());
        opt.q = q;
        opt.s_values = s_values;
        opt.pairs_per_s = pairs;
        opt.seed = seed;
        opt.variant = parse_variant(variant_name);
        opt.threads = resolve_threads(threads_flag);
        const StatReport report = sweep_clustering_exponent(g, opt);
        std::cout << "argmin s = " << report.text("argmin_s") << '\n';
        target_out.write(report, graph_path);
      };
    });
  }

  // scaling
  std::vector<std::size_t> sides;
  bool with_diameter = false;
  {
    auto* cmd = app.add_subcommand("scaling", "Routing hops on wrap lattices of growing size");
    cmd->add_option("--dim", dim, "Lattice dimension")->check(CLI::Range(1, 3));
    cmd->add_option("--sides", sides, "Comma-separated sides")->required()->delimiter(',');
    cmd->add_option("--k", k_text, "Highway constant: number >= 1 or 'auto'")->required();
    cmd->add_option("--q", q, "Contact multiplier")->required();
    cmd->add_option("--s", s, "Clustering exponent")->required();
    cmd->add_option("--pairs", pairs, "Far pairs per size")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Random seed")->required();
    cmd->add_option("--variant", variant_name, "Routing variant")->check(CLI::IsMember(variant_names));
    cmd->add_flag("--diameter", with_diameter, "Also measure the augmented diameter");
    cmd->add_option("--diameter-cap", cap, "Largest n measured exactly; larger sizes are sampled");
    target_out.attach(cmd);
    add_threads(cmd);
    cmd->callback([&] {
      target_out.check();
      if (k_text != "auto") resolve_k(k_text, 0);
      action = [&] {
        ScalingOptions opt;
        opt.dim = dim;
        opt.sides = sides;
        if (k_text != "auto") opt.k = resolve_k(k_text, 0);
        opt.q = q;
        opt.s = s;
        opt.pairs = pairs;
        opt.seed = seed;
        opt.variant = parse_variant(variant_name);
        opt.diameter = with_diameter;
        opt.diameter_cap = cap;
        opt.threads = resolve_threads(threads_flag);
        const std::string name = target_out.name.empty() ? "lattice" + std::to_string(dim) + "d" : "";
        target_out.write(routing_scaling(opt), name);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
