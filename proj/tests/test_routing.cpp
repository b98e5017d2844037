#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fgsw/analysis.hpp"
#include "fgsw/generators.hpp"
#include "fgsw/routing.hpp"
#include "oracles.hpp"

using namespace fgsw;

namespace {

const Variant kVariants[] = {Variant::plain, Variant::highway_sticky, Variant::highway_aware};

}  // namespace

TEST_CASE("variant names") {
  for (Variant v : kVariants) CHECK(parse_variant(to_string(v)) == v);
  CHECK(to_string(Variant::highway_aware) == "highway-aware");
  CHECK_THROWS_AS(parse_variant("fastest"), std::invalid_argument);
}

TEST_CASE("source equals target") {
  const Graph g = gen_lattice(2, 8, true);
  const HighwayOverlay o = build_overlay(g, {2, 2, 2, 1});
  for (Variant v : kVariants) {
    const RoutingTrace t = route(g, o, 5, 5, v);
    CHECK(t.success);
    CHECK(t.hops() == 0);
    CHECK(t.path == std::vector<NodeId>{5});
    CHECK_FALSE(validate_trace(g, o, t).has_value());
  }
  CHECK_THROWS_AS(route(g, o, 0, 64, Variant::plain), std::out_of_range);
}

TEST_CASE("plain routing strictly approaches the target") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 10 + rng() % 50;
    const Graph g = oracle::random_connected_graph(n, rng() % n, rng);
    const auto d = oracle::all_pairs(g);
    const HighwayOverlay o = build_overlay(g, {1.0 + (rng() % 3), 2, 2, rng()});
    Router router(g, o);
    for (int p = 0; p < 20; ++p) {
      const NodeId s = rng() % n;
      const NodeId t = rng() % n;
      const RoutingTrace tr = router.route(s, t, Variant::plain);
      REQUIRE(tr.success);
      CHECK(router.last_distance() == d[s][t]);
      CHECK(tr.hops() <= d[s][t]);
      for (std::size_t i = 1; i < tr.path.size(); ++i) REQUIRE(d[tr.path[i]][t] < d[tr.path[i - 1]][t]);
      CHECK_FALSE(validate_trace(g, o, tr).has_value());
    }
  }
}

TEST_CASE("all variants reach the target with valid traces") {
  const Graph g = gen_lattice(2, 40, true);
  const HighwayOverlay o = build_overlay(g, {std::log(1600.0), 2, 2, 17});
  const HighwayField field = nearest_highway_field(g, o);
  Router router(g, o);
  std::mt19937_64 rng(8);
  for (int p = 0; p < 200; ++p) {
    const NodeId s = rng() % g.node_count();
    const NodeId t = rng() % g.node_count();
    for (Variant v : kVariants) {
      const RoutingTrace tr = router.route(s, t, v);
      REQUIRE(tr.success);
      CHECK(tr.path.front() == s);
      CHECK(tr.path.back() == t);
      CHECK(tr.phases.size() == tr.hops());
      CHECK(tr.hops_in(Phase::to_highway) + tr.hops_in(Phase::on_highway) + tr.hops_in(Phase::to_target) ==
            tr.hops());
      CHECK_FALSE(validate_trace(g, o, tr).has_value());
      if (v == Variant::highway_aware) CHECK(tr.hops_in(Phase::to_highway) <= field.distance[s]);
      if (v == Variant::plain) CHECK(tr.hops() <= router.last_distance());
    }
  }
}

TEST_CASE("validate_trace catches defects") {
  const Graph g = gen_lattice(1, 10, false);
  std::vector<std::uint8_t> flags(10, 0);
  flags[0] = flags[9] = 1;
  const HighwayOverlay o = build_overlay(g, {5, 1, 2, 1}, Membership{flags, 0, 2});
  RoutingTrace t;
  t.source = 0;
  t.target = 9;
  t.path = {0, 9};
  t.edge_kinds = {EdgeKind::long_range};
  t.phases = {Phase::on_highway};
  t.success = true;
  CHECK_FALSE(validate_trace(g, o, t).has_value());
  t.edge_kinds = {EdgeKind::local};
  CHECK(validate_trace(g, o, t).has_value());
  t.path = {0, 2};
  t.edge_kinds = {EdgeKind::local};
  CHECK(validate_trace(g, o, t).has_value());
}

TEST_CASE("route_batch") {
  const Graph g = gen_lattice(2, 24, true);
  const HighwayOverlay o = build_overlay(g, {6, 2, 2, 5});
  const FarPairs far = sample_far_pairs(g, 150, 5);
  std::vector<std::pair<NodeId, NodeId>> pairs = far.pairs;
  pairs.push_back(pairs.front());
  pairs.emplace_back(0, 9999);

  const auto one = route_batch(g, o, pairs, Variant::highway_sticky, 1);
  const auto eight = route_batch(g, o, pairs, Variant::highway_sticky, 8);
  CHECK(one == eight);
  REQUIRE(one.size() == pairs.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].pair_id == i);
  CHECK(one[150].hops == one[0].hops);
  CHECK(one[150].source == one[0].source);
  CHECK_FALSE(one[151].error.empty());
  CHECK(one[0].error.empty());
  CHECK(one[0].hops == one[0].hops_to_highway + one[0].hops_on_highway + one[0].hops_to_target);

  CHECK(route_batch(g, o, std::vector<std::pair<NodeId, NodeId>>{}, Variant::plain, 4).empty());

  std::ostringstream csv;
  write_route_csv(csv, std::span<const RouteRow>(one).first(2));
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "pair_id,source,target,variant,hops,hops_to_highway,hops_on_highway,hops_to_target,dist_st");
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("0,", 0) == 0);
  CHECK(first.find(",highway-sticky,") != std::string::npos);
}
