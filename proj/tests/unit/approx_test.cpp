#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tsn/approx.hpp"
#include "tsn/errors.hpp"
#include "tsn/model.hpp"
#include "tsn/random_instance.hpp"

namespace tsn {
namespace {

TemporalInstance chain(Rational first, Rational second) {
  InstanceBuilder b(true, Variant::kEdge, 1);
  const VertexId a = b.vertex("a");
  const VertexId x = b.vertex("x");
  const VertexId c = b.vertex("c");
  b.add_edge(a, x, first, {1});
  b.add_edge(x, c, second, {1});
  b.add_demand(a, c, 1);
  return std::move(b).build();
}

// Minimum over all simple paths, by enumeration.
std::optional<Rational> path_minimum(const TemporalInstance& instance, VertexId from, VertexId to, Time t) {
  std::optional<Rational> best;
  std::vector<char> on(instance.vertices.size(), 0);
  std::function<void(VertexId, Rational)> walk = [&](VertexId x, Rational cost) {
    if (x == to) {
      if (!best || cost < *best) best = cost;
      return;
    }
    on[static_cast<std::size_t>(x)] = 1;
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
      if (!oracle::active(instance, e, t)) continue;
      VertexId next = -1;
      if (edge.u == x) next = edge.v;
      else if (!instance.directed && edge.v == x) next = edge.u;
      if (next >= 0 && !on[static_cast<std::size_t>(next)]) walk(next, cost + edge.weight);
    }
    on[static_cast<std::size_t>(x)] = 0;
  };
  walk(from, Rational(0));
  return best;
}

TEST(Union, SingleDemandIsOneShortestPath) {
  const TemporalInstance instance = chain(Rational(2), Rational(3));
  const Solution s = shortest_paths_union(instance);
  EXPECT_EQ(s.cost, Rational(5));
  EXPECT_EQ(s.edges, (std::vector<EdgeId>{0, 1}));
}

TEST(Union, TrapTakesDirectEdges) {
  const TemporalInstance trap = fixtures::hub_trap(3, Rational(10), Rational(1));
  const Solution s = shortest_paths_union(trap);
  EXPECT_EQ(s.cost, Rational(27));
  EXPECT_EQ(oracle::optimum(trap), Rational(10));
}

TEST(Union, InfeasibleThrows) {
  InstanceBuilder b(true, Variant::kEdge, 1);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_demand(a, c, 1);
  EXPECT_THROW(shortest_paths_union(std::move(b).build()), InfeasibleError);
}

TEST(Union, WithinKTimesOptimum) {
  Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    RandomOptions o;
    o.directed = rng.chance(1, 2);
    o.variant = static_cast<Variant>(rng.uniform(0, 2));
    const TemporalInstance instance = random_feasible_instance(rng, o);
    const Solution s = shortest_paths_union(instance);
    const auto opt = oracle::optimum(instance);
    ASSERT_TRUE(opt);
    EXPECT_TRUE(oracle::feasible(instance, oracle::mask_of(s.edges)));
    EXPECT_LE(s.cost, Rational(static_cast<std::int64_t>(instance.demands.size())) * *opt);
  }
}

TEST(Closure, SelfDistanceIsZero) {
  const MetricClosure closure(chain(Rational(2), Rational(3)));
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(closure.dist(v, v, 1), Rational(0));
}

TEST(Closure, PathSums) {
  const MetricClosure closure(chain(Rational(2), Rational(3)));
  EXPECT_EQ(closure.dist(0, 2, 1), Rational(5));
  EXPECT_EQ(closure.path(0, 2, 1), (std::vector<EdgeId>{0, 1}));
  EXPECT_FALSE(closure.dist(2, 0, 1));
}

TEST(Closure, AgreesWithPathEnumeration) {
  Rng rng(32);
  for (int i = 0; i < 60; ++i) {
    RandomOptions o;
    o.vertices = rng.uniform(3, 8);
    o.max_edges = 12;
    o.directed = rng.chance(1, 2);
    const TemporalInstance instance = random_instance(rng, o);
    const MetricClosure closure(instance);
    for (Time t = 1; t <= instance.num_times; ++t) {
      for (VertexId u = 0; u < instance.num_vertices(); ++u) {
        for (VertexId v = 0; v < instance.num_vertices(); ++v) {
          EXPECT_EQ(closure.dist(u, v, t), path_minimum(instance, u, v, t));
        }
      }
    }
  }
}

TEST(Density, CostPerNewDemand) {
  ClosureTree tree;
  tree.nodes = {{{0, 1}, -1, Rational(0)}, {{1, 1}, 0, Rational(4)}};
  const std::vector<ClosureDemand> two = {{1, 1, 0}, {1, 1, 1}};
  EXPECT_EQ(tree.cost(), Rational(4));
  EXPECT_EQ(density(tree, two), Rational(2));
  const std::vector<ClosureDemand> none = {{2, 1, 0}};
  EXPECT_FALSE(density(tree, none));
}

TEST(Charikar, LevelOneSingleTarget) {
  const TemporalInstance instance = chain(Rational(2), Rational(3));
  const MetricClosure closure(instance);
  const std::vector<ClosureDemand> residual = {{2, 1, 0}};
  const auto tree = charikar_level(1, closure, {0, 1}, 1, residual);
  ASSERT_TRUE(tree);
  EXPECT_EQ(tree->cost(), Rational(5));
  EXPECT_EQ(tree->nodes.size(), 2u);
}

TEST(Charikar, TrapLevelTwoRoutesThroughHub) {
  const TemporalInstance trap = fixtures::hub_trap(3, Rational(10), Rational(1));
  const CharikarResult r = charikar_approx(trap, 2);
  EXPECT_EQ(r.solution.cost, Rational(10));
  const VertexId hub = *trap.find_vertex("v");
  std::vector<EdgeId> expected;
  for (EdgeId e = 0; e < trap.num_edges(); ++e) {
    const Edge& edge = trap.edges[static_cast<std::size_t>(e)];
    if (edge.u == hub || edge.v == hub) expected.push_back(e);
  }
  EXPECT_EQ(r.solution.edges, expected);
  EXPECT_EQ(density(r.tree, std::vector<ClosureDemand>{{2, 1, 0}, {3, 2, 1}, {4, 3, 2}}), Rational(10, 3));
  EXPECT_GT(r.stats.calls, 0);
}

TEST(Charikar, LevelOneIsAStar) {
  const TemporalInstance trap = fixtures::hub_trap(3, Rational(10), Rational(1));
  EXPECT_EQ(charikar_approx(trap, 1).solution.cost, Rational(27));
}

TEST(Charikar, RejectsNonMonotonic) {
  InstanceBuilder b(true, Variant::kEdge, 2);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(1), {1});
  b.add_demand(a, c, 1);
  EXPECT_THROW(charikar_approx(std::move(b).build(), 2), InputError);
}

TEST(Charikar, BoundsAndTimeOrderOnRandomInstances) {
  Rng rng(33);
  for (int i = 0; i < 120; ++i) {
    RandomOptions o;
    o.vertices = rng.uniform(3, 5);
    o.num_times = rng.uniform(1, 3);
    o.monotonic = true;
    o.single_source = true;
    const TemporalInstance instance = random_feasible_instance(rng, o);
    const auto opt = oracle::optimum(instance);
    ASSERT_TRUE(opt);
    const Rational k(static_cast<std::int64_t>(instance.demands.size()));
    for (int level = 1; level <= 3; ++level) {
      const CharikarResult r = charikar_approx(instance, level);
      EXPECT_TRUE(oracle::feasible(instance, oracle::mask_of(r.solution.edges)));
      for (const TreeNode& node : r.tree.nodes) {
        if (node.parent >= 0) { EXPECT_LE(r.tree.nodes[static_cast<std::size_t>(node.parent)].point.time, node.point.time); }
      }
      if (level == 1) { EXPECT_LE(r.solution.cost, k * *opt); }
      if (level == 2) { EXPECT_LE(r.solution.cost * r.solution.cost, Rational(16) * k * *opt * *opt); }
    }
  }
}

TEST(ExpandTree, StarGivesDirectEdges) {
  const TemporalInstance trap = fixtures::hub_trap(2, Rational(10), Rational(1));
  const MetricClosure closure(trap);
  ClosureTree star;
  star.nodes = {{{0, 1}, -1, Rational(0)}, {{2, 1}, 0, Rational(9)}, {{3, 2}, 0, Rational(9)}};
  const Solution s = expand_tree(trap, closure, star);
  EXPECT_EQ(s.cost, Rational(18));
  EXPECT_TRUE(is_feasible(trap, s));
}

}  // namespace
}  // namespace tsn
