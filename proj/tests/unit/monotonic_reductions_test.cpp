#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tsn/errors.hpp"
#include "tsn/exact.hpp"
#include "tsn/model.hpp"
#include "tsn/monotonic_reductions.hpp"
#include "tsn/random_instance.hpp"

namespace tsn {
namespace {

TemporalInstance monotonic_single_source(Rng& rng) {
  RandomOptions o;
  o.vertices = rng.uniform(3, 5);
  o.num_times = rng.uniform(1, 3);
  o.monotonic = true;
  o.single_source = true;
  return random_feasible_instance(rng, o);
}

TEST(TsnToPriority, FirstActiveTimeBecomesPriority) {
  InstanceBuilder b(false, Variant::kEdge, 3);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(1), {2, 3});
  b.add_demand(a, c, 3);
  const PriorityInstance p = tsn_to_priority(std::move(b).build());
  EXPECT_EQ(p.edges[0].priority, 2);
  EXPECT_EQ(p.demands[0].priority, 3);
}

TEST(TsnToPriority, RejectsNonMonotonic) {
  InstanceBuilder b(false, Variant::kEdge, 3);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(1), {1, 3});
  EXPECT_THROW(tsn_to_priority(std::move(b).build()), InputError);
}

TEST(PriorityToTsn, ParallelEdgesSplitInHalf) {
  PriorityInstance p;
  p.vertices = {"u", "v"};
  p.num_priorities = 2;
  p.edges = {{0, 1, Rational(4), 1}, {0, 1, Rational(6), 2}};
  p.demands = {{0, 1, 2}};
  const Reduced r = priority_to_tsn(p);
  ASSERT_EQ(r.instance.num_edges(), 4);
  EXPECT_EQ(r.instance.num_vertices(), 4);
  for (int e = 0; e < 2; ++e) {
    const auto& images = r.map.forward_edge_map[static_cast<std::size_t>(e)];
    ASSERT_EQ(images.size(), 2u);
    for (EdgeId image : images) {
      EXPECT_EQ(r.instance.edges[static_cast<std::size_t>(image)].weight, p.edges[static_cast<std::size_t>(e)].weight / 2);
    }
  }
  EXPECT_TRUE(validate(r.instance).empty());
}

TEST(PriorityToTsn, TimesAreUpwardClosed) {
  PriorityInstance p;
  p.vertices = {"u", "v"};
  p.num_priorities = 3;
  p.edges = {{0, 1, Rational(1), 1}};
  p.demands = {{0, 1, 1}};
  const Reduced r = priority_to_tsn(p);
  EXPECT_EQ(r.instance.edges[0].times, (std::vector<Time>{1, 2, 3}));
}

TEST(PriorityToTsn, AlwaysMonotonicAndStrict) {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const PriorityInstance p = fixtures::random_priority_instance(rng, 4, 5, 3, 3);
    const Reduced r = priority_to_tsn(p);
    EXPECT_TRUE(is_monotonic(r.instance));
    const auto opt = oracle::priority_optimum(p);
    ASSERT_EQ(opt, oracle::optimum(r.instance)) << i;
    if (!opt) continue;
    const Solution lifted = lift_priority_solution(p, r.map, brute_force(r.instance, 64).solution);
    EXPECT_TRUE(priority_feasible(p, lifted.edges));
    EXPECT_EQ(priority_cost(p, lifted.edges), *opt);
  }
}

TEST(PriorityRoundTrip, PreservesOptimum) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const PriorityInstance p = fixtures::random_priority_instance(rng, 4, 4, 2, 3);
    EXPECT_EQ(oracle::priority_optimum(tsn_to_priority(priority_to_tsn(p).instance)), oracle::priority_optimum(p));
  }
}

TEST(Dst, SingleDemandIsOneLevel) {
  InstanceBuilder b(true, Variant::kEdge, 2);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(2), {1, 2});
  b.add_demand(a, c, 2);
  const DstInstance dst = single_source_to_dst(std::move(b).build());
  EXPECT_EQ(dst.num_levels, 1);
  EXPECT_EQ(dst.vertices.size(), 2u);
  EXPECT_EQ(dst.edges.size(), 1u);
  EXPECT_EQ(oracle::dst_optimum(dst), Rational(2));
}

TEST(Dst, EdgeCountForTwoLevels) {
  InstanceBuilder b(true, Variant::kEdge, 2);
  const VertexId a = b.vertex("a");
  const VertexId x = b.vertex("x");
  const VertexId c = b.vertex("b");
  b.add_edge(a, x, Rational(1), {1, 2});
  b.add_edge(x, c, Rational(1), {2});
  b.add_edge(a, c, Rational(5), {1, 2});
  b.add_demand(a, c, 1);
  b.add_demand(a, c, 2);
  const TemporalInstance instance = std::move(b).build();
  const DstInstance dst = single_source_to_dst(instance);
  // |E_1| + |E_2| + one free edge per vertex into the next level
  EXPECT_EQ(dst.edges.size(), 2u + 3u + 3u);
  for (const DstEdge& e : dst.edges) {
    const int from = dst.level[static_cast<std::size_t>(e.u)];
    const int to = dst.level[static_cast<std::size_t>(e.v)];
    EXPECT_TRUE(to == from || to == from + 1);
  }
  EXPECT_EQ(oracle::dst_optimum(dst), oracle::optimum(instance));
}

TEST(Dst, ProjectionMergesLevels) {
  InstanceBuilder b(true, Variant::kEdge, 2);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(3), {1, 2});
  b.add_demand(a, c, 1);
  b.add_demand(a, c, 2);
  const DstInstance dst = single_source_to_dst(std::move(b).build());
  std::vector<EdgeId> both;
  int copies = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(dst.edges.size()); ++e) {
    const EdgeId origin = dst.edges[static_cast<std::size_t>(e)].origin;
    copies += origin == 0 ? 1 : 0;
    if (origin == 0 || dst.edges[static_cast<std::size_t>(e)].u == dst.root) both.push_back(e);
  }
  ASSERT_EQ(copies, 2);
  EXPECT_EQ(dst_cost(dst, both), Rational(6));
  const Solution projected = dst_solution_to_tsn(dst, both);
  EXPECT_EQ(projected.edges, std::vector<EdgeId>{0});
  EXPECT_EQ(projected.cost, Rational(3));
}

TEST(Dst, StrictBothWays) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const TemporalInstance instance = monotonic_single_source(rng);
    const DstInstance dst = single_source_to_dst(instance);
    std::uint64_t best = 0;
    const auto opt = oracle::dst_optimum(dst, &best);
    ASSERT_EQ(opt, oracle::optimum(instance));
    std::vector<EdgeId> tree;
    for (EdgeId e = 0; e < static_cast<EdgeId>(dst.edges.size()); ++e) {
      if (best >> e & 1) tree.push_back(e);
    }
    EXPECT_TRUE(dst_feasible(dst, tree));
    const Solution back = dst_solution_to_tsn(dst, tree);
    EXPECT_TRUE(oracle::feasible(instance, oracle::mask_of(back.edges)));
    EXPECT_EQ(back.cost, *opt);
  }
}

TEST(Dst, DagInDagOut) {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    RandomOptions o;
    o.monotonic = true;
    o.single_source = true;
    o.acyclic = true;
    const DstInstance dst = single_source_to_dst(random_feasible_instance(rng, o));
    TemporalInstance shape;
    shape.vertices = dst.vertices;
    for (const DstEdge& e : dst.edges) shape.edges.push_back({e.u, e.v, e.weight, {1}});
    EXPECT_TRUE(is_acyclic(shape));
  }
}

TEST(NecessaryTimes, MatchIndependentDefinition) {
  Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    const TemporalInstance instance = monotonic_single_source(rng);
    const Solution all = all_edges(instance);
    const auto times = earliest_necessary_times(instance, all);
    const std::uint64_t mask = oracle::mask_of(all.edges);
    for (std::size_t j = 0; j < all.edges.size(); ++j) {
      EXPECT_EQ(times[j], oracle::necessary_time(instance, mask, all.edges[j]));
    }
  }
}

TEST(TreeNormalization, ShortestPathTreeUnchanged) {
  InstanceBuilder b(true, Variant::kEdge, 2);
  const VertexId a = b.vertex("a");
  const VertexId x = b.vertex("x");
  const VertexId c = b.vertex("b");
  b.add_edge(a, x, Rational(1), {1, 2});
  b.add_edge(x, c, Rational(1), {2});
  b.add_demand(a, x, 1);
  b.add_demand(a, c, 2);
  const TemporalInstance instance = std::move(b).build();
  const Solution s = all_edges(instance);
  EXPECT_EQ(normalize_to_time_layered_tree(instance, s), s);
}

TEST(TreeNormalization, DiamondLosesRedundantBranch) {
  InstanceBuilder b(true, Variant::kEdge, 1);
  const VertexId a = b.vertex("a");
  const VertexId l = b.vertex("l");
  const VertexId r = b.vertex("r");
  const VertexId c = b.vertex("b");
  b.add_edge(a, l, Rational(1), {1});
  b.add_edge(a, r, Rational(2), {1});
  b.add_edge(l, c, Rational(1), {1});
  b.add_edge(r, c, Rational(2), {1});
  b.add_demand(a, c, 1);
  const TemporalInstance instance = std::move(b).build();
  const Solution out = normalize_to_time_layered_tree(instance, all_edges(instance));
  EXPECT_LT(out.cost, all_edges(instance).cost);
  EXPECT_TRUE(is_time_layered_tree(instance, out));
  EXPECT_TRUE(is_feasible(instance, out));
}

TEST(TreeNormalization, RandomSolutions) {
  Rng rng(26);
  for (int i = 0; i < 100; ++i) {
    const TemporalInstance instance = monotonic_single_source(rng);
    const Solution out = normalize_to_time_layered_tree(instance, all_edges(instance));
    EXPECT_TRUE(is_time_layered_tree(instance, out));
    EXPECT_TRUE(oracle::feasible(instance, oracle::mask_of(out.edges)));
    EXPECT_LE(out.cost, all_edges(instance).cost);
  }
}

TEST(CommonSource, DetectsSharedRoot) {
  Rng rng(27);
  EXPECT_EQ(common_source(monotonic_single_source(rng)), VertexId{0});
}

TEST(PriorityJson, RoundTrip) {
  Rng rng(28);
  const PriorityInstance p = fixtures::random_priority_instance(rng, 4, 5, 3, 3);
  const Json j = to_json(p);
  EXPECT_EQ(to_json(priority_from_json(j)).dump(), j.dump());
}

}  // namespace
}  // namespace tsn
