#ifndef TSN_APPROX_HPP_
#define TSN_APPROX_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tsn/instance.hpp"
#include "tsn/io.hpp"

namespace tsn {

// One shortest path per demand, computed in the demand's own frame, unioned.
// Throws InfeasibleError naming the first demand without a path.
Solution shortest_paths_union(const TemporalInstance& instance);

// Per-frame all-pairs shortest distances of an edge-variant instance.
class MetricClosure {
 public:
  explicit MetricClosure(const TemporalInstance& instance);

  VertexId num_vertices() const { return num_vertices_; }
  Time num_times() const { return num_times_; }

  // nullopt when v is unreachable from u in frame t.
  std::optional<Rational> dist(VertexId u, VertexId v, Time t) const;
  // Edges of one shortest u->v path in frame t, in path order. Throws
  // InputError if there is none.
  std::vector<EdgeId> path(VertexId u, VertexId v, Time t) const;

 private:
  std::size_t slot(VertexId u, VertexId v, Time t) const;

  VertexId num_vertices_;
  Time num_times_;
  std::vector<std::optional<Rational>> dist_;
  std::vector<EdgeId> pred_edge_;
  std::vector<VertexId> pred_vertex_;
};

MetricClosure metric_closure(const TemporalInstance& instance);

struct TreePoint {
  VertexId vertex = 0;
  Time time = 1;

  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

// A demand still to be covered: reached when the tree holds (target, time).
struct ClosureDemand {
  VertexId target = 0;
  Time time = 1;
  int id = 0;
};

struct TreeNode {
  TreePoint point;
  int parent = -1;  // -1 only for the root
  Rational hop_cost{0};
};

// Tree over (vertex, time) pairs whose hops are metric-closure edges taken at
// the child's time. Node 0 is the root.
struct ClosureTree {
  std::vector<TreeNode> nodes;
  std::vector<int> covered;  // ids of demands counted for this tree

  Rational cost() const;
};

// Ids of `residual` demands whose (target, time) appears among the nodes.
std::vector<int> covered_demands(const ClosureTree& tree, std::span<const ClosureDemand> residual);
// cost / |covered|; nullopt (infinite) when nothing is covered.
std::optional<Rational> density(const ClosureTree& tree, std::span<const ClosureDemand> residual);

struct CharikarStats {
  std::int64_t calls = 0;
  std::int64_t memo_hits = 0;
};

// Recursive greedy at the given level. Returns nullopt ("no solution") when
// fewer than `budget` residual demands are reachable from `root`.
std::optional<ClosureTree> charikar_level(int level, const MetricClosure& closure, TreePoint root,
                                          int budget, std::span<const ClosureDemand> residual,
                                          CharikarStats* stats = nullptr);

// Replaces every hop by a concrete shortest path of its frame.
Solution expand_tree(const TemporalInstance& instance, const MetricClosure& closure,
                     const ClosureTree& tree);

struct CharikarResult {
  Solution solution;
  ClosureTree tree;
  CharikarStats stats;
};

// Whole pipeline for a directed monotonic instance whose demands share one
// source: root (a, 1), budget k, expansion, lift back to the input variant.
CharikarResult charikar_approx(const TemporalInstance& instance, int level);

Json to_json(const ClosureTree& tree, const TemporalInstance& instance);

}  // namespace tsn

#endif  // TSN_APPROX_HPP_
