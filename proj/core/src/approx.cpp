#include "tsn/approx.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <tuple>
#include <utility>

#include "tsn/errors.hpp"
#include "tsn/model.hpp"
#include "tsn/monotonic_reductions.hpp"
#include "tsn/variant_reductions.hpp"

namespace tsn {
namespace {

struct ShortestPaths {
  std::vector<std::optional<Rational>> dist;
  std::vector<EdgeId> pred_edge;
  std::vector<VertexId> pred_vertex;
};

ShortestPaths dijkstra(const TemporalInstance& instance, const FrameIndex& index, Time t, VertexId source) {
  const auto n = static_cast<std::size_t>(instance.num_vertices());
  ShortestPaths sp{std::vector<std::optional<Rational>>(n), std::vector<EdgeId>(n, -1),
                   std::vector<VertexId>(n, -1)};
  using Entry = std::pair<Rational, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::vector<char> done(n, 0);
  sp.dist[static_cast<std::size_t>(source)] = Rational(0);
  queue.emplace(Rational(0), source);
  while (!queue.empty()) {
    const auto [d, x] = queue.top();
    queue.pop();
    if (done[static_cast<std::size_t>(x)]) continue;
    done[static_cast<std::size_t>(x)] = 1;
    for (const FrameIndex::Arc& arc : index.out(t, x)) {
      const Rational candidate = d + instance.edges[static_cast<std::size_t>(arc.edge)].weight;
      auto& slot = sp.dist[static_cast<std::size_t>(arc.to)];
      if (slot && *slot <= candidate) continue;
      slot = candidate;
      sp.pred_edge[static_cast<std::size_t>(arc.to)] = arc.edge;
      sp.pred_vertex[static_cast<std::size_t>(arc.to)] = x;
      queue.emplace(candidate, arc.to);
    }
  }
  return sp;
}

std::vector<EdgeId> trace_back(const ShortestPaths& sp, VertexId source, VertexId target) {
  std::vector<EdgeId> path;
  for (VertexId x = target; x != source; x = sp.pred_vertex[static_cast<std::size_t>(x)]) {
    path.push_back(sp.pred_edge[static_cast<std::size_t>(x)]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

void require_edge_variant(const TemporalInstance& instance, const char* op) {
  if (instance.variant != Variant::kEdge) throw InputError(std::string(op) + " expects an edge-variant instance");
}

// Residual set as a bitmask over positions in the top-level demand list.
using Mask = std::uint64_t;

struct Search {
  const MetricClosure& closure;
  std::span<const ClosureDemand> demands;
  CharikarStats stats;
  std::map<std::tuple<int, VertexId, Time, int, Mask>, std::optional<ClosureTree>> memo;

  bool member(Mask mask, std::size_t j) const { return (mask >> j) & 1U; }

  std::optional<ClosureTree> level_one(TreePoint root, int budget, Mask residual) {
    ClosureTree tree;
    tree.nodes.push_back({root, -1, Rational(0)});
    // Group reachable residual demands by their (target, time) node.
    std::map<std::tuple<Rational, VertexId, Time>, std::vector<int>> hops;
    int at_root = 0;
    for (std::size_t j = 0; j < demands.size(); ++j) {
      if (!member(residual, j)) continue;
      const ClosureDemand& d = demands[j];
      if (d.time < root.time) continue;
      if (d.target == root.vertex && d.time == root.time) {
        tree.covered.push_back(d.id);
        ++at_root;
        continue;
      }
      const auto dist = closure.dist(root.vertex, d.target, d.time);
      if (!dist) continue;
      hops[{*dist, d.target, d.time}].push_back(d.id);
    }
    int reachable = at_root;
    for (const auto& entry : hops) reachable += static_cast<int>(entry.second.size());
    if (reachable < budget) return std::nullopt;

    int covered = at_root;
    for (const auto& [key, ids] : hops) {
      if (covered >= budget) break;
      const auto& [dist, target, time] = key;
      tree.nodes.push_back({TreePoint{target, time}, 0, dist});
      tree.covered.insert(tree.covered.end(), ids.begin(), ids.end());
      covered += static_cast<int>(ids.size());
    }
    return tree;
  }

  int reachable_count(TreePoint root, Mask residual) const {
    int count = 0;
    for (std::size_t j = 0; j < demands.size(); ++j) {
      if (!member(residual, j) || demands[j].time < root.time) continue;
      if (closure.dist(root.vertex, demands[j].target, demands[j].time)) ++count;
    }
    return count;
  }

  Mask without(Mask residual, const std::vector<int>& ids) const {
    for (std::size_t j = 0; j < demands.size(); ++j) {
      if (std::find(ids.begin(), ids.end(), demands[j].id) != ids.end()) residual &= ~(Mask{1} << j);
    }
    return residual;
  }

  std::optional<ClosureTree> run(int level, TreePoint root, int budget, Mask residual) {
    const auto key = std::make_tuple(level, root.vertex, root.time, budget, residual);
    if (const auto it = memo.find(key); it != memo.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    ++stats.calls;
    std::optional<ClosureTree> result = level == 1 ? level_one(root, budget, residual)
                                                   : greedy(level, root, budget, residual);
    memo.emplace(key, result);
    return result;
  }

  std::optional<ClosureTree> greedy(int level, TreePoint root, int budget, Mask residual) {
    if (reachable_count(root, residual) < budget) return std::nullopt;
    ClosureTree tree;
    tree.nodes.push_back({root, -1, Rational(0)});
    int remaining = budget;
    while (remaining > 0) {
      std::optional<ClosureTree> best;
      Rational best_cost(0);
      Rational best_density(0);
      TreePoint best_point;
      for (VertexId v = 0; v < closure.num_vertices(); ++v) {
        for (Time t = root.time; t <= closure.num_times(); ++t) {
          const auto hop = closure.dist(root.vertex, v, t);
          if (!hop) continue;
          const TreePoint point{v, t};
          for (int sub_budget = remaining; sub_budget >= 1; --sub_budget) {
            auto sub = run(level - 1, point, sub_budget, residual);
            if (!sub || sub->covered.empty()) continue;
            const bool self = point == root;
            const Rational cost = sub->cost() + (self ? Rational(0) : *hop);
            const Rational d = cost / static_cast<std::int64_t>(sub->covered.size());
            const std::size_t size = sub->nodes.size() + (self ? 0 : 1);
            const std::size_t best_size = best ? best->nodes.size() + (best_point == root ? 0 : 1) : 0;
            if (!best || d < best_density || (d == best_density && size < best_size)) {
              best = std::move(sub);
              best_cost = cost;
              best_density = d;
              best_point = point;
            }
          }
        }
      }
      if (!best) return std::nullopt;
      graft(tree, *best, best_point, best_point == root ? Rational(0) : best_cost - best->cost());
      residual = without(residual, best->covered);
      remaining -= static_cast<int>(best->covered.size());
    }
    return tree;
  }

  static void graft(ClosureTree& tree, const ClosureTree& sub, TreePoint point, const Rational& hop) {
    const TreePoint& root = tree.nodes.front().point;
    std::vector<int> position(sub.nodes.size(), 0);
    if (!(point == root)) {
      tree.nodes.push_back({point, 0, hop});
      position[0] = static_cast<int>(tree.nodes.size()) - 1;
    }
    for (std::size_t i = 1; i < sub.nodes.size(); ++i) {
      const TreeNode& node = sub.nodes[i];
      tree.nodes.push_back({node.point, position[static_cast<std::size_t>(node.parent)], node.hop_cost});
      position[i] = static_cast<int>(tree.nodes.size()) - 1;
    }
    tree.covered.insert(tree.covered.end(), sub.covered.begin(), sub.covered.end());
  }
};

}  // namespace

Solution shortest_paths_union(const TemporalInstance& instance) {
  const Normalized normalized = normalize(instance, Variant::kEdge);
  const TemporalInstance& image = normalized.instance;
  const FrameIndex index(image);
  std::vector<EdgeId> chosen;
  for (std::size_t i = 0; i < image.demands.size(); ++i) {
    const Demand& d = image.demands[i];
    if (is_trivial(d)) continue;
    const ShortestPaths sp = dijkstra(image, index, d.t, d.a);
    if (!sp.dist[static_cast<std::size_t>(d.b)]) {
      throw InfeasibleError("demand " + std::to_string(i) + " has no path in its frame", static_cast<int>(i));
    }
    const auto path = trace_back(sp, d.a, d.b);
    chosen.insert(chosen.end(), path.begin(), path.end());
  }
  const Solution image_solution = make_solution(image, std::move(chosen));
  return make_solution(instance, normalized.chain.lift(image_solution).edges);
}

MetricClosure::MetricClosure(const TemporalInstance& instance)
    : num_vertices_(instance.num_vertices()), num_times_(instance.num_times) {
  require_edge_variant(instance, "metric_closure");
  const auto n = static_cast<std::size_t>(num_vertices_);
  const std::size_t total = n * n * static_cast<std::size_t>(num_times_);
  dist_.resize(total);
  pred_edge_.assign(total, -1);
  pred_vertex_.assign(total, -1);
  const FrameIndex index(instance);
  for (Time t = 1; t <= num_times_; ++t) {
    for (VertexId u = 0; u < num_vertices_; ++u) {
      ShortestPaths sp = dijkstra(instance, index, t, u);
      for (VertexId v = 0; v < num_vertices_; ++v) {
        const std::size_t s = slot(u, v, t);
        dist_[s] = std::move(sp.dist[static_cast<std::size_t>(v)]);
        pred_edge_[s] = sp.pred_edge[static_cast<std::size_t>(v)];
        pred_vertex_[s] = sp.pred_vertex[static_cast<std::size_t>(v)];
      }
    }
  }
}

std::size_t MetricClosure::slot(VertexId u, VertexId v, Time t) const {
  if (u < 0 || u >= num_vertices_ || v < 0 || v >= num_vertices_ || t < 1 || t > num_times_) {
    throw InputError("metric closure query out of range");
  }
  const auto n = static_cast<std::size_t>(num_vertices_);
  return (static_cast<std::size_t>(t - 1) * n + static_cast<std::size_t>(u)) * n + static_cast<std::size_t>(v);
}

std::optional<Rational> MetricClosure::dist(VertexId u, VertexId v, Time t) const { return dist_[slot(u, v, t)]; }

std::vector<EdgeId> MetricClosure::path(VertexId u, VertexId v, Time t) const {
  if (!dist_[slot(u, v, t)]) throw InputError("no path in the metric closure");
  std::vector<EdgeId> out;
  for (VertexId x = v; x != u; x = pred_vertex_[slot(u, x, t)]) out.push_back(pred_edge_[slot(u, x, t)]);
  std::reverse(out.begin(), out.end());
  return out;
}

MetricClosure metric_closure(const TemporalInstance& instance) { return MetricClosure(instance); }

Rational ClosureTree::cost() const {
  Rational total(0);
  for (const TreeNode& node : nodes) total += node.hop_cost;
  return total;
}

std::vector<int> covered_demands(const ClosureTree& tree, std::span<const ClosureDemand> residual) {
  std::vector<int> out;
  for (const ClosureDemand& d : residual) {
    const bool hit = std::any_of(tree.nodes.begin(), tree.nodes.end(), [&](const TreeNode& node) {
      return node.point.vertex == d.target && node.point.time == d.time;
    });
    if (hit) out.push_back(d.id);
  }
  return out;
}

std::optional<Rational> density(const ClosureTree& tree, std::span<const ClosureDemand> residual) {
  const auto covered = covered_demands(tree, residual);
  if (covered.empty()) return std::nullopt;
  return tree.cost() / static_cast<std::int64_t>(covered.size());
}

std::optional<ClosureTree> charikar_level(int level, const MetricClosure& closure, TreePoint root,
                                          int budget, std::span<const ClosureDemand> residual,
                                          CharikarStats* stats) {
  if (level < 1) throw InputError("level must be positive");
  if (budget < 1) throw InputError("budget must be positive");
  if (residual.size() > 64) throw InputError("at most 64 residual demands are supported");
  Search search{closure, residual, {}, {}};
  const Mask all = residual.size() == 64 ? ~Mask{0} : (Mask{1} << residual.size()) - 1;
  auto result = search.run(level, root, budget, all);
  if (stats) *stats = search.stats;
  return result;
}

Solution expand_tree(const TemporalInstance& instance, const MetricClosure& closure, const ClosureTree& tree) {
  std::vector<EdgeId> chosen;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const TreeNode& node = tree.nodes[i];
    if (node.parent < 0 || static_cast<std::size_t>(node.parent) >= i) {
      throw InvariantError("closure tree parents must precede children");
    }
    const TreePoint& from = tree.nodes[static_cast<std::size_t>(node.parent)].point;
    if (node.point.time < from.time) throw InvariantError("closure tree goes back in time");
    const auto hop = closure.dist(from.vertex, node.point.vertex, node.point.time);
    if (!hop || *hop != node.hop_cost) throw InvariantError("closure tree hop disagrees with the closure");
    if (from.vertex == node.point.vertex) continue;
    const auto path = closure.path(from.vertex, node.point.vertex, node.point.time);
    chosen.insert(chosen.end(), path.begin(), path.end());
  }
  return make_solution(instance, std::move(chosen));
}

CharikarResult charikar_approx(const TemporalInstance& instance, int level) {
  if (!instance.directed) throw InputError("charikar expects a directed instance");
  const Normalized normalized = normalize(instance, Variant::kEdge);
  const TemporalInstance& image = normalized.instance;
  if (!is_monotonic(image)) throw InputError("charikar expects a monotonic instance");
  const auto source = common_source(image);
  CharikarResult result;
  if (!source) {
    if (image.demands.empty()) {
      result.solution = make_solution(instance, {});
      return result;
    }
    throw InputError("charikar expects demands sharing one source");
  }
  if (const auto unmet = FrameIndex(image); !unmet.all_satisfied(image.demands, {})) {
    for (std::size_t i = 0; i < image.demands.size(); ++i) {
      if (!unmet.satisfies(image.demands[i], {})) {
        throw InfeasibleError("demand " + std::to_string(i) + " has no path in its frame", static_cast<int>(i));
      }
    }
  }

  std::vector<ClosureDemand> residual;
  for (std::size_t i = 0; i < image.demands.size(); ++i) {
    const Demand& d = image.demands[i];
    if (!is_trivial(d)) residual.push_back({d.b, d.t, static_cast<int>(i)});
  }
  const MetricClosure closure(image);
  const TreePoint root{*source, 1};
  if (residual.empty()) {
    result.tree.nodes.push_back({root, -1, Rational(0)});
    result.solution = make_solution(instance, {});
    return result;
  }
  auto tree = charikar_level(level, closure, root, static_cast<int>(residual.size()), residual, &result.stats);
  if (!tree) throw InvariantError("charikar found no tree on a feasible instance");
  result.tree = std::move(*tree);
  const Solution expanded = expand_tree(image, closure, result.tree);
  if (!is_feasible(image, expanded)) throw InvariantError("expanded closure tree is infeasible");
  result.solution = make_solution(instance, normalized.chain.lift(expanded).edges);
  return result;
}

Json to_json(const ClosureTree& tree, const TemporalInstance& instance) {
  Json nodes = Json::array();
  for (const TreeNode& node : tree.nodes) {
    nodes.push_back(Json{{"vertex", instance.vertices.at(static_cast<std::size_t>(node.point.vertex))},
                         {"time", node.point.time},
                         {"parent", node.parent},
                         {"hop_cost", to_string(node.hop_cost)}});
  }
  std::vector<int> covered = tree.covered;
  std::sort(covered.begin(), covered.end());
  return Json{{"nodes", std::move(nodes)}, {"covered", covered}, {"cost", to_string(tree.cost())}};
}

}  // namespace tsn
