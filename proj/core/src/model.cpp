#include "tsn/model.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>

#include "tsn/errors.hpp"

namespace tsn {
namespace {

bool contains(const std::vector<Time>& times, Time t) {
  return std::binary_search(times.begin(), times.end(), t);
}

std::string edge_label(const TemporalInstance& instance, EdgeId e) {
  const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
  const auto name = [&](VertexId v) -> std::string {
    if (v >= 0 && v < instance.num_vertices()) return instance.vertices[static_cast<std::size_t>(v)];
    return "#" + std::to_string(v);
  };
  return "edge " + std::to_string(e) + " (" + name(edge.u) + "," + name(edge.v) + ")";
}

void check_times(const std::vector<Time>& times, Time num_times, const std::string& element,
                 std::vector<Violation>& out) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 1 || times[i] > num_times) {
      out.push_back({element, "time " + std::to_string(times[i]) + " outside [1, " +
                                  std::to_string(num_times) + "]"});
    }
    if (i > 0 && times[i] <= times[i - 1]) {
      out.push_back({element, "time list not strictly increasing"});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const TemporalInstance& instance) {
  std::vector<Violation> out;
  const VertexId n = instance.num_vertices();
  if (instance.num_times < 1) {
    out.push_back({"instance", "T must be positive, got " + std::to_string(instance.num_times)});
  }

  std::set<std::string_view> names;
  for (VertexId v = 0; v < n; ++v) {
    const std::string& name = instance.vertices[static_cast<std::size_t>(v)];
    if (name.empty()) out.push_back({"vertex " + std::to_string(v), "empty vertex name"});
    if (!names.insert(name).second) out.push_back({"vertex " + name, "duplicate vertex name"});
  }

  if (instance.variant == Variant::kEdge) {
    if (!instance.node_activity.empty()) {
      out.push_back({"node_activity", "edge-variant instances must not carry node activity"});
    }
  } else if (static_cast<VertexId>(instance.node_activity.size()) != n) {
    out.push_back({"node_activity", "expected one activity list per vertex"});
  } else {
    for (VertexId v = 0; v < n; ++v) {
      check_times(instance.node_activity[static_cast<std::size_t>(v)], instance.num_times,
                  "vertex " + instance.vertices[static_cast<std::size_t>(v)], out);
    }
  }

  std::set<std::pair<VertexId, VertexId>> seen_pairs;
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    const std::string label = edge_label(instance, e);
    if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n) {
      out.push_back({label, "endpoint is not a vertex"});
      continue;
    }
    if (edge.u == edge.v) out.push_back({label, "self loop"});
    if (edge.weight < Rational(0)) out.push_back({label, "negative weight " + to_string(edge.weight)});
    if (instance.variant != Variant::kNode) {
      if (edge.times.empty()) out.push_back({label, "empty active-time set"});
      check_times(edge.times, instance.num_times, label, out);
    }
    auto key = std::make_pair(edge.u, edge.v);
    if (!instance.directed && key.first > key.second) std::swap(key.first, key.second);
    if (!seen_pairs.insert(key).second && !instance.multigraph) {
      out.push_back({label, "parallel edge"});
    }
  }

  for (std::size_t i = 0; i < instance.demands.size(); ++i) {
    const Demand& d = instance.demands[i];
    const std::string label = "demand " + std::to_string(i);
    if (d.a < 0 || d.a >= n || d.b < 0 || d.b >= n) out.push_back({label, "endpoint is not a vertex"});
    if (d.t < 1 || d.t > instance.num_times) {
      out.push_back({label, "time " + std::to_string(d.t) + " outside [1, " +
                                std::to_string(instance.num_times) + "]"});
    }
  }
  return out;
}

bool vertex_active(const TemporalInstance& instance, VertexId v, Time t) {
  if (instance.variant == Variant::kEdge) return t >= 1 && t <= instance.num_times;
  return contains(instance.node_activity[static_cast<std::size_t>(v)], t);
}

bool edge_active(const TemporalInstance& instance, EdgeId e, Time t) {
  const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
  switch (instance.variant) {
    case Variant::kEdge:
      return contains(edge.times, t);
    case Variant::kNode:
      return vertex_active(instance, edge.u, t) && vertex_active(instance, edge.v, t);
    case Variant::kNodeAndEdge:
      return contains(edge.times, t) && vertex_active(instance, edge.u, t) &&
             vertex_active(instance, edge.v, t);
  }
  return false;
}

std::vector<Time> effective_times(const TemporalInstance& instance, EdgeId e) {
  const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
  switch (instance.variant) {
    case Variant::kEdge:
      return edge.times;
    case Variant::kNode:
      return intersect_times(instance.node_activity[static_cast<std::size_t>(edge.u)],
                             instance.node_activity[static_cast<std::size_t>(edge.v)]);
    case Variant::kNodeAndEdge:
      return intersect_times(
          edge.times, intersect_times(instance.node_activity[static_cast<std::size_t>(edge.u)],
                                      instance.node_activity[static_cast<std::size_t>(edge.v)]));
  }
  return {};
}

Frame frame(const TemporalInstance& instance, Time t) {
  if (t < 1 || t > instance.num_times) {
    throw InputError("frame " + std::to_string(t) + " outside [1, " + std::to_string(instance.num_times) + "]");
  }
  Frame out;
  out.t = t;
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    if (vertex_active(instance, v, t)) out.vertices.push_back(v);
  }
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    if (edge_active(instance, e, t)) out.edges.push_back(e);
  }
  return out;
}

Solution make_solution(const TemporalInstance& instance, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Solution solution{std::move(edges), Rational(0)};
  solution.cost = solution_cost(instance, solution);
  return solution;
}

Rational solution_cost(const TemporalInstance& instance, const Solution& solution) {
  std::set<EdgeId> unique(solution.edges.begin(), solution.edges.end());
  Rational cost(0);
  for (EdgeId e : unique) {
    if (e < 0 || e >= instance.num_edges()) {
      throw InputError("solution refers to unknown edge " + std::to_string(e));
    }
    cost += instance.edges[static_cast<std::size_t>(e)].weight;
  }
  return cost;
}

bool satisfies(const TemporalInstance& instance, const Solution& solution, const Demand& demand) {
  if (is_trivial(demand)) return true;
  const std::vector<char> mask = edge_mask(instance, solution.edges);
  std::vector<char> seen(static_cast<std::size_t>(instance.num_vertices()), 0);
  std::vector<VertexId> stack{demand.a};
  seen[static_cast<std::size_t>(demand.a)] = 1;
  // Plain scan over the edge list; FrameIndex is the fast path.
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      if (!mask[static_cast<std::size_t>(e)] || !edge_active(instance, e, demand.t)) continue;
      const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
      VertexId next = -1;
      if (edge.u == x) next = edge.v;
      else if (!instance.directed && edge.v == x) next = edge.u;
      if (next < 0 || seen[static_cast<std::size_t>(next)]) continue;
      if (next == demand.b) return true;
      seen[static_cast<std::size_t>(next)] = 1;
      stack.push_back(next);
    }
  }
  return false;
}

bool is_feasible(const TemporalInstance& instance, const Solution& solution) {
  return std::all_of(instance.demands.begin(), instance.demands.end(),
                     [&](const Demand& d) { return satisfies(instance, solution, d); });
}

Solution all_edges(const TemporalInstance& instance) {
  std::vector<EdgeId> edges(static_cast<std::size_t>(instance.num_edges()));
  for (EdgeId e = 0; e < instance.num_edges(); ++e) edges[static_cast<std::size_t>(e)] = e;
  return make_solution(instance, std::move(edges));
}

bool is_monotonic(const TemporalInstance& instance) {
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const std::vector<Time> times = effective_times(instance, e);
    if (times.empty()) continue;
    if (times.back() != instance.num_times) return false;
    if (static_cast<Time>(times.size()) != instance.num_times - times.front() + 1) return false;
  }
  return true;
}

bool is_acyclic(const TemporalInstance& instance) {
  if (!instance.directed) throw InputError("acyclicity is defined for directed instances only");
  const auto n = static_cast<std::size_t>(instance.num_vertices());
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<VertexId>> out(n);
  for (const Edge& edge : instance.edges) {
    out[static_cast<std::size_t>(edge.u)].push_back(edge.v);
    ++indegree[static_cast<std::size_t>(edge.v)];
  }
  std::vector<VertexId> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(static_cast<VertexId>(v));
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    ++removed;
    for (VertexId w : out[static_cast<std::size_t>(v)]) {
      if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
  }
  return removed == n;
}

FrameIndex::FrameIndex(const TemporalInstance& instance)
    : num_vertices_(instance.num_vertices()), num_times_(instance.num_times) {
  const auto n = static_cast<std::size_t>(num_vertices_);
  offsets_.resize(static_cast<std::size_t>(num_times_));
  arcs_.resize(static_cast<std::size_t>(num_times_));
  frame_edges_.resize(static_cast<std::size_t>(num_times_));
  std::vector<std::vector<Time>> times(static_cast<std::size_t>(instance.num_edges()));
  for (EdgeId e = 0; e < instance.num_edges(); ++e) times[static_cast<std::size_t>(e)] = effective_times(instance, e);

  for (Time t = 1; t <= num_times_; ++t) {
    const auto ti = static_cast<std::size_t>(t - 1);
    std::vector<std::vector<Arc>> buckets(n);
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      if (!contains(times[static_cast<std::size_t>(e)], t)) continue;
      const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
      frame_edges_[ti].push_back(e);
      buckets[static_cast<std::size_t>(edge.u)].push_back({edge.v, e});
      if (!instance.directed) buckets[static_cast<std::size_t>(edge.v)].push_back({edge.u, e});
    }
    offsets_[ti].assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
      offsets_[ti][v + 1] = offsets_[ti][v] + buckets[v].size();
      arcs_[ti].insert(arcs_[ti].end(), buckets[v].begin(), buckets[v].end());
    }
  }
}

std::span<const FrameIndex::Arc> FrameIndex::out(Time t, VertexId v) const {
  const auto ti = static_cast<std::size_t>(t - 1);
  const auto vi = static_cast<std::size_t>(v);
  return std::span<const Arc>(arcs_[ti]).subspan(offsets_[ti][vi], offsets_[ti][vi + 1] - offsets_[ti][vi]);
}

std::span<const EdgeId> FrameIndex::edges_at(Time t) const {
  return frame_edges_[static_cast<std::size_t>(t - 1)];
}

bool FrameIndex::reachable(Time t, VertexId from, VertexId to, std::span<const char> selected) const {
  if (from == to) return true;
  if (t < 1 || t > num_times_) return false;
  std::vector<char> seen(static_cast<std::size_t>(num_vertices_), 0);
  std::vector<VertexId> stack{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (const Arc& arc : out(t, x)) {
      if (!selected.empty() && !selected[static_cast<std::size_t>(arc.edge)]) continue;
      if (seen[static_cast<std::size_t>(arc.to)]) continue;
      if (arc.to == to) return true;
      seen[static_cast<std::size_t>(arc.to)] = 1;
      stack.push_back(arc.to);
    }
  }
  return false;
}

bool FrameIndex::satisfies(const Demand& demand, std::span<const char> selected) const {
  return reachable(demand.t, demand.a, demand.b, selected);
}

bool FrameIndex::all_satisfied(std::span<const Demand> demands, std::span<const char> selected) const {
  return std::all_of(demands.begin(), demands.end(),
                     [&](const Demand& d) { return satisfies(d, selected); });
}

std::vector<char> edge_mask(const TemporalInstance& instance, std::span<const EdgeId> edges) {
  std::vector<char> mask(static_cast<std::size_t>(instance.num_edges()), 0);
  for (EdgeId e : edges) {
    if (e < 0 || e >= instance.num_edges()) {
      throw InputError("solution refers to unknown edge " + std::to_string(e));
    }
    mask[static_cast<std::size_t>(e)] = 1;
  }
  return mask;
}

Solution prune_zero_weight(const TemporalInstance& instance, Solution solution) {
  const FrameIndex index(instance);
  std::vector<char> mask = edge_mask(instance, solution.edges);
  if (!index.all_satisfied(instance.demands, mask)) return solution;
  for (auto it = solution.edges.rbegin(); it != solution.edges.rend(); ++it) {
    const EdgeId e = *it;
    if (instance.edges[static_cast<std::size_t>(e)].weight != Rational(0)) continue;
    mask[static_cast<std::size_t>(e)] = 0;
    if (!index.all_satisfied(instance.demands, mask)) mask[static_cast<std::size_t>(e)] = 1;
  }
  std::vector<EdgeId> kept;
  for (EdgeId e : solution.edges) {
    if (mask[static_cast<std::size_t>(e)]) kept.push_back(e);
  }
  return make_solution(instance, std::move(kept));
}

}  // namespace tsn
