#include "tsn/monotonic_reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "tsn/errors.hpp"

namespace tsn {
namespace {

std::vector<Time> times_from(Time first, Time last) {
  std::vector<Time> out;
  for (Time t = first; t <= last; ++t) out.push_back(t);
  return out;
}

void require_monotonic_directed_edge(const TemporalInstance& instance, const char* op) {
  if (!instance.directed) throw InputError(std::string(op) + " expects a directed instance");
  if (instance.variant != Variant::kEdge) throw InputError(std::string(op) + " expects an edge-variant instance");
  if (!is_monotonic(instance)) throw InputError(std::string(op) + " expects a monotonic instance");
}

}  // namespace

std::vector<Violation> validate(const PriorityInstance& instance) {
  std::vector<Violation> out;
  const auto n = static_cast<VertexId>(instance.vertices.size());
  if (instance.num_priorities < 1) out.push_back({"instance", "P must be positive"});
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    const PriorityEdge& edge = instance.edges[e];
    const std::string label = "edge " + std::to_string(e);
    if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n) out.push_back({label, "endpoint is not a vertex"});
    else if (edge.u == edge.v) out.push_back({label, "self loop"});
    if (edge.weight < Rational(0)) out.push_back({label, "negative weight"});
    if (edge.priority < 1 || edge.priority > instance.num_priorities) out.push_back({label, "priority out of range"});
  }
  for (std::size_t i = 0; i < instance.demands.size(); ++i) {
    const PriorityDemand& d = instance.demands[i];
    const std::string label = "demand " + std::to_string(i);
    if (d.a < 0 || d.a >= n || d.b < 0 || d.b >= n) out.push_back({label, "endpoint is not a vertex"});
    if (d.priority < 1 || d.priority > instance.num_priorities) out.push_back({label, "priority out of range"});
  }
  return out;
}

bool priority_satisfies(const PriorityInstance& instance, std::span<const EdgeId> edges,
                        const PriorityDemand& demand) {
  if (demand.a == demand.b) return true;
  std::vector<char> seen(instance.vertices.size(), 0);
  std::vector<VertexId> stack{demand.a};
  seen[static_cast<std::size_t>(demand.a)] = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (EdgeId e : edges) {
      const PriorityEdge& edge = instance.edges.at(static_cast<std::size_t>(e));
      if (edge.priority > demand.priority) continue;
      VertexId next = -1;
      if (edge.u == x) next = edge.v;
      else if (edge.v == x) next = edge.u;
      if (next < 0 || seen[static_cast<std::size_t>(next)]) continue;
      if (next == demand.b) return true;
      seen[static_cast<std::size_t>(next)] = 1;
      stack.push_back(next);
    }
  }
  return false;
}

bool priority_feasible(const PriorityInstance& instance, std::span<const EdgeId> edges) {
  return std::all_of(instance.demands.begin(), instance.demands.end(),
                     [&](const PriorityDemand& d) { return priority_satisfies(instance, edges, d); });
}

Rational priority_cost(const PriorityInstance& instance, std::span<const EdgeId> edges) {
  std::set<EdgeId> unique(edges.begin(), edges.end());
  Rational cost(0);
  for (EdgeId e : unique) cost += instance.edges.at(static_cast<std::size_t>(e)).weight;
  return cost;
}

PriorityInstance tsn_to_priority(const TemporalInstance& instance) {
  if (instance.directed) throw InputError("tsn_to_priority expects an undirected instance");
  if (instance.variant != Variant::kEdge) throw InputError("tsn_to_priority expects an edge-variant instance");
  if (!is_monotonic(instance)) throw InputError("tsn_to_priority expects a monotonic instance");
  PriorityInstance out;
  out.vertices = instance.vertices;
  out.num_priorities = instance.num_times;
  for (const Edge& edge : instance.edges) {
    if (edge.times.empty()) throw InputError("edge without active times");
    out.edges.push_back({edge.u, edge.v, edge.weight, edge.times.front()});
  }
  for (const Demand& d : instance.demands) out.demands.push_back({d.a, d.b, d.t});
  return out;
}

Reduced priority_to_tsn(const PriorityInstance& instance) {
  if (const auto violations = validate(instance); !violations.empty()) {
    throw InputError("invalid priority instance: " + violations.front().element + ": " +
                     violations.front().message);
  }
  const Time horizon = instance.num_priorities;
  InstanceBuilder builder(false, Variant::kEdge, horizon);
  for (const std::string& name : instance.vertices) builder.vertex(name);

  std::map<std::pair<VertexId, VertexId>, int> multiplicity;
  for (const PriorityEdge& edge : instance.edges) {
    ++multiplicity[std::minmax(edge.u, edge.v)];
  }

  ReductionMap map;
  map.kind = ReductionKind::kPriorityToTsn;
  map.forward_edge_map.resize(instance.edges.size());
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    const PriorityEdge& edge = instance.edges[e];
    const std::vector<Time> times = times_from(edge.priority, horizon);
    auto& images = map.forward_edge_map[e];
    if (multiplicity[std::minmax(edge.u, edge.v)] == 1) {
      images.push_back(builder.add_edge(edge.u, edge.v, edge.weight, times));
      continue;
    }
    const VertexId mid = builder.vertex(builder.fresh_name("mid#" + std::to_string(e)));
    map.added_vertices.push_back(mid);
    const Rational half = edge.weight / 2;
    images.push_back(builder.add_edge(edge.u, mid, half, times));
    images.push_back(builder.add_edge(mid, edge.v, half, times));
  }
  for (std::size_t i = 0; i < instance.demands.size(); ++i) {
    const PriorityDemand& d = instance.demands[i];
    builder.add_demand(d.a, d.b, d.priority);
    map.demand_map.push_back(static_cast<int>(i));
  }
  TemporalInstance image = std::move(builder).build();
  map.image = std::make_shared<const TemporalInstance>(image);
  return Reduced{std::move(image), std::move(map)};
}

Solution lift_priority_solution(const PriorityInstance& source, const ReductionMap& map,
                                const Solution& image_solution) {
  if (map.kind != ReductionKind::kPriorityToTsn) throw InputError("not a priority_to_tsn map");
  Solution lifted = lift_solution(map, image_solution);
  lifted.cost = priority_cost(source, lifted.edges);
  if (!priority_feasible(source, lifted.edges)) {
    throw InvariantError("lifted priority solution is infeasible");
  }
  return lifted;
}

std::optional<VertexId> common_source(const TemporalInstance& instance) {
  std::optional<VertexId> source;
  for (const Demand& d : instance.demands) {
    if (source && *source != d.a) return std::nullopt;
    source = d.a;
  }
  return source;
}

DstInstance single_source_to_dst(const TemporalInstance& instance) {
  require_monotonic_directed_edge(instance, "single_source_to_dst");
  const auto source = common_source(instance);
  if (!source) throw InputError("single_source_to_dst expects demands sharing one source");

  const auto k = static_cast<int>(instance.demands.size());
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return instance.demands[static_cast<std::size_t>(lhs)].t < instance.demands[static_cast<std::size_t>(rhs)].t;
  });

  const VertexId n = instance.num_vertices();
  const auto copy = [n](VertexId v, int level) { return static_cast<VertexId>((level - 1) * n + v); };
  DstInstance dst;
  dst.num_levels = k;
  for (int level = 1; level <= k; ++level) {
    for (VertexId v = 0; v < n; ++v) {
      dst.vertices.push_back(instance.vertices[static_cast<std::size_t>(v)] + "@" + std::to_string(level));
      dst.origin_vertex.push_back(v);
      dst.level.push_back(level);
    }
  }
  for (int level = 1; level <= k; ++level) {
    const Time t = instance.demands[static_cast<std::size_t>(order[static_cast<std::size_t>(level - 1)])].t;
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      if (!edge_active(instance, e, t)) continue;
      const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
      dst.edges.push_back({copy(edge.u, level), copy(edge.v, level), edge.weight, e});
    }
  }
  for (int level = 1; level < k; ++level) {
    for (VertexId v = 0; v < n; ++v) dst.edges.push_back({copy(v, level), copy(v, level + 1), Rational(0), -1});
  }
  dst.root = copy(*source, 1);
  for (int level = 1; level <= k; ++level) {
    const int demand = order[static_cast<std::size_t>(level - 1)];
    dst.terminals.push_back(copy(instance.demands[static_cast<std::size_t>(demand)].b, level));
    dst.terminal_demand.push_back(demand);
  }
  return dst;
}

bool dst_feasible(const DstInstance& dst, std::span<const EdgeId> edges) {
  std::vector<std::vector<VertexId>> out(dst.vertices.size());
  for (EdgeId e : edges) {
    const DstEdge& edge = dst.edges.at(static_cast<std::size_t>(e));
    out[static_cast<std::size_t>(edge.u)].push_back(edge.v);
  }
  std::vector<char> seen(dst.vertices.size(), 0);
  std::vector<VertexId> stack{dst.root};
  seen[static_cast<std::size_t>(dst.root)] = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : out[static_cast<std::size_t>(x)]) {
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
    }
  }
  return std::all_of(dst.terminals.begin(), dst.terminals.end(),
                     [&](VertexId v) { return seen[static_cast<std::size_t>(v)] != 0; });
}

Rational dst_cost(const DstInstance& dst, std::span<const EdgeId> edges) {
  std::set<EdgeId> unique(edges.begin(), edges.end());
  Rational cost(0);
  for (EdgeId e : unique) cost += dst.edges.at(static_cast<std::size_t>(e)).weight;
  return cost;
}

Solution dst_solution_to_tsn(const DstInstance& dst, std::span<const EdgeId> edges) {
  if (!dst_feasible(dst, edges)) throw InputError("DST edge set does not reach every terminal");
  std::map<EdgeId, Rational> projected;
  for (EdgeId e : edges) {
    const DstEdge& edge = dst.edges.at(static_cast<std::size_t>(e));
    if (edge.origin >= 0) projected.emplace(edge.origin, edge.weight);
  }
  Solution solution;
  for (const auto& [origin, weight] : projected) {
    solution.edges.push_back(origin);
    solution.cost += weight;
  }
  return solution;
}

std::vector<std::optional<Time>> earliest_necessary_times(const TemporalInstance& instance,
                                                          const Solution& solution) {
  const FrameIndex index(instance);
  std::vector<char> mask = edge_mask(instance, solution.edges);
  std::vector<std::optional<Time>> out;
  out.reserve(solution.edges.size());
  for (EdgeId e : solution.edges) {
    mask[static_cast<std::size_t>(e)] = 0;
    std::optional<Time> earliest;
    for (const Demand& d : instance.demands) {
      if (earliest && *earliest <= d.t) continue;
      if (!index.satisfies(d, mask)) earliest = d.t;
    }
    mask[static_cast<std::size_t>(e)] = 1;
    out.push_back(earliest);
  }
  return out;
}

Solution normalize_to_time_layered_tree(const TemporalInstance& instance, const Solution& solution) {
  require_monotonic_directed_edge(instance, "normalize_to_time_layered_tree");
  if (!common_source(instance)) throw InputError("normalize_to_time_layered_tree expects a single source");
  const FrameIndex index(instance);
  std::vector<char> mask = edge_mask(instance, solution.edges);
  if (!index.all_satisfied(instance.demands, mask)) {
    throw InputError("normalize_to_time_layered_tree expects a feasible solution");
  }

  // Removal order: heaviest first, then highest index.
  std::vector<EdgeId> order(solution.edges.begin(), solution.edges.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::stable_sort(order.begin(), order.end(), [&](EdgeId lhs, EdgeId rhs) {
    const Rational& wl = instance.edges[static_cast<std::size_t>(lhs)].weight;
    const Rational& wr = instance.edges[static_cast<std::size_t>(rhs)].weight;
    if (wl != wr) return wl > wr;
    return lhs > rhs;
  });

  // An edge that no demand needs is redundant. Removing redundant edges one at
  // a time until none is left yields a minimal solution, and a minimal
  // single-source monotonic solution is an arborescence whose earliest
  // necessary times grow away from the root.
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e : order) {
      if (!mask[static_cast<std::size_t>(e)]) continue;
      mask[static_cast<std::size_t>(e)] = 0;
      if (index.all_satisfied(instance.demands, mask)) {
        changed = true;
        break;
      }
      mask[static_cast<std::size_t>(e)] = 1;
    }
  }

  std::vector<EdgeId> kept;
  for (EdgeId e : order) {
    if (mask[static_cast<std::size_t>(e)]) kept.push_back(e);
  }
  Solution out = make_solution(instance, std::move(kept));
  if (!is_time_layered_tree(instance, out)) {
    throw InvariantError("normalized solution is not a time-layered tree");
  }
  return out;
}

bool is_time_layered_tree(const TemporalInstance& instance, const Solution& solution) {
  const auto source = common_source(instance);
  if (!source) return solution.edges.empty();
  const auto n = static_cast<std::size_t>(instance.num_vertices());
  std::vector<EdgeId> parent_edge(n, -1);
  for (EdgeId e : solution.edges) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    if (edge.v == *source || parent_edge[static_cast<std::size_t>(edge.v)] >= 0) return false;
    parent_edge[static_cast<std::size_t>(edge.v)] = e;
  }
  const auto earliest = earliest_necessary_times(instance, solution);
  std::map<EdgeId, std::optional<Time>> ent;
  for (std::size_t i = 0; i < solution.edges.size(); ++i) ent[solution.edges[i]] = earliest[i];

  // Walk each edge's ancestor chain: it must end at the source, and times
  // may only grow downward.
  for (EdgeId e : solution.edges) {
    EdgeId current = e;
    std::size_t steps = 0;
    while (true) {
      const Edge& edge = instance.edges[static_cast<std::size_t>(current)];
      if (edge.u == *source) break;
      const EdgeId up = parent_edge[static_cast<std::size_t>(edge.u)];
      if (up < 0 || ++steps > n) return false;
      const auto& below = ent[current];
      const auto& above = ent[up];
      if (!below || !above || *above > *below) return false;
      current = up;
    }
  }
  return true;
}

Json to_json(const PriorityInstance& instance) {
  Json json;
  json["P"] = instance.num_priorities;
  json["vertices"] = instance.vertices;
  Json edges = Json::array();
  for (const PriorityEdge& e : instance.edges) {
    edges.push_back(Json{{"u", instance.vertices[static_cast<std::size_t>(e.u)]},
                         {"v", instance.vertices[static_cast<std::size_t>(e.v)]},
                         {"w", to_string(e.weight)},
                         {"priority", e.priority}});
  }
  json["edges"] = std::move(edges);
  Json demands = Json::array();
  for (const PriorityDemand& d : instance.demands) {
    demands.push_back(Json{{"a", instance.vertices[static_cast<std::size_t>(d.a)]},
                           {"b", instance.vertices[static_cast<std::size_t>(d.b)]},
                           {"priority", d.priority}});
  }
  json["demands"] = std::move(demands);
  return json;
}

PriorityInstance priority_from_json(const Json& json) {
  PriorityInstance out;
  try {
    out.num_priorities = json.at("P").get<int>();
    out.vertices = json.at("vertices").get<std::vector<std::string>>();
    const auto lookup = [&](const Json& name) {
      const auto it = std::find(out.vertices.begin(), out.vertices.end(), name.get<std::string>());
      if (it == out.vertices.end()) throw InputError("unknown vertex " + name.dump());
      return static_cast<VertexId>(it - out.vertices.begin());
    };
    for (const Json& e : json.at("edges")) {
      out.edges.push_back({lookup(e.at("u")), lookup(e.at("v")), rational_from_json(e.at("w")),
                           e.at("priority").get<int>()});
    }
    for (const Json& d : json.at("demands")) {
      out.demands.push_back({lookup(d.at("a")), lookup(d.at("b")), d.at("priority").get<int>()});
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed priority instance: ") + e.what());
  }
  return out;
}

Json to_json(const DstInstance& dst) {
  const auto name = [&](VertexId v) { return dst.vertices[static_cast<std::size_t>(v)]; };
  Json json;
  json["vertices"] = dst.vertices;
  Json edges = Json::array();
  for (const DstEdge& e : dst.edges) {
    Json edge{{"u", name(e.u)}, {"v", name(e.v)}, {"w", to_string(e.weight)}};
    if (e.origin >= 0) edge["origin"] = e.origin;
    edges.push_back(std::move(edge));
  }
  json["edges"] = std::move(edges);
  json["root"] = name(dst.root);
  Json terminals = Json::array();
  for (VertexId v : dst.terminals) terminals.push_back(name(v));
  json["terminals"] = std::move(terminals);
  Json levels = Json::object();
  for (std::size_t v = 0; v < dst.vertices.size(); ++v) {
    levels[dst.vertices[v]] = std::vector<int>{dst.level[v]};
  }
  json["levels"] = std::move(levels);
  json["terminal_demands"] = dst.terminal_demand;
  return json;
}

}  // namespace tsn
