#include "tsn/variant_reductions.hpp"

#include <algorithm>
#include <utility>

#include "tsn/errors.hpp"
#include "tsn/model.hpp"

namespace tsn {
namespace {

InstanceBuilder builder_like(const TemporalInstance& source, Variant variant, Time num_times) {
  InstanceBuilder builder(source.directed, variant, num_times);
  for (const std::string& name : source.vertices) builder.vertex(name);
  return builder;
}

void copy_demands(const TemporalInstance& source, InstanceBuilder& builder, ReductionMap& map) {
  for (std::size_t i = 0; i < source.demands.size(); ++i) {
    const Demand& d = source.demands[i];
    builder.add_demand(d.a, d.b, d.t);
    map.demand_map.push_back(static_cast<int>(i));
  }
}

Reduced finish(InstanceBuilder&& builder, ReductionMap map, const TemporalInstance& source) {
  TemporalInstance image = std::move(builder).build();
  map.source = std::make_shared<const TemporalInstance>(source);
  map.image = std::make_shared<const TemporalInstance>(image);
  return Reduced{std::move(image), std::move(map)};
}

void require_variant(const TemporalInstance& instance, Variant variant, const char* op) {
  if (instance.variant != variant) {
    throw InputError(std::string(op) + " expects a " + std::string(to_string(variant)) +
                     "-variant instance, got " + std::string(to_string(instance.variant)));
  }
}

}  // namespace

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kEmbed:
      return "embed_node_and_edge";
    case ReductionKind::kNodeEdgeToNode:
      return "node_edge_to_node";
    case ReductionKind::kNodeToEdge:
      return "node_to_edge";
    case ReductionKind::kToSimple:
      return "to_simple";
    case ReductionKind::kDirectize:
      return "directize";
    case ReductionKind::kPriorityToTsn:
      return "priority_to_tsn";
  }
  return "unknown";
}

Reduced embed_node_and_edge(const TemporalInstance& instance) {
  if (instance.variant == Variant::kNodeAndEdge) {
    throw InputError("instance is already node_and_edge");
  }
  ReductionMap map;
  map.kind = ReductionKind::kEmbed;
  InstanceBuilder builder = builder_like(instance, Variant::kNodeAndEdge, instance.num_times);
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    builder.set_activity(v, instance.variant == Variant::kNode
                                ? instance.node_activity[static_cast<std::size_t>(v)]
                                : all_times(instance.num_times));
  }
  map.forward_edge_map.resize(instance.edges.size());
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    std::vector<Time> times = effective_times(instance, e);
    if (times.empty()) {
      map.dropped_edges.push_back(e);
      continue;
    }
    map.forward_edge_map[static_cast<std::size_t>(e)].push_back(
        builder.add_edge(edge.u, edge.v, edge.weight, std::move(times)));
  }
  copy_demands(instance, builder, map);
  builder.instance().multigraph = instance.multigraph;
  return finish(std::move(builder), std::move(map), instance);
}

Reduced node_edge_to_node(const TemporalInstance& instance) {
  require_variant(instance, Variant::kNodeAndEdge, "node_edge_to_node");
  ReductionMap map;
  map.kind = ReductionKind::kNodeEdgeToNode;
  InstanceBuilder builder = builder_like(instance, Variant::kNode, instance.num_times);
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    builder.set_activity(v, instance.node_activity[static_cast<std::size_t>(v)]);
  }
  map.forward_edge_map.resize(instance.edges.size());
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    const std::string name = builder.fresh_name(
        "x(" + instance.vertices[static_cast<std::size_t>(edge.u)] + "," +
        instance.vertices[static_cast<std::size_t>(edge.v)] + ")#" + std::to_string(e));
    const VertexId x = builder.vertex(name);
    builder.set_activity(x, edge.times);
    map.added_vertices.push_back(x);
    auto& images = map.forward_edge_map[static_cast<std::size_t>(e)];
    images.push_back(builder.add_edge(edge.u, x, edge.weight, {}));
    images.push_back(builder.add_edge(x, edge.v, Rational(0), {}));
  }
  copy_demands(instance, builder, map);
  return finish(std::move(builder), std::move(map), instance);
}

Reduced node_to_edge(const TemporalInstance& instance) {
  require_variant(instance, Variant::kNode, "node_to_edge");
  ReductionMap map;
  map.kind = ReductionKind::kNodeToEdge;
  InstanceBuilder builder = builder_like(instance, Variant::kEdge, instance.num_times);
  map.forward_edge_map.resize(instance.edges.size());
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    std::vector<Time> times = effective_times(instance, e);
    if (times.empty()) {
      map.dropped_edges.push_back(e);
      continue;
    }
    map.forward_edge_map[static_cast<std::size_t>(e)].push_back(
        builder.add_edge(edge.u, edge.v, edge.weight, std::move(times)));
  }
  copy_demands(instance, builder, map);
  builder.instance().multigraph = instance.multigraph;
  return finish(std::move(builder), std::move(map), instance);
}

Reduced to_simple(const TemporalInstance& instance) {
  if (!instance.directed) throw InputError("to_simple expects a directed instance");
  require_variant(instance, Variant::kNode, "to_simple");
  const auto k = static_cast<Time>(instance.demands.size());
  if (k == 0) throw InputError("to_simple needs at least one demand");

  ReductionMap map;
  map.kind = ReductionKind::kToSimple;
  InstanceBuilder builder = builder_like(instance, Variant::kNode, k);
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    std::vector<Time> times;
    for (Time i = 1; i <= k; ++i) {
      if (vertex_active(instance, v, instance.demands[static_cast<std::size_t>(i - 1)].t)) times.push_back(i);
    }
    builder.set_activity(v, std::move(times));
  }
  map.forward_edge_map.resize(instance.edges.size());
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    map.forward_edge_map[static_cast<std::size_t>(e)].push_back(builder.add_edge(edge.u, edge.v, edge.weight, {}));
  }

  const VertexId source = builder.vertex(builder.fresh_name("source*"));
  const VertexId sink = builder.vertex(builder.fresh_name("sink*"));
  builder.set_activity(source, all_times(k));
  builder.set_activity(sink, all_times(k));
  map.added_vertices = {source, sink};
  const auto aux = [&](VertexId u, VertexId v) {
    map.auxiliary_edges.push_back(builder.add_edge(u, v, Rational(0), {}));
  };
  for (Time i = 1; i <= k; ++i) {
    const Demand& d = instance.demands[static_cast<std::size_t>(i - 1)];
    const VertexId x = builder.vertex(builder.fresh_name("x*" + std::to_string(i)));
    const VertexId y = builder.vertex(builder.fresh_name("y*" + std::to_string(i)));
    builder.set_activity(x, {i});
    builder.set_activity(y, {i});
    map.added_vertices.push_back(x);
    map.added_vertices.push_back(y);
    aux(source, x);
    if (is_trivial(d)) {
      // The empty path needs no active vertex; bridge the wrappers directly.
      aux(x, y);
    } else {
      aux(x, d.a);
      aux(d.b, y);
    }
    aux(y, sink);
    builder.add_demand(source, sink, i);
    map.demand_map.push_back(static_cast<int>(i - 1));
  }
  return finish(std::move(builder), std::move(map), instance);
}

Reduced directize(const TemporalInstance& instance) {
  if (instance.directed) throw InputError("directize expects an undirected instance");
  ReductionMap map;
  map.kind = ReductionKind::kDirectize;
  InstanceBuilder builder(true, instance.variant, instance.num_times);
  for (const std::string& name : instance.vertices) builder.vertex(name);
  if (instance.variant != Variant::kEdge) {
    for (VertexId v = 0; v < instance.num_vertices(); ++v) {
      builder.set_activity(v, instance.node_activity[static_cast<std::size_t>(v)]);
    }
  }
  map.forward_edge_map.resize(instance.edges.size());
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    auto& images = map.forward_edge_map[static_cast<std::size_t>(e)];
    images.push_back(builder.add_edge(edge.u, edge.v, edge.weight, edge.times));
    images.push_back(builder.add_edge(edge.v, edge.u, edge.weight, edge.times));
  }
  copy_demands(instance, builder, map);
  builder.instance().multigraph = instance.multigraph;
  return finish(std::move(builder), std::move(map), instance);
}

Solution lift_solution(const ReductionMap& map, const Solution& image_solution) {
  if (map.image && !is_feasible(*map.image, image_solution)) {
    throw InputError(std::string(to_string(map.kind)) + ": image solution is infeasible");
  }
  std::vector<char> selected;
  if (map.image) {
    selected = edge_mask(*map.image, image_solution.edges);
  } else {
    EdgeId max_edge = -1;
    for (EdgeId e : image_solution.edges) max_edge = std::max(max_edge, e);
    selected.assign(static_cast<std::size_t>(max_edge + 1), 0);
    for (EdgeId e : image_solution.edges) {
      if (e < 0) throw InputError("negative edge id in image solution");
      selected[static_cast<std::size_t>(e)] = 1;
    }
  }
  const auto is_selected = [&](EdgeId e) {
    return e >= 0 && static_cast<std::size_t>(e) < selected.size() && selected[static_cast<std::size_t>(e)];
  };
  const bool any_suffices = map.kind == ReductionKind::kDirectize;
  std::vector<EdgeId> lifted;
  for (std::size_t e = 0; e < map.forward_edge_map.size(); ++e) {
    const auto& images = map.forward_edge_map[e];
    if (images.empty()) continue;
    const bool keep = any_suffices ? std::any_of(images.begin(), images.end(), is_selected)
                                   : std::all_of(images.begin(), images.end(), is_selected);
    if (keep) lifted.push_back(static_cast<EdgeId>(e));
  }
  if (!map.source) {
    return Solution{std::move(lifted), Rational(0)};
  }
  Solution solution = make_solution(*map.source, std::move(lifted));
  if (!is_feasible(*map.source, solution)) {
    throw InvariantError(std::string(to_string(map.kind)) + ": lifted solution is infeasible");
  }
  return solution;
}

Solution ReductionChain::lift(const Solution& image_solution) const {
  Solution current = image_solution;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) current = lift_solution(*it, current);
  return current;
}

Normalized normalize(const TemporalInstance& instance, Variant target) {
  Normalized out{instance, {}};
  const auto apply = [&](Reduced (*reduction)(const TemporalInstance&)) {
    Reduced r = reduction(out.instance);
    out.instance = std::move(r.instance);
    out.chain.append(std::move(r.map));
  };
  if (instance.variant == target) return out;
  switch (target) {
    case Variant::kNodeAndEdge:
      apply(embed_node_and_edge);
      break;
    case Variant::kNode:
      if (out.instance.variant == Variant::kEdge) apply(embed_node_and_edge);
      apply(node_edge_to_node);
      break;
    case Variant::kEdge:
      if (out.instance.variant == Variant::kNodeAndEdge) apply(node_edge_to_node);
      apply(node_to_edge);
      break;
  }
  return out;
}

Json to_json(const ReductionMap& map) {
  Json json;
  json["kind"] = std::string(to_string(map.kind));
  json["forward_edge_map"] = map.forward_edge_map;
  json["auxiliary_edges"] = map.auxiliary_edges;
  Json added = Json::array();
  for (VertexId v : map.added_vertices) {
    if (map.image) added.push_back(map.image->vertices[static_cast<std::size_t>(v)]);
    else added.push_back(v);
  }
  json["added_vertices"] = std::move(added);
  json["demand_map"] = map.demand_map;
  json["dropped_edges"] = map.dropped_edges;
  return json;
}

Json to_json(const ReductionChain& chain) {
  Json steps = Json::array();
  for (const ReductionMap& map : chain.steps) steps.push_back(to_json(map));
  return Json{{"steps", std::move(steps)}};
}

}  // namespace tsn
