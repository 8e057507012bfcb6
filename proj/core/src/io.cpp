#include "tsn/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "tsn/errors.hpp"

namespace tsn {
namespace {

const Json& require(const Json& object, const char* key, const std::string& context) {
  if (!object.is_object() || !object.contains(key)) {
    throw InputError(context + ": missing field '" + key + "'");
  }
  return object.at(key);
}

Time time_from_json(const Json& json, const std::string& context) {
  if (!json.is_number_integer()) throw InputError(context + ": time must be an integer");
  return json.get<Time>();
}

std::vector<Time> times_from_json(const Json& json, const std::string& context) {
  if (!json.is_array()) throw InputError(context + ": time list must be an array");
  std::vector<Time> times;
  for (const Json& t : json) times.push_back(time_from_json(t, context));
  normalize_times(times);
  return times;
}

}  // namespace

Rational rational_from_json(const Json& json) {
  if (json.is_number_integer()) return Rational(json.get<std::int64_t>());
  // dump() yields the shortest round-trip decimal, e.g. 0.1 -> "0.1".
  if (json.is_number_float()) return parse_rational(json.dump());
  if (json.is_string()) return parse_rational(json.get<std::string>());
  throw InputError("expected a number or rational string, got " + json.dump());
}

TemporalInstance instance_from_json(const Json& json) {
  if (!json.is_object()) throw InputError("instance must be a JSON object");
  const std::string ctx = "instance";
  const Json& variant_json = require(json, "variant", ctx);
  if (!variant_json.is_string()) throw InputError("instance: 'variant' must be a string");
  const auto variant = parse_variant(variant_json.get<std::string>());
  if (!variant) throw InputError("instance: unknown variant '" + variant_json.get<std::string>() + "'");
  const Json& directed = require(json, "directed", ctx);
  if (!directed.is_boolean()) throw InputError("instance: 'directed' must be a boolean");

  InstanceBuilder builder(directed.get<bool>(), *variant, time_from_json(require(json, "T", ctx), "T"));
  const Time num_times = builder.instance().num_times;
  if (json.contains("multigraph")) builder.instance().multigraph = json.at("multigraph").get<bool>();

  const Json& vertices = require(json, "vertices", ctx);
  if (!vertices.is_array()) throw InputError("instance: 'vertices' must be an array");
  for (const Json& v : vertices) {
    if (!v.is_string()) throw InputError("instance: vertex names must be strings");
    const std::string name = v.get<std::string>();
    if (builder.has_vertex(name)) throw InputError("instance: duplicate vertex '" + name + "'");
    builder.vertex(name);
  }
  const auto lookup = [&](const Json& j, const std::string& context) {
    if (!j.is_string()) throw InputError(context + ": vertex reference must be a string");
    const std::string name = j.get<std::string>();
    if (!builder.has_vertex(name)) throw InputError(context + ": unknown vertex '" + name + "'");
    return builder.vertex(name);
  };

  const Json& edges = require(json, "edges", ctx);
  if (!edges.is_array()) throw InputError("instance: 'edges' must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Json& e = edges[i];
    const std::string ectx = "edge " + std::to_string(i);
    const VertexId u = lookup(require(e, "u", ectx), ectx);
    const VertexId v = lookup(require(e, "v", ectx), ectx);
    const Rational w = rational_from_json(require(e, "w", ectx));
    std::vector<Time> times;
    if (e.contains("times")) {
      times = times_from_json(e.at("times"), ectx);
    } else if (e.contains("from")) {
      for (Time t = time_from_json(e.at("from"), ectx); t <= num_times; ++t) times.push_back(t);
    } else if (*variant != Variant::kNode) {
      throw InputError(ectx + ": missing 'times'");
    }
    if (*variant == Variant::kNode) times.clear();
    builder.add_edge(u, v, w, std::move(times));
  }

  if (*variant != Variant::kEdge) {
    const Json& activity = require(json, "node_activity", ctx);
    if (!activity.is_object()) throw InputError("instance: 'node_activity' must be an object");
    for (const auto& [name, times] : activity.items()) {
      if (!builder.has_vertex(name)) throw InputError("node_activity: unknown vertex '" + name + "'");
      builder.set_activity(builder.vertex(name), times_from_json(times, "node_activity " + name));
    }
  }

  const Json& demands = require(json, "demands", ctx);
  if (!demands.is_array()) throw InputError("instance: 'demands' must be an array");
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const Json& d = demands[i];
    const std::string dctx = "demand " + std::to_string(i);
    const VertexId a = lookup(require(d, "a", dctx), dctx);
    const VertexId b = lookup(require(d, "b", dctx), dctx);
    builder.add_demand(a, b, time_from_json(require(d, "t", dctx), dctx));
  }
  return std::move(builder).build();
}

Json to_json(const TemporalInstance& instance) {
  Json json;
  json["directed"] = instance.directed;
  json["variant"] = std::string(to_string(instance.variant));
  json["T"] = instance.num_times;
  if (instance.multigraph) json["multigraph"] = true;
  json["vertices"] = instance.vertices;
  Json edges = Json::array();
  for (const Edge& e : instance.edges) {
    Json edge;
    edge["u"] = instance.vertices[static_cast<std::size_t>(e.u)];
    edge["v"] = instance.vertices[static_cast<std::size_t>(e.v)];
    edge["w"] = to_string(e.weight);
    if (instance.variant != Variant::kNode) edge["times"] = e.times;
    edges.push_back(std::move(edge));
  }
  json["edges"] = std::move(edges);
  if (instance.variant != Variant::kEdge) {
    Json activity = Json::object();
    for (VertexId v = 0; v < instance.num_vertices(); ++v) {
      activity[instance.vertices[static_cast<std::size_t>(v)]] =
          instance.node_activity[static_cast<std::size_t>(v)];
    }
    json["node_activity"] = std::move(activity);
  }
  Json demands = Json::array();
  for (const Demand& d : instance.demands) {
    demands.push_back(Json{{"a", instance.vertices[static_cast<std::size_t>(d.a)]},
                           {"b", instance.vertices[static_cast<std::size_t>(d.b)]},
                           {"t", d.t}});
  }
  json["demands"] = std::move(demands);
  return json;
}

Json solution_to_json(const Solution& solution, bool feasible) {
  Json json;
  json["edges"] = solution.edges;
  json["cost"] = to_string(solution.cost);
  json["feasible"] = feasible;
  return json;
}

Json infeasible_solution_json() {
  Json json;
  json["edges"] = Json::array();
  json["feasible"] = false;
  return json;
}

Solution solution_from_json(const Json& json) {
  if (!json.is_object()) throw InputError("solution must be a JSON object");
  const Json& edges = require(json, "edges", "solution");
  if (!edges.is_array()) throw InputError("solution: 'edges' must be an array");
  Solution solution;
  for (const Json& e : edges) {
    if (!e.is_number_integer()) throw InputError("solution: edge ids must be integers");
    solution.edges.push_back(e.get<EdgeId>());
  }
  if (json.contains("cost") && !json.at("cost").is_null()) solution.cost = rational_from_json(json.at("cost"));
  return solution;
}

bool solution_claims_feasible(const Json& json) {
  return json.is_object() && json.contains("feasible") && json.at("feasible").is_boolean() &&
         json.at("feasible").get<bool>();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& json) {
  write_text_file(path, json.dump(2) + "\n");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace tsn
