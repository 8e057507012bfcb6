#include "tsn/instance.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "tsn/errors.hpp"

namespace tsn {

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kEdge:
      return "edge";
    case Variant::kNode:
      return "node";
    case Variant::kNodeAndEdge:
      return "node_and_edge";
  }
  return "edge";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "edge") return Variant::kEdge;
  if (text == "node") return Variant::kNode;
  if (text == "node_and_edge") return Variant::kNodeAndEdge;
  return std::nullopt;
}

std::optional<VertexId> TemporalInstance::find_vertex(std::string_view name) const {
  const auto it = std::find(vertices.begin(), vertices.end(), name);
  if (it == vertices.end()) return std::nullopt;
  return static_cast<VertexId>(it - vertices.begin());
}

InstanceBuilder::InstanceBuilder(bool directed, Variant variant, Time num_times) {
  instance_.directed = directed;
  instance_.variant = variant;
  instance_.num_times = num_times;
}

VertexId InstanceBuilder::vertex(const std::string& name) {
  const auto [it, inserted] = index_.try_emplace(name, instance_.num_vertices());
  if (inserted) {
    instance_.vertices.push_back(name);
    if (instance_.variant != Variant::kEdge) instance_.node_activity.emplace_back();
  }
  return it->second;
}

std::string InstanceBuilder::fresh_name(const std::string& base) const {
  if (!has_vertex(base)) return base;
  for (int suffix = 1;; ++suffix) {
    std::string candidate = base + "~" + std::to_string(suffix);
    if (!has_vertex(candidate)) return candidate;
  }
}

EdgeId InstanceBuilder::add_edge(VertexId u, VertexId v, Rational weight, std::vector<Time> times) {
  normalize_times(times);
  instance_.edges.push_back(Edge{u, v, weight, std::move(times)});
  return instance_.num_edges() - 1;
}

void InstanceBuilder::set_activity(VertexId v, std::vector<Time> times) {
  if (instance_.variant == Variant::kEdge) {
    throw InputError("edge-variant instances carry no node activity");
  }
  normalize_times(times);
  instance_.node_activity.at(static_cast<std::size_t>(v)) = std::move(times);
}

void InstanceBuilder::add_demand(VertexId a, VertexId b, Time t) {
  instance_.demands.push_back(Demand{a, b, t});
}

TemporalInstance InstanceBuilder::build() && { return std::move(instance_); }

void normalize_times(std::vector<Time>& times) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
}

std::vector<Time> intersect_times(const std::vector<Time>& lhs, const std::vector<Time>& rhs) {
  std::vector<Time> out;
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
  return out;
}

std::vector<Time> all_times(Time num_times) {
  std::vector<Time> out;
  out.reserve(static_cast<std::size_t>(std::max<Time>(num_times, 0)));
  for (Time t = 1; t <= num_times; ++t) out.push_back(t);
  return out;
}

}  // namespace tsn
