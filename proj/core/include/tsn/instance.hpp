#ifndef TSN_INSTANCE_HPP_
#define TSN_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsn/rational.hpp"

namespace tsn {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Time = std::int32_t;

// Which graph elements carry the activity schedule.
enum class Variant { kEdge, kNode, kNodeAndEdge };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view text);

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational weight{0};
  // Sorted, duplicate free. Ignored for Variant::kNode, where activity is
  // derived from the endpoints.
  std::vector<Time> times;
};

struct Demand {
  VertexId a = 0;
  VertexId b = 0;
  Time t = 1;

  friend bool operator==(const Demand&, const Demand&) = default;
};

// A demand whose endpoints coincide is met by the empty path.
inline bool is_trivial(const Demand& d) { return d.a == d.b; }

// Frames G_1..G_T over one vertex set. Immutable once built; every
// operation in the library takes instances by const reference.
struct TemporalInstance {
  bool directed = true;
  Variant variant = Variant::kEdge;
  Time num_times = 1;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  // One sorted time list per vertex for node variants, empty otherwise.
  std::vector<std::vector<Time>> node_activity;
  std::vector<Demand> demands;
  // Set only by reductions that may transiently emit parallel edges.
  bool multigraph = false;

  VertexId num_vertices() const { return static_cast<VertexId>(vertices.size()); }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges.size()); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
};

// Edge subset of the underlying graph plus its cost.
struct Solution {
  std::vector<EdgeId> edges;  // sorted, unique
  Rational cost{0};

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Incremental construction with name lookup.
class InstanceBuilder {
 public:
  InstanceBuilder(bool directed, Variant variant, Time num_times);

  // Returns the existing id when the name is already known.
  VertexId vertex(const std::string& name);
  bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }
  // `base`, or `base` with a numeric suffix, whichever is unused.
  std::string fresh_name(const std::string& base) const;

  EdgeId add_edge(VertexId u, VertexId v, Rational weight, std::vector<Time> times);
  void set_activity(VertexId v, std::vector<Time> times);
  void add_demand(VertexId a, VertexId b, Time t);

  TemporalInstance& instance() { return instance_; }
  TemporalInstance build() &&;

 private:
  TemporalInstance instance_;
  std::unordered_map<std::string, VertexId> index_;
};

// Sorts and deduplicates a time list in place.
void normalize_times(std::vector<Time>& times);
std::vector<Time> intersect_times(const std::vector<Time>& lhs, const std::vector<Time>& rhs);
std::vector<Time> all_times(Time num_times);

}  // namespace tsn

#endif  // TSN_INSTANCE_HPP_
