#ifndef TSN_VARIANT_REDUCTIONS_HPP_
#define TSN_VARIANT_REDUCTIONS_HPP_

#include <memory>
#include <string_view>
#include <vector>

#include "tsn/instance.hpp"
#include "tsn/io.hpp"

namespace tsn {

enum class ReductionKind {
  kEmbed,           // edge or node -> node_and_edge, identity on solutions
  kNodeEdgeToNode,  // split (u,v) through x_(u,v) carrying the edge's times
  kNodeToEdge,      // edge times := tau(u) & tau(v)
  kToSimple,        // common source/sink, one demand per time
  kDirectize,       // undirected edge -> two antiparallel arcs
  kPriorityToTsn,   // priority levels become times; multiedges split
};

std::string_view to_string(ReductionKind kind);

// Correspondence between a source instance and its image. Each image edge is
// either listed under exactly one source edge or is a zero-weight auxiliary.
struct ReductionMap {
  ReductionKind kind = ReductionKind::kEmbed;
  std::vector<std::vector<EdgeId>> forward_edge_map;  // source edge -> image edges
  std::vector<EdgeId> auxiliary_edges;
  std::vector<VertexId> added_vertices;  // image ids
  std::vector<int> demand_map;           // source demand -> image demand
  std::vector<EdgeId> dropped_edges;     // source edges with no image
  // Absent for kPriorityToTsn, whose source is not a TemporalInstance.
  std::shared_ptr<const TemporalInstance> source;
  std::shared_ptr<const TemporalInstance> image;
};

struct Reduced {
  TemporalInstance instance;
  ReductionMap map;
};

Reduced embed_node_and_edge(const TemporalInstance& instance);
Reduced node_edge_to_node(const TemporalInstance& instance);
Reduced node_to_edge(const TemporalInstance& instance);
Reduced to_simple(const TemporalInstance& instance);
Reduced directize(const TemporalInstance& instance);

// Maps an image solution back. A source edge is kept when all of its image
// edges are selected (any of them, for kDirectize); auxiliaries and dropped
// edges never contribute. Throws InputError when the image solution is
// infeasible for the recorded image instance.
Solution lift_solution(const ReductionMap& map, const Solution& image_solution);

// A sequence of reductions applied left to right.
struct ReductionChain {
  std::vector<ReductionMap> steps;

  Solution lift(const Solution& image_solution) const;
  void append(ReductionMap map) { steps.push_back(std::move(map)); }
};

struct Normalized {
  TemporalInstance instance;
  ReductionChain chain;
};

// Chains the variant reductions to reach `target`.
Normalized normalize(const TemporalInstance& instance, Variant target);

Json to_json(const ReductionMap& map);
Json to_json(const ReductionChain& chain);

}  // namespace tsn

#endif  // TSN_VARIANT_REDUCTIONS_HPP_
