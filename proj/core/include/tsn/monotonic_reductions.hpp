#ifndef TSN_MONOTONIC_REDUCTIONS_HPP_
#define TSN_MONOTONIC_REDUCTIONS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsn/instance.hpp"
#include "tsn/io.hpp"
#include "tsn/model.hpp"
#include "tsn/variant_reductions.hpp"

namespace tsn {

// Undirected multigraph whose demands may only use edges of priority at most
// their own.
struct PriorityEdge {
  VertexId u = 0;
  VertexId v = 0;
  Rational weight{0};
  int priority = 1;
};

struct PriorityDemand {
  VertexId a = 0;
  VertexId b = 0;
  int priority = 1;
};

struct PriorityInstance {
  std::vector<std::string> vertices;
  std::vector<PriorityEdge> edges;
  std::vector<PriorityDemand> demands;
  int num_priorities = 1;
};

std::vector<Violation> validate(const PriorityInstance& instance);
bool priority_satisfies(const PriorityInstance& instance, std::span<const EdgeId> edges,
                        const PriorityDemand& demand);
bool priority_feasible(const PriorityInstance& instance, std::span<const EdgeId> edges);
Rational priority_cost(const PriorityInstance& instance, std::span<const EdgeId> edges);

// Undirected monotonic edge-variant instance -> priority instance. Edge
// priority is its first active time; a demand's priority is its time.
PriorityInstance tsn_to_priority(const TemporalInstance& instance);

// Priority p becomes active times p..P. Every member of a parallel group is
// split into two half-weight edges through a fresh midpoint.
Reduced priority_to_tsn(const PriorityInstance& instance);

// Contracts split edges; the result is checked against `source`.
Solution lift_priority_solution(const PriorityInstance& source, const ReductionMap& map,
                                const Solution& image_solution);

// Level graph for single-source monotonic directed instances. Level i holds
// a copy of frame t_(i), the i-th smallest demand time.
struct DstEdge {
  VertexId u = 0;
  VertexId v = 0;
  Rational weight{0};
  EdgeId origin = -1;  // -1 for the free level-advance edges
};

struct DstInstance {
  std::vector<std::string> vertices;
  std::vector<DstEdge> edges;
  VertexId root = 0;
  std::vector<VertexId> terminals;
  std::vector<int> terminal_demand;   // original demand index per terminal
  std::vector<VertexId> origin_vertex;  // per level-graph vertex
  std::vector<int> level;               // per level-graph vertex, 1-based
  int num_levels = 0;
};

DstInstance single_source_to_dst(const TemporalInstance& instance);
bool dst_feasible(const DstInstance& dst, std::span<const EdgeId> edges);
Rational dst_cost(const DstInstance& dst, std::span<const EdgeId> edges);
// Projects level edges onto original edges, dropping the free edges and
// collapsing duplicates. Throws InputError if `edges` misses a terminal.
Solution dst_solution_to_tsn(const DstInstance& dst, std::span<const EdgeId> edges);

// For each edge of the solution (same order): the smallest demand time whose
// demand breaks when that edge alone is removed; nullopt if none breaks.
std::vector<std::optional<Time>> earliest_necessary_times(const TemporalInstance& instance,
                                                          const Solution& solution);

// Prunes a feasible single-source monotonic solution to an arborescence
// rooted at the source whose earliest necessary times never decrease along
// root paths. Never increases cost.
Solution normalize_to_time_layered_tree(const TemporalInstance& instance, const Solution& solution);

// The shape predicate the normalization guarantees.
bool is_time_layered_tree(const TemporalInstance& instance, const Solution& solution);

// Single source shared by all demands, or nullopt.
std::optional<VertexId> common_source(const TemporalInstance& instance);

Json to_json(const PriorityInstance& instance);
PriorityInstance priority_from_json(const Json& json);
Json to_json(const DstInstance& dst);

}  // namespace tsn

#endif  // TSN_MONOTONIC_REDUCTIONS_HPP_
