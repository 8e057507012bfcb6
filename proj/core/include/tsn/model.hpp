#ifndef TSN_MODEL_HPP_
#define TSN_MODEL_HPP_

#include <span>
#include <string>
#include <vector>

#include "tsn/instance.hpp"

namespace tsn {

struct Violation {
  std::string element;  // e.g. "edge 3", "demand 0", "vertex x"
  std::string message;
};

// Empty iff the instance is well formed. Parallel edges are reported unless
// the instance carries the multigraph flag.
std::vector<Violation> validate(const TemporalInstance& instance);

bool vertex_active(const TemporalInstance& instance, VertexId v, Time t);
// Whether edge e exists in frame t, honouring the variant semantics.
bool edge_active(const TemporalInstance& instance, EdgeId e, Time t);
std::vector<Time> effective_times(const TemporalInstance& instance, EdgeId e);

struct Frame {
  Time t = 1;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

// The static graph G_t. Throws InputError when t is outside [1, T].
Frame frame(const TemporalInstance& instance, Time t);

// Builds a solution from an arbitrary edge list: sorts, deduplicates, and
// recomputes the cost. Throws InputError on unknown edge ids.
Solution make_solution(const TemporalInstance& instance, std::vector<EdgeId> edges);
Rational solution_cost(const TemporalInstance& instance, const Solution& solution);

bool satisfies(const TemporalInstance& instance, const Solution& solution, const Demand& demand);
bool is_feasible(const TemporalInstance& instance, const Solution& solution);
Solution all_edges(const TemporalInstance& instance);

// Active-time sets are upward closed.
bool is_monotonic(const TemporalInstance& instance);
// Directed instances only; throws InputError for undirected ones.
bool is_acyclic(const TemporalInstance& instance);

// Per-frame adjacency, built once, for repeated reachability queries under
// different edge masks. Undirected edges yield an arc in each direction.
class FrameIndex {
 public:
  struct Arc {
    VertexId to;
    EdgeId edge;
  };

  explicit FrameIndex(const TemporalInstance& instance);

  std::span<const Arc> out(Time t, VertexId v) const;
  std::span<const EdgeId> edges_at(Time t) const;

  // `selected` has one entry per edge; empty means "all edges".
  bool reachable(Time t, VertexId from, VertexId to, std::span<const char> selected) const;
  bool satisfies(const Demand& demand, std::span<const char> selected) const;
  bool all_satisfied(std::span<const Demand> demands, std::span<const char> selected) const;

  VertexId num_vertices() const { return num_vertices_; }
  Time num_times() const { return num_times_; }

 private:
  VertexId num_vertices_;
  Time num_times_;
  // offsets_[t-1][v] .. offsets_[t-1][v+1] index into arcs_[t-1].
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<std::vector<EdgeId>> frame_edges_;
};

std::vector<char> edge_mask(const TemporalInstance& instance, std::span<const EdgeId> edges);

// Drops zero-weight edges (highest index first) whenever the remaining set
// stays feasible. The cost is unchanged.
Solution prune_zero_weight(const TemporalInstance& instance, Solution solution);

}  // namespace tsn

#endif  // TSN_MODEL_HPP_
