#ifndef TSN_ILP_HPP_
#define TSN_ILP_HPP_

#include <span>
#include <string>
#include <vector>

#include "tsn/instance.hpp"

namespace tsn {

struct LinearTerm {
  int var = 0;
  int coef = 0;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kEqual;
  int rhs = 0;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

// Minimisation over binary variables.
struct LinearProgram {
  std::vector<std::string> variables;
  std::vector<Rational> objective;  // one coefficient per variable
  std::vector<LinearConstraint> constraints;

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;
};

// Flow variable d_uvt: unit flow along arc (tail, head) in frame `time`.
struct FlowArc {
  VertexId tail = 0;
  VertexId head = 0;
  Time time = 1;
  int decision = 0;  // index of the owning d_uv
  EdgeId edge = 0;
  int variable = 0;  // index into program.variables
};

struct IlpModel {
  LinearProgram program;
  // Variables 0..num_decisions-1 are the d_uv; the rest are flow variables.
  int num_decisions = 0;
  std::vector<std::vector<EdgeId>> decision_edges;
  std::vector<Rational> decision_weight;
  std::vector<FlowArc> arcs;
  VertexId source = 0;
  VertexId sink = 0;
  Time num_times = 0;
  VertexId num_vertices = 0;
  // Row ranges by family, in emission order.
  std::size_t coupling_rows = 0;
  std::size_t conservation_rows = 0;
  std::size_t source_rows = 0;
  std::size_t sink_rows = 0;
};

// Flow program for a directed instance whose demands are exactly
// (a,b,1), ..., (a,b,k) with T = k. `edge_group` optionally ties several
// edges to one d_uv (all members must share a weight); empty means one
// decision per edge. Arcs entering a or leaving b carry no flow variable.
// Throws InputError on other demand shapes, InfeasibleError when some frame
// has no a->b path at all.
IlpModel build_ilp(const TemporalInstance& instance, std::span<const int> edge_group = {});

// Whether a 0/1 assignment (one entry per variable) meets every row.
bool satisfies_rows(const LinearProgram& program, std::span<const char> assignment);

}  // namespace tsn

#endif  // TSN_ILP_HPP_
