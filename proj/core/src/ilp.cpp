#include "tsn/ilp.hpp"

#include <map>
#include <set>

#include "tsn/errors.hpp"
#include "tsn/model.hpp"

namespace tsn {
namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    out.push_back(keep ? c : '_');
  }
  return out;
}

class Namer {
 public:
  std::string take(const std::string& base) {
    std::string name = base;
    for (int n = 2; used_.count(name); ++n) name = base + "." + std::to_string(n);
    used_.insert(name);
    return name;
  }

 private:
  std::set<std::string> used_;
};

}  // namespace

IlpModel build_ilp(const TemporalInstance& instance, std::span<const int> edge_group) {
  if (!instance.directed) throw InputError("build_ilp expects a directed instance");
  const auto k = static_cast<Time>(instance.demands.size());
  if (k == 0) throw InputError("build_ilp expects at least one demand");
  const Demand& first = instance.demands.front();
  if (first.a == first.b) throw InputError("build_ilp expects distinct source and sink");
  for (Time i = 0; i < k; ++i) {
    const Demand& d = instance.demands[static_cast<std::size_t>(i)];
    if (d.a != first.a || d.b != first.b || d.t != i + 1) {
      throw InputError("build_ilp expects demands (a,b,1), ..., (a,b,k)");
    }
  }
  if (instance.num_times != k) throw InputError("build_ilp expects T = k");
  if (!edge_group.empty() && edge_group.size() != instance.edges.size()) {
    throw InputError("edge_group must have one entry per edge");
  }

  const FrameIndex index(instance);
  for (Time t = 1; t <= k; ++t) {
    if (!index.reachable(t, first.a, first.b, {})) {
      throw InfeasibleError("demand " + std::to_string(t - 1) + " has no path in its frame", t - 1);
    }
  }

  IlpModel model;
  model.source = first.a;
  model.sink = first.b;
  model.num_times = k;
  model.num_vertices = instance.num_vertices();
  LinearProgram& program = model.program;
  Namer namer;
  const auto vname = [&](VertexId v) { return sanitize(instance.vertices[static_cast<std::size_t>(v)]); };

  std::vector<int> decision_of(instance.edges.size());
  std::map<int, int> group_decision;
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
    const int group = edge_group.empty() ? e : edge_group[static_cast<std::size_t>(e)];
    const auto [it, fresh] = group_decision.emplace(group, model.num_decisions);
    decision_of[static_cast<std::size_t>(e)] = it->second;
    if (fresh) {
      ++model.num_decisions;
      model.decision_edges.push_back({e});
      model.decision_weight.push_back(edge.weight);
      program.variables.push_back(namer.take("d_" + vname(edge.u) + "_" + vname(edge.v)));
      program.objective.push_back(edge.weight);
    } else {
      if (model.decision_weight[static_cast<std::size_t>(it->second)] != edge.weight) {
        throw InputError("grouped edges must share a weight");
      }
      model.decision_edges[static_cast<std::size_t>(it->second)].push_back(e);
    }
  }

  for (Time t = 1; t <= k; ++t) {
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      if (!edge_active(instance, e, t)) continue;
      const Edge& edge = instance.edges[static_cast<std::size_t>(e)];
      if (edge.v == model.source || edge.u == model.sink) continue;
      FlowArc arc{edge.u, edge.v, t, decision_of[static_cast<std::size_t>(e)], e,
                  static_cast<int>(program.variables.size())};
      program.variables.push_back(
          namer.take("d_" + vname(edge.u) + "_" + vname(edge.v) + "_" + std::to_string(t)));
      program.objective.push_back(Rational(0));
      model.arcs.push_back(arc);
    }
  }

  for (std::size_t j = 0; j < model.arcs.size(); ++j) {
    const FlowArc& arc = model.arcs[j];
    program.constraints.push_back({"couple_" + std::to_string(j),
                                   {{arc.decision, 1}, {arc.variable, -1}},
                                   Sense::kGreaterEqual,
                                   0});
  }
  model.coupling_rows = model.arcs.size();

  for (Time t = 1; t <= k; ++t) {
    for (VertexId v = 0; v < model.num_vertices; ++v) {
      if (v == model.source || v == model.sink) continue;
      LinearConstraint row{"flow_t" + std::to_string(t) + "_v" + std::to_string(v), {}, Sense::kEqual, 0};
      for (const FlowArc& arc : model.arcs) {
        if (arc.time != t) continue;
        if (arc.head == v) row.terms.push_back({arc.variable, 1});
        if (arc.tail == v) row.terms.push_back({arc.variable, -1});
      }
      if (row.terms.empty()) continue;
      program.constraints.push_back(std::move(row));
      ++model.conservation_rows;
    }
  }

  for (int pass = 0; pass < 2; ++pass) {
    for (Time t = 1; t <= k; ++t) {
      LinearConstraint row{(pass == 0 ? "source_t" : "sink_t") + std::to_string(t), {}, Sense::kEqual, 1};
      for (const FlowArc& arc : model.arcs) {
        if (arc.time != t) continue;
        if (pass == 0 ? arc.tail == model.source : arc.head == model.sink) row.terms.push_back({arc.variable, 1});
      }
      program.constraints.push_back(std::move(row));
    }
  }
  model.source_rows = static_cast<std::size_t>(k);
  model.sink_rows = static_cast<std::size_t>(k);
  return model;
}

bool satisfies_rows(const LinearProgram& program, std::span<const char> assignment) {
  if (assignment.size() != program.variables.size()) throw InputError("assignment size mismatch");
  for (const LinearConstraint& row : program.constraints) {
    long long lhs = 0;
    for (const LinearTerm& term : row.terms) {
      lhs += static_cast<long long>(term.coef) * (assignment[static_cast<std::size_t>(term.var)] ? 1 : 0);
    }
    const bool ok = row.sense == Sense::kEqual          ? lhs == row.rhs
                    : row.sense == Sense::kGreaterEqual ? lhs >= row.rhs
                                                        : lhs <= row.rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace tsn
