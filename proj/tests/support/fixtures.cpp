#include "fixtures.hpp"

#include <string>

namespace tsn::fixtures {

TemporalInstance hub_trap(int k, const Rational& c, const Rational& eps) {
  InstanceBuilder builder(true, Variant::kEdge, k);
  const VertexId a = builder.vertex("a");
  const VertexId v = builder.vertex("v");
  const std::vector<Time> always = all_times(k);
  builder.add_edge(a, v, c, always);
  for (int i = 1; i <= k; ++i) {
    const VertexId b = builder.vertex("b" + std::to_string(i));
    builder.add_edge(a, b, c - eps, always);
    builder.add_edge(v, b, Rational(0), always);
    builder.add_demand(a, b, i);
  }
  return std::move(builder).build();
}

PriorityInstance random_priority_instance(Rng& rng, int vertices, int max_edges, int max_demands,
                                          int num_priorities) {
  PriorityInstance out;
  out.num_priorities = num_priorities;
  for (int v = 0; v < vertices; ++v) out.vertices.push_back("p" + std::to_string(v));
  const int m = rng.uniform(1, max_edges);
  for (int e = 0; e < m; ++e) {
    const int u = rng.uniform(0, vertices - 1);
    int v = rng.uniform(0, vertices - 2);
    if (v >= u) ++v;
    out.edges.push_back({u, v, Rational(rng.uniform(0, 6), 2), rng.uniform(1, num_priorities)});
  }
  const int k = rng.uniform(1, max_demands);
  for (int i = 0; i < k; ++i) {
    const int a = rng.uniform(0, vertices - 1);
    int b = rng.uniform(0, vertices - 2);
    if (b >= a) ++b;
    out.demands.push_back({a, b, rng.uniform(1, num_priorities)});
  }
  return out;
}

}  // namespace tsn::fixtures
