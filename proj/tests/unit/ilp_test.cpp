#include <gtest/gtest.h>

#include "tsn/errors.hpp"
#include "tsn/exact.hpp"
#include "tsn/hardness_gen.hpp"
#include "tsn/ilp.hpp"
#include "tsn/lp_format.hpp"
#include "tsn/model.hpp"
#include "tsn/random_instance.hpp"

namespace tsn {
namespace {

TemporalInstance single_edge() {
  InstanceBuilder b(true, Variant::kEdge, 1);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(3), {1});
  b.add_demand(a, c, 1);
  return std::move(b).build();
}

TEST(BuildIlp, SingleEdgeForcesBothVariables) {
  const IlpModel m = build_ilp(single_edge());
  ASSERT_EQ(m.program.variables.size(), 2u);
  EXPECT_EQ(m.program.objective[0], Rational(3));
  EXPECT_EQ(m.coupling_rows, 1u);
  int satisfying = 0;
  for (int bits = 0; bits < 4; ++bits) {
    const std::vector<char> x = {static_cast<char>(bits & 1), static_cast<char>(bits >> 1 & 1)};
    if (satisfies_rows(m.program, x)) {
      ++satisfying;
      EXPECT_EQ(bits, 3);
    }
  }
  EXPECT_EQ(satisfying, 1);
}

TEST(BuildIlp, MiddleVertexConservation) {
  InstanceBuilder b(true, Variant::kEdge, 1);
  const VertexId a = b.vertex("a");
  const VertexId x = b.vertex("x");
  const VertexId c = b.vertex("b");
  b.add_edge(a, x, Rational(1), {1});
  b.add_edge(x, c, Rational(1), {1});
  b.add_demand(a, c, 1);
  const IlpModel m = build_ilp(std::move(b).build());
  ASSERT_EQ(m.conservation_rows, 1u);
  const LinearConstraint* row = nullptr;
  for (const auto& r : m.program.constraints) {
    if (r.name.rfind("flow_", 0) == 0) row = &r;
  }
  ASSERT_NE(row, nullptr);
  EXPECT_EQ(row->sense, Sense::kEqual);
  EXPECT_EQ(row->terms.size(), 2u);
  EXPECT_EQ(row->terms[0].coef + row->terms[1].coef, 0);
}

TEST(BuildIlp, VariableCount) {
  Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    RandomOptions o;
    o.variant = Variant::kNode;
    const SimpleForm form = simple_form(random_feasible_instance(rng, o));
    const IlpModel m = build_ilp(form.instance);
    std::size_t arcs = 0;
    for (Time t = 1; t <= form.instance.num_times; ++t) {
      for (EdgeId e = 0; e < form.instance.num_edges(); ++e) {
        const Edge& edge = form.instance.edges[static_cast<std::size_t>(e)];
        if (edge_active(form.instance, e, t) && edge.v != m.source && edge.u != m.sink) ++arcs;
      }
    }
    EXPECT_EQ(m.program.variables.size(), form.instance.edges.size() + arcs);
  }
}

TEST(BuildIlp, RejectsNonSimpleInput) {
  InstanceBuilder b(true, Variant::kEdge, 2);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_edge(a, c, Rational(1), {1});
  b.add_demand(a, c, 2);
  EXPECT_THROW(build_ilp(std::move(b).build()), InputError);
}

TEST(BuildIlp, UnreachableFrameIsInfeasible) {
  InstanceBuilder b(true, Variant::kEdge, 1);
  const VertexId a = b.vertex("a");
  const VertexId c = b.vertex("b");
  b.add_demand(a, c, 1);
  EXPECT_THROW(build_ilp(std::move(b).build()), InfeasibleError);
}

TEST(EmitLp, SingleEdgeBody) {
  const std::string text = emit_lp(build_ilp(single_edge()));
  EXPECT_NE(text.find("Minimize\n obj: 3 d_a_b + 0 d_a_b_1\n"), std::string::npos);
  EXPECT_NE(text.find(" couple_0: d_a_b - d_a_b_1 >= 0\n"), std::string::npos);
  EXPECT_NE(text.find(" source_t1: d_a_b_1 = 1\n"), std::string::npos);
  EXPECT_NE(text.find(" sink_t1: d_a_b_1 = 1\n"), std::string::npos);
  EXPECT_NE(text.find("Binary\n d_a_b d_a_b_1\nEnd\n"), std::string::npos);
}

TEST(EmitLp, RoundTrip) {
  Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    RandomOptions o;
    o.directed = rng.chance(1, 2);
    o.variant = static_cast<Variant>(rng.uniform(0, 2));
    const SimpleForm form = simple_form(random_feasible_instance(rng, o));
    const IlpModel m = build_ilp(form.instance, form.edge_group);
    EXPECT_EQ(parse_lp(emit_lp(m)), m.program);
  }
}

TEST(EmitLp, Example1RoundTripsWithLongNames) {
  const GadgetInstance g = lc_to_2dtsn(example1_label_cover());
  const SimpleForm form = simple_form(g.instance);
  const IlpModel m = build_ilp(form.instance, form.edge_group);
  const std::string text = emit_lp(m);
  EXPECT_EQ(parse_lp(text), m.program);
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    EXPECT_LE(end - start, 78u);
    start = end + 1;
  }
}

TEST(ParseLp, RejectsGarbage) { EXPECT_THROW(parse_lp("Maximize\n"), InputError); }

}  // namespace
}  // namespace tsn
