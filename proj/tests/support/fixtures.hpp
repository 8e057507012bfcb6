#ifndef TSN_TESTS_FIXTURES_HPP_
#define TSN_TESTS_FIXTURES_HPP_

#include "tsn/instance.hpp"
#include "tsn/monotonic_reductions.hpp"
#include "tsn/random_instance.hpp"

namespace tsn::fixtures {

// Root a with direct edges of weight c - eps to b1..bk and a hub v reached
// at weight c that reaches every target for free. Demand (a, bi, i).
TemporalInstance hub_trap(int k, const Rational& c, const Rational& eps);

PriorityInstance random_priority_instance(Rng& rng, int vertices, int max_edges, int max_demands,
                                          int num_priorities);

}  // namespace tsn::fixtures

#endif  // TSN_TESTS_FIXTURES_HPP_
