#ifndef TSN_EXACT_HPP_
#define TSN_EXACT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "tsn/ilp.hpp"
#include "tsn/instance.hpp"
#include "tsn/variant_reductions.hpp"

namespace tsn {

struct ExactStats {
  std::int64_t nodes = 0;
  std::optional<Rational> root_bound;  // branch and bound only
};

struct ExactResult {
  Solution solution;
  ExactStats stats;
};

// The pipeline solve_bb runs before searching: node variant, antiparallel
// arcs for undirected input, then the common source/sink form. `edge_group`
// ties both arcs of an undirected edge to one decision.
struct SimpleForm {
  TemporalInstance instance;
  ReductionChain chain;
  std::vector<int> edge_group;
};
SimpleForm simple_form(const TemporalInstance& instance);

// Branch and bound over the d_uv of the flow program. Throws InfeasibleError
// when some demand is unreachable even with every edge.
ExactResult solve_bb(const TemporalInstance& instance);

// Exhaustive search over the positive-weight edges (zero-weight edges are
// free and always available). Returns the lexicographically smallest optimal
// set of positive-weight edges, plus the zero-weight edges it still needs.
// Throws InputError when more than `cap` edges have positive weight.
ExactResult brute_force(const TemporalInstance& instance, std::size_t cap);
ExactResult brute_force(const TemporalInstance& instance);

// 20, or the value of TSN_BRUTE_CAP when set.
std::size_t brute_force_cap();

}  // namespace tsn

#endif  // TSN_EXACT_HPP_
