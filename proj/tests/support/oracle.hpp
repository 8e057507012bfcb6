#ifndef TSN_TESTS_ORACLE_HPP_
#define TSN_TESTS_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "tsn/instance.hpp"
#include "tsn/monotonic_reductions.hpp"

// Reference implementations that share no code with the library beyond the
// plain data types. Subsets are bitmasks over edge ids.
namespace tsn::oracle {

bool active(const TemporalInstance& instance, EdgeId e, Time t);
bool meets(const TemporalInstance& instance, std::uint64_t mask, const Demand& demand);
bool feasible(const TemporalInstance& instance, std::uint64_t mask);
Rational cost(const TemporalInstance& instance, std::uint64_t mask);
std::uint64_t mask_of(const std::vector<EdgeId>& edges);

// Minimum over every subset of positive-weight edges, zero-weight edges
// always present. nullopt when infeasible.
std::optional<Rational> optimum(const TemporalInstance& instance);

// Every feasible subset of all edges, in increasing mask order.
std::vector<std::uint64_t> feasible_sets(const TemporalInstance& instance);

std::optional<Rational> priority_optimum(const PriorityInstance& instance);
std::optional<Rational> dst_optimum(const DstInstance& dst, std::uint64_t* best_mask = nullptr);

// Minimum t over demands that break when edge e leaves the mask.
std::optional<Time> necessary_time(const TemporalInstance& instance, std::uint64_t mask, EdgeId e);

}  // namespace tsn::oracle

#endif  // TSN_TESTS_ORACLE_HPP_
