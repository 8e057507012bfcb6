#ifndef TSN_RANDOM_INSTANCE_HPP_
#define TSN_RANDOM_INSTANCE_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "tsn/instance.hpp"

namespace tsn {

// Seeded generator with draws defined here rather than by the standard
// distributions, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [lo, hi]; requires lo <= hi.
  int uniform(int lo, int hi);
  bool chance(int numerator, int denominator) { return uniform(1, denominator) <= numerator; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(uniform(0, static_cast<int>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomOptions {
  int vertices = 4;
  int max_edges = 6;
  int max_demands = 3;
  Time num_times = 3;
  bool directed = true;
  Variant variant = Variant::kEdge;
  bool monotonic = false;
  // Every demand starts at vertex 0.
  bool single_source = false;
  // Directed edges point from lower to higher vertex index.
  bool acyclic = false;
  // Weights are drawn from {0, 1/2, 1, ..., max_weight_halves/2}.
  int max_weight_halves = 6;
};

TemporalInstance random_instance(Rng& rng, const RandomOptions& options);
// Redraws until every demand is reachable with all edges kept.
TemporalInstance random_feasible_instance(Rng& rng, const RandomOptions& options);

}  // namespace tsn

#endif  // TSN_RANDOM_INSTANCE_HPP_
