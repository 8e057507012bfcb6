#include "tsn/random_instance.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tsn/errors.hpp"
#include "tsn/model.hpp"

namespace tsn {
namespace {

std::vector<Time> random_times(Rng& rng, Time num_times, bool monotonic) {
  if (monotonic) {
    std::vector<Time> out;
    for (Time t = static_cast<Time>(rng.uniform(1, num_times)); t <= num_times; ++t) out.push_back(t);
    return out;
  }
  std::vector<Time> out;
  while (out.empty()) {
    for (Time t = 1; t <= num_times; ++t) {
      if (rng.chance(1, 2)) out.push_back(t);
    }
  }
  return out;
}

}  // namespace

int Rng::uniform(int lo, int hi) {
  if (lo > hi) throw InputError("empty range in Rng::uniform");
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(x % span));
}

TemporalInstance random_instance(Rng& rng, const RandomOptions& options) {
  if (options.vertices < 2 || options.num_times < 1 || options.max_edges < 1 || options.max_demands < 1) {
    throw InputError("random instance options out of range");
  }
  InstanceBuilder builder(options.directed, options.variant, options.num_times);
  for (int v = 0; v < options.vertices; ++v) builder.vertex("n" + std::to_string(v));
  if (options.variant != Variant::kEdge) {
    for (VertexId v = 0; v < options.vertices; ++v) {
      builder.set_activity(v, random_times(rng, options.num_times, options.monotonic));
    }
  }

  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId u = 0; u < options.vertices; ++u) {
    for (VertexId v = 0; v < options.vertices; ++v) {
      if (u == v) continue;
      if ((!options.directed || options.acyclic) && u > v) continue;
      pairs.emplace_back(u, v);
    }
  }
  rng.shuffle(pairs);
  const int m = rng.uniform(1, std::min<int>(options.max_edges, static_cast<int>(pairs.size())));
  pairs.resize(static_cast<std::size_t>(m));
  std::sort(pairs.begin(), pairs.end());
  for (auto [u, v] : pairs) {
    if (!options.directed && rng.chance(1, 2)) std::swap(u, v);
    const Rational weight(rng.uniform(0, options.max_weight_halves), 2);
    std::vector<Time> times;
    if (options.variant != Variant::kNode) times = random_times(rng, options.num_times, options.monotonic);
    builder.add_edge(u, v, weight, std::move(times));
  }

  const int k = rng.uniform(1, options.max_demands);
  for (int i = 0; i < k; ++i) {
    const VertexId a = options.single_source ? 0 : static_cast<VertexId>(rng.uniform(0, options.vertices - 1));
    VertexId b = static_cast<VertexId>(rng.uniform(0, options.vertices - 2));
    if (b >= a) ++b;
    builder.add_demand(a, b, static_cast<Time>(rng.uniform(1, options.num_times)));
  }
  return std::move(builder).build();
}

TemporalInstance random_feasible_instance(Rng& rng, const RandomOptions& options) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    TemporalInstance instance = random_instance(rng, options);
    if (is_feasible(instance, all_edges(instance))) return instance;
  }
  throw InputError("could not draw a feasible random instance");
}

}  // namespace tsn
