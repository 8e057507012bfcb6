#include "tsn/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>
#include <string>

#include "tsn/errors.hpp"
#include "tsn/model.hpp"

namespace tsn {
namespace {

void require_valid(const TemporalInstance& instance) {
  if (const auto violations = validate(instance); !violations.empty()) {
    throw InputError("invalid instance: " + violations.front().element + ": " + violations.front().message);
  }
}

// Throws InfeasibleError naming the first demand that fails with every edge.
void require_feasible(const TemporalInstance& instance, const FrameIndex& index) {
  for (std::size_t i = 0; i < instance.demands.size(); ++i) {
    if (!index.satisfies(instance.demands[i], {})) {
      throw InfeasibleError("demand " + std::to_string(i) + " has no path in its frame", static_cast<int>(i));
    }
  }
}

bool has_nontrivial_demand(const TemporalInstance& instance) {
  return std::any_of(instance.demands.begin(), instance.demands.end(),
                     [](const Demand& d) { return !is_trivial(d); });
}

enum class Status : char { kUndecided, kIn, kOut };

class BranchAndBound {
 public:
  explicit BranchAndBound(const IlpModel& model) : model_(model), status_(model.num_decisions, Status::kUndecided) {
    by_time_.resize(static_cast<std::size_t>(model.num_times));
    frames_of_.assign(static_cast<std::size_t>(model.num_decisions), 0);
    std::vector<std::vector<char>> seen(static_cast<std::size_t>(model.num_decisions),
                                        std::vector<char>(static_cast<std::size_t>(model.num_times), 0));
    for (const FlowArc& arc : model.arcs) {
      by_time_[static_cast<std::size_t>(arc.time - 1)].push_back(&arc);
      auto& mark = seen[static_cast<std::size_t>(arc.decision)][static_cast<std::size_t>(arc.time - 1)];
      if (!mark) {
        mark = 1;
        ++frames_of_[static_cast<std::size_t>(arc.decision)];
      }
    }
    for (int d = 0; d < model.num_decisions; ++d) {
      if (model.decision_weight[static_cast<std::size_t>(d)] == Rational(0)) status_[static_cast<std::size_t>(d)] = Status::kIn;
    }
  }

  void run() { visit(); }

  const std::optional<std::vector<int>>& best() const { return best_; }
  const Rational& best_cost() const { return best_cost_; }
  const ExactStats& stats() const { return stats_; }

 private:
  // Cheapest completion of frame t: included arcs are free, undecided arcs
  // cost their weight, excluded arcs are absent. nullopt when unreachable.
  std::optional<Rational> completion(Time t) const {
    const auto n = static_cast<std::size_t>(model_.num_vertices);
    std::vector<std::optional<Rational>> dist(n);
    std::vector<char> done(n, 0);
    using Entry = std::pair<Rational, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[static_cast<std::size_t>(model_.source)] = Rational(0);
    queue.emplace(Rational(0), model_.source);
    const auto& arcs = by_time_[static_cast<std::size_t>(t - 1)];
    while (!queue.empty()) {
      const auto [d, x] = queue.top();
      queue.pop();
      if (done[static_cast<std::size_t>(x)]) continue;
      if (x == model_.sink) return d;
      done[static_cast<std::size_t>(x)] = 1;
      for (const FlowArc* arc : arcs) {
        if (arc->tail != x) continue;
        const Status s = status_[static_cast<std::size_t>(arc->decision)];
        if (s == Status::kOut) continue;
        const Rational next = d + (s == Status::kIn ? Rational(0) : model_.decision_weight[static_cast<std::size_t>(arc->decision)]);
        auto& slot = dist[static_cast<std::size_t>(arc->head)];
        if (slot && *slot <= next) continue;
        slot = next;
        queue.emplace(next, arc->head);
      }
    }
    return std::nullopt;
  }

  Rational included_cost() const {
    Rational cost(0);
    for (int d = 0; d < model_.num_decisions; ++d) {
      if (status_[static_cast<std::size_t>(d)] == Status::kIn) cost += model_.decision_weight[static_cast<std::size_t>(d)];
    }
    return cost;
  }

  void visit() {
    ++stats_.nodes;
    const Rational base = included_cost();
    Rational extra(0);
    bool satisfied = true;
    for (Time t = 1; t <= model_.num_times; ++t) {
      const auto c = completion(t);
      if (!c) return;
      if (*c > 0) satisfied = false;
      extra = std::max(extra, *c);
    }
    // Undecided arcs all have positive weight, so a free completion runs over
    // included arcs only.
    const Rational bound = base + extra;
    if (!stats_.root_bound) stats_.root_bound = bound;
    if (best_ && bound >= best_cost_) return;
    if (satisfied) {
      best_cost_ = base;
      best_.emplace();
      for (int d = 0; d < model_.num_decisions; ++d) {
        if (status_[static_cast<std::size_t>(d)] == Status::kIn) best_->push_back(d);
      }
      return;
    }
    int pick = -1;
    for (int d = 0; d < model_.num_decisions; ++d) {
      if (status_[static_cast<std::size_t>(d)] != Status::kUndecided) continue;
      if (pick < 0) {
        pick = d;
        continue;
      }
      const Rational& w = model_.decision_weight[static_cast<std::size_t>(d)];
      const Rational& wp = model_.decision_weight[static_cast<std::size_t>(pick)];
      if (w > wp || (w == wp && frames_of_[static_cast<std::size_t>(d)] > frames_of_[static_cast<std::size_t>(pick)])) {
        pick = d;
      }
    }
    if (pick < 0) return;
    auto& slot = status_[static_cast<std::size_t>(pick)];
    slot = Status::kIn;
    visit();
    slot = Status::kOut;
    visit();
    slot = Status::kUndecided;
  }

  const IlpModel& model_;
  std::vector<Status> status_;
  std::vector<std::vector<const FlowArc*>> by_time_;
  std::vector<int> frames_of_;
  std::optional<std::vector<int>> best_;
  Rational best_cost_{0};
  ExactStats stats_;
};

class Exhaustive {
 public:
  Exhaustive(const TemporalInstance& instance, const FrameIndex& index, std::vector<EdgeId> positive)
      : instance_(instance), index_(index), positive_(std::move(positive)) {
    mask_.assign(instance.edges.size(), 0);
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      if (instance.edges[static_cast<std::size_t>(e)].weight == Rational(0)) mask_[static_cast<std::size_t>(e)] = 1;
    }
  }

  Rational optimum() {
    include_first_ = false;
    limit_.reset();
    search(0, Rational(0));
    if (!limit_) throw InvariantError("exhaustive search found no feasible subset");
    return *limit_;
  }

  std::vector<EdgeId> first_optimal(const Rational& optimum) {
    include_first_ = true;
    limit_ = optimum;
    found_ = false;
    search(0, Rational(0));
    if (!found_) throw InvariantError("exhaustive search lost the optimum");
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < instance_.num_edges(); ++e) {
      if (hit_[static_cast<std::size_t>(e)]) out.push_back(e);
    }
    return out;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  bool feasible_with_rest(std::size_t pos) {
    for (std::size_t i = pos; i < positive_.size(); ++i) mask_[static_cast<std::size_t>(positive_[i])] = 1;
    const bool ok = index_.all_satisfied(instance_.demands, mask_);
    for (std::size_t i = pos; i < positive_.size(); ++i) mask_[static_cast<std::size_t>(positive_[i])] = 0;
    return ok;
  }

  // Pass one (exclude first) tightens limit_ to the optimum; pass two
  // (include first, limit fixed) stops at the first subset costing limit_.
  bool search(std::size_t pos, const Rational& cost) {
    ++nodes_;
    if (include_first_ ? cost > *limit_ : (limit_ && cost >= *limit_)) return false;
    if (index_.all_satisfied(instance_.demands, mask_)) {
      if (include_first_) {
        hit_ = mask_;
        found_ = true;
        return true;
      }
      limit_ = cost;
      return false;
    }
    if (pos == positive_.size() || !feasible_with_rest(pos)) return false;
    const auto e = static_cast<std::size_t>(positive_[pos]);
    const Rational with = cost + instance_.edges[e].weight;
    for (int branch = 0; branch < 2; ++branch) {
      const bool take = include_first_ ? branch == 0 : branch == 1;
      mask_[e] = take ? 1 : 0;
      const bool done = search(pos + 1, take ? with : cost);
      mask_[e] = 0;
      if (done) return true;
    }
    return false;
  }

  const TemporalInstance& instance_;
  const FrameIndex& index_;
  std::vector<EdgeId> positive_;
  std::vector<char> mask_;
  std::vector<char> hit_;
  bool include_first_ = false;
  bool found_ = false;
  std::optional<Rational> limit_;
  std::int64_t nodes_ = 0;
};

}  // namespace

SimpleForm simple_form(const TemporalInstance& instance) {
  Normalized normalized = normalize(instance, Variant::kNode);
  SimpleForm out{std::move(normalized.instance), std::move(normalized.chain), {}};
  std::vector<int> group;
  if (!out.instance.directed) {
    Reduced arcs = directize(out.instance);
    group.resize(arcs.instance.edges.size());
    for (std::size_t e = 0; e < arcs.map.forward_edge_map.size(); ++e) {
      for (EdgeId arc : arcs.map.forward_edge_map[e]) group[static_cast<std::size_t>(arc)] = static_cast<int>(e);
    }
    out.instance = std::move(arcs.instance);
    out.chain.append(std::move(arcs.map));
  } else {
    for (EdgeId e = 0; e < out.instance.num_edges(); ++e) group.push_back(e);
  }
  Reduced simple = to_simple(out.instance);
  out.edge_group.assign(simple.instance.edges.size(), -1);
  for (std::size_t e = 0; e < simple.map.forward_edge_map.size(); ++e) {
    for (EdgeId image : simple.map.forward_edge_map[e]) out.edge_group[static_cast<std::size_t>(image)] = group[e];
  }
  int next = group.empty() ? 0 : *std::max_element(group.begin(), group.end()) + 1;
  for (int& g : out.edge_group) {
    if (g < 0) g = next++;
  }
  out.instance = std::move(simple.instance);
  out.chain.append(std::move(simple.map));
  return out;
}

ExactResult solve_bb(const TemporalInstance& instance) {
  require_valid(instance);
  ExactResult result;
  result.solution = make_solution(instance, {});
  if (!has_nontrivial_demand(instance)) return result;
  require_feasible(instance, FrameIndex(instance));

  const SimpleForm form = simple_form(instance);
  const IlpModel model = build_ilp(form.instance, form.edge_group);
  BranchAndBound search(model);
  search.run();
  result.stats = search.stats();
  if (!search.best()) throw InvariantError("branch and bound found no solution on a feasible instance");

  std::vector<EdgeId> image_edges;
  for (int d : *search.best()) {
    const auto& members = model.decision_edges[static_cast<std::size_t>(d)];
    image_edges.insert(image_edges.end(), members.begin(), members.end());
  }
  const Solution image = make_solution(form.instance, std::move(image_edges));
  Solution lifted = prune_zero_weight(instance, form.chain.lift(image));
  if (lifted.cost != search.best_cost()) throw InvariantError("lifted cost differs from the search optimum");
  if (!is_feasible(instance, lifted)) throw InvariantError("branch and bound returned an infeasible solution");
  result.solution = std::move(lifted);
  return result;
}

std::size_t brute_force_cap() {
  const char* text = std::getenv("TSN_BRUTE_CAP");
  if (!text || !*text) return 20;
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != std::string(text).size() || value < 0) throw std::invalid_argument(text);
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    throw InputError(std::string("TSN_BRUTE_CAP is not a non-negative integer: ") + text);
  }
}

ExactResult brute_force(const TemporalInstance& instance) { return brute_force(instance, brute_force_cap()); }

ExactResult brute_force(const TemporalInstance& instance, std::size_t cap) {
  require_valid(instance);
  ExactResult result;
  result.solution = make_solution(instance, {});
  if (!has_nontrivial_demand(instance)) return result;
  const FrameIndex index(instance);
  require_feasible(instance, index);

  std::vector<EdgeId> positive;
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    if (instance.edges[static_cast<std::size_t>(e)].weight > Rational(0)) positive.push_back(e);
  }
  if (positive.size() > cap) {
    throw InputError("brute force cap exceeded: " + std::to_string(positive.size()) +
                     " positive-weight edges, cap " + std::to_string(cap));
  }
  Exhaustive search(instance, index, std::move(positive));
  const Rational optimum = search.optimum();
  Solution solution = make_solution(instance, search.first_optimal(optimum));
  solution = prune_zero_weight(instance, std::move(solution));
  if (solution.cost != optimum || !is_feasible(instance, solution)) {
    throw InvariantError("brute force produced an inconsistent optimum");
  }
  result.solution = std::move(solution);
  result.stats.nodes = search.nodes();
  return result;
}

}  // namespace tsn
