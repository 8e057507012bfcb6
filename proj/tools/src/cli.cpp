#include "tsn_cli/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>

#include "tsn/approx.hpp"
#include "tsn/errors.hpp"
#include "tsn/exact.hpp"
#include "tsn/hardness_gen.hpp"
#include "tsn/io.hpp"
#include "tsn/lp_format.hpp"
#include "tsn/model.hpp"
#include "tsn/monotonic_reductions.hpp"
#include "tsn/random_instance.hpp"
#include "tsn/variant_reductions.hpp"

namespace tsn::cli {
namespace {

using Clock = std::chrono::steady_clock;

struct GenOptions {
  std::string kind = "example1";
  int k = 3;
  std::uint64_t seed = 1;
  int left = 2;
  int right = 2;
  int degree = 1;
  int labels = 2;
  int edges = 1;
  int part_size = 1;
  bool undirected = false;
  // Random instances only.
  int vertices = 4;
  int demands = 3;
  int times = 3;
  bool monotonic = false;
  bool single_source = false;
};

struct Generated {
  TemporalInstance instance;
  std::optional<Json> trace;
  std::optional<Json> source;
};

Json digest(const TemporalInstance& instance) {
  Json json{{"vertices", instance.num_vertices()},
            {"edges", instance.num_edges()},
            {"demands", instance.demands.size()},
            {"T", instance.num_times},
            {"directed", instance.directed},
            {"variant", std::string(to_string(instance.variant))},
            {"monotonic", is_monotonic(instance)}};
  json["acyclic"] = instance.directed ? Json(is_acyclic(instance)) : Json(nullptr);
  return json;
}

TemporalInstance load_instance(const std::string& path) {
  TemporalInstance instance = instance_from_json(read_json_file(path));
  if (const auto violations = validate(instance); !violations.empty()) {
    throw InputError(path + ": " + violations.front().element + ": " + violations.front().message);
  }
  return instance;
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Generated generate(const GenOptions& o) {
  Generated out;
  const auto from_gadget = [&](GadgetInstance g, Json source) {
    out.trace = to_json(g.trace, g.instance);
    out.source = std::move(source);
    out.instance = std::move(g.instance);
  };
  if (o.kind == "example1") {
    const LabelCoverInstance lc = example1_label_cover();
    from_gadget(lc_to_2dtsn(lc), to_json(lc));
  } else if (o.kind == "lc-yes") {
    const LabelCoverInstance lc = gen_yes_lc(o.left, o.right, o.degree, o.labels, o.seed);
    from_gadget(lc_to_2dtsn(lc), to_json(lc));
  } else if (o.kind == "phlc-yes") {
    const KphlcInstance h = gen_yes_phlc(o.k, o.part_size, o.edges, o.labels, o.seed);
    from_gadget(phlc_to_kdtsn(h), to_json(h));
  } else if (o.kind == "phlc-nosat") {
    const KphlcInstance h = gen_nosat_phlc(o.k, o.part_size, o.edges, o.labels, o.seed);
    from_gadget(phlc_to_kdtsn(h), to_json(h));
  } else if (o.kind == "random") {
    Rng rng(o.seed);
    RandomOptions options;
    options.vertices = o.vertices;
    options.max_edges = o.edges;
    options.max_demands = o.demands;
    options.num_times = o.times;
    options.directed = !o.undirected;
    options.monotonic = o.monotonic;
    options.single_source = o.single_source;
    out.instance = random_feasible_instance(rng, options);
    return out;
  } else {
    throw InputError("unknown generator kind " + o.kind);
  }
  if (o.undirected) out.instance = undirect(out.instance);
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream stream(text);
  std::string item;
  try {
    while (std::getline(stream, item, ',')) {
      if (item.empty()) continue;
      if (const auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw InputError("descending seed range " + item);
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        seeds.push_back(std::stoull(item));
      }
    }
  } catch (const std::logic_error&) {
    throw InputError("malformed seed list " + text);
  }
  return seeds;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  for (std::string item; std::getline(stream, item, ',');) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, std::string command)
      : out_(out), err_(err), report_{{"command", std::move(command)}} {}

  Json& report() { return report_; }

  // Runs `body`, maps exceptions to exit codes, and prints the report.
  int guard(const std::function<int()>& body) {
    const auto start = Clock::now();
    int code = 0;
    try {
      code = body();
    } catch (const InfeasibleError& e) {
      report_["feasible"] = false;
      if (e.demand() >= 0) report_["infeasible_demand"] = e.demand();
      report_["message"] = e.what();
      code = 1;
    } catch (const InputError& e) {
      err_ << "error: " << e.what() << "\n";
      report_["error"] = e.what();
      code = 2;
    } catch (const InvariantError& e) {
      err_ << "internal error: " << e.what() << "\n";
      report_["error"] = e.what();
      code = 3;
    } catch (const Json::exception& e) {
      err_ << "error: " << e.what() << "\n";
      report_["error"] = e.what();
      code = 2;
    }
    report_["wall_time_ms"] = elapsed_ms(start);
    report_["exit_code"] = code;
    out_ << report_.dump(2) << "\n";
    return code;
  }

  void record_solution(const Solution& solution) {
    report_["feasible"] = true;
    report_["cost"] = to_string(solution.cost);
    report_["solution_edges"] = solution.edges.size();
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Json report_;
};

void write_infeasible(const std::string& path) {
  if (!path.empty()) write_json_file(path, infeasible_solution_json());
}

int cmd_validate(Runner& runner, const std::string& input) {
  const TemporalInstance instance = instance_from_json(read_json_file(input));
  const auto violations = validate(instance);
  Json list = Json::array();
  for (const Violation& v : violations) list.push_back(Json{{"element", v.element}, {"message", v.message}});
  runner.report()["valid"] = violations.empty();
  runner.report()["violations"] = std::move(list);
  if (!violations.empty()) return 2;
  runner.report()["instance"] = digest(instance);
  return 0;
}

int cmd_reduce(Runner& runner, const std::string& input, const std::string& target, const std::string& output,
               const std::string& map_path) {
  const TemporalInstance instance = load_instance(input);
  runner.report()["instance"] = digest(instance);
  runner.report()["target"] = target;
  Json image;
  Json map;
  if (target == "priority-st") {
    const PriorityInstance p = tsn_to_priority(instance);
    image = to_json(p);
    Json forward = Json::array();
    for (EdgeId e = 0; e < instance.num_edges(); ++e) forward.push_back(Json::array({e}));
    map = Json{{"kind", "tsn_to_priority"}, {"forward_edge_map", std::move(forward)}};
  } else if (target == "dst") {
    const DstInstance dst = single_source_to_dst(instance);
    image = to_json(dst);
    Json origin = Json::array();
    for (const DstEdge& e : dst.edges) origin.push_back(e.origin);
    map = Json{{"kind", "single_source_to_dst"}, {"edge_origin", std::move(origin)},
               {"terminal_demands", dst.terminal_demand}};
  } else {
    Normalized result{instance, {}};
    if (target == "simple") {
      result = normalize(instance, Variant::kNode);
      Reduced simple = to_simple(result.instance);
      result.instance = std::move(simple.instance);
      result.chain.append(std::move(simple.map));
    } else {
      const auto variant = parse_variant(target);
      if (!variant) throw InputError("unknown reduction target " + target);
      result = normalize(instance, *variant);
    }
    runner.report()["image"] = digest(result.instance);
    image = to_json(result.instance);
    map = to_json(result.chain);
  }
  write_json_file(output, image);
  if (!map_path.empty()) write_json_file(map_path, map);
  return 0;
}

int cmd_solve(Runner& runner, const std::string& input, const std::string& method, const std::string& output,
              const std::string& lp_path) {
  const TemporalInstance instance = load_instance(input);
  runner.report()["instance"] = digest(instance);
  runner.report()["method"] = method;
  try {
    if (method == "ilp-export") {
      if (lp_path.empty()) throw InputError("ilp-export needs --lp");
      const SimpleForm form = simple_form(instance);
      const IlpModel model = build_ilp(form.instance, form.edge_group);
      write_text_file(lp_path, emit_lp(model));
      runner.report()["stats"] = Json{{"variables", model.program.variables.size()},
                                      {"decisions", model.num_decisions},
                                      {"constraints", model.program.constraints.size()}};
      return 0;
    }
    ExactResult result;
    if (method == "bb") {
      result = solve_bb(instance);
    } else if (method == "brute") {
      result = brute_force(instance);
    } else {
      throw InputError("unknown solve method " + method);
    }
    Json stats{{"nodes", result.stats.nodes}};
    if (result.stats.root_bound) stats["root_bound"] = to_string(*result.stats.root_bound);
    runner.report()["stats"] = std::move(stats);
    runner.record_solution(result.solution);
    if (!output.empty()) write_json_file(output, solution_to_json(result.solution));
    return 0;
  } catch (const InfeasibleError&) {
    write_infeasible(output);
    throw;
  }
}

int cmd_approx(Runner& runner, const std::string& input, const std::string& method, int level,
               const std::string& output) {
  const TemporalInstance instance = load_instance(input);
  runner.report()["instance"] = digest(instance);
  runner.report()["method"] = method;
  try {
    Solution solution;
    if (method == "union") {
      solution = shortest_paths_union(instance);
    } else if (method == "charikar") {
      runner.report()["level"] = level;
      CharikarResult result = charikar_approx(instance, level);
      runner.report()["stats"] = Json{{"recursion_calls", result.stats.calls}, {"memo_hits", result.stats.memo_hits}};
      runner.report()["tree_cost"] = to_string(result.tree.cost());
      solution = std::move(result.solution);
    } else {
      throw InputError("unknown approx method " + method);
    }
    runner.record_solution(solution);
    if (!output.empty()) write_json_file(output, solution_to_json(solution));
    return 0;
  } catch (const InfeasibleError&) {
    write_infeasible(output);
    throw;
  }
}

int cmd_gen(Runner& runner, const GenOptions& options, const std::string& output, const std::string& trace_path) {
  runner.report()["kind"] = options.kind;
  runner.report()["seed"] = options.seed;
  Generated g = generate(options);
  runner.report()["instance"] = digest(g.instance);
  write_json_file(output, to_json(g.instance));
  if (!trace_path.empty()) {
    if (!g.trace) throw InputError("kind " + options.kind + " has no gadget trace");
    Json trace = *g.trace;
    trace["source"] = *g.source;
    write_json_file(trace_path, trace);
  }
  return 0;
}

int cmd_verify(Runner& runner, const std::string& input, const std::string& solution_path) {
  const TemporalInstance instance = load_instance(input);
  const Json json = read_json_file(solution_path);
  runner.report()["instance"] = digest(instance);
  if (json.contains("feasible") && json.at("feasible").is_boolean() && !solution_claims_feasible(json)) {
    const bool infeasible = !is_feasible(instance, all_edges(instance));
    runner.report()["claim"] = "infeasible";
    runner.report()["verified"] = infeasible;
    if (!infeasible) throw InputError("solution claims infeasibility but every demand is reachable");
    return 0;
  }
  const Solution claimed = solution_from_json(json);
  for (EdgeId e : claimed.edges) {
    if (e < 0 || e >= instance.num_edges()) throw InputError("solution names unknown edge " + std::to_string(e));
  }
  const Solution actual = make_solution(instance, claimed.edges);
  const bool feasible = is_feasible(instance, actual);
  runner.report()["feasible"] = feasible;
  runner.report()["cost"] = to_string(actual.cost);
  if (json.contains("cost") && actual.cost != claimed.cost) {
    runner.report()["verified"] = false;
    throw InputError("claimed cost " + to_string(claimed.cost) + " differs from recomputed " + to_string(actual.cost));
  }
  runner.report()["verified"] = feasible;
  return feasible ? 0 : 1;
}

std::string csv_field(const std::optional<Rational>& value) { return value ? to_string(*value) : ""; }

int cmd_bench(Runner& runner, GenOptions options, const std::string& methods_text, const std::string& seeds_text,
              int level, const std::string& output) {
  const auto methods = split_list(methods_text);
  const auto seeds = parse_seeds(seeds_text);
  runner.report()["kind"] = options.kind;
  runner.report()["methods"] = methods;
  runner.report()["seeds"] = seeds;
  std::string csv = "kind,seed,vertices,edges,demands,method,cost,optimum,ratio\n";
  int rows = 0;
  if (!methods.empty()) {
    for (const std::uint64_t seed : seeds) {
      options.seed = seed;
      const Generated g = generate(options);
      const TemporalInstance& instance = g.instance;
      std::optional<Rational> optimum;
      try {
        optimum = brute_force(instance).solution.cost;
      } catch (const InputError&) {
      } catch (const InfeasibleError&) {
      }
      for (const std::string& method : methods) {
        std::string cost_text;
        std::optional<Rational> cost;
        try {
          if (method == "union") cost = shortest_paths_union(instance).cost;
          else if (method == "charikar") cost = charikar_approx(instance, level).solution.cost;
          else if (method == "bb") cost = solve_bb(instance).solution.cost;
          else if (method == "brute") cost = brute_force(instance).solution.cost;
          else throw InputError("unknown bench method " + method);
          cost_text = to_string(*cost);
        } catch (const InfeasibleError&) {
          cost_text = "infeasible";
        } catch (const InputError& e) {
          if (std::string(e.what()).rfind("unknown bench method", 0) == 0) throw;
          cost_text = "n/a";
        }
        std::string ratio;
        if (cost && optimum) ratio = *optimum == Rational(0) ? (*cost == Rational(0) ? "1" : "inf") : to_string(*cost / *optimum);
        csv += options.kind + "," + std::to_string(seed) + "," + std::to_string(instance.num_vertices()) + "," +
               std::to_string(instance.num_edges()) + "," + std::to_string(instance.demands.size()) + "," + method +
               "," + cost_text + "," + csv_field(optimum) + "," + ratio + "\n";
        ++rows;
      }
    }
  }
  runner.report()["rows"] = rows;
  write_text_file(output, csv);
  return 0;
}

void add_gen_options(CLI::App& app, GenOptions& o) {
  app.add_option("--kind", o.kind, "example1 | lc-yes | phlc-yes | phlc-nosat | random");
  app.add_option("--k", o.k, "number of parts (phlc kinds)");
  app.add_option("--seed", o.seed, "generator seed");
  app.add_option("--left", o.left, "left vertices (lc-yes)");
  app.add_option("--right", o.right, "right vertices (lc-yes)");
  app.add_option("--degree", o.degree, "left degree (lc-yes)");
  app.add_option("--labels", o.labels, "label set size");
  app.add_option("--edges", o.edges, "hyperedges (phlc kinds) or edge limit (random)");
  app.add_option("--part-size", o.part_size, "vertices per part (phlc kinds)");
  app.add_flag("--undirected", o.undirected, "drop edge orientation");
  app.add_option("--vertices", o.vertices, "vertices (random)");
  app.add_option("--demands", o.demands, "demand limit (random)");
  app.add_option("--times", o.times, "frames (random)");
  app.add_flag("--monotonic", o.monotonic, "upward-closed activity (random)");
  app.add_flag("--single-source", o.single_source, "one shared source (random)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-temporal Steiner network toolkit", "tsn"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string map_path;
  std::string target;
  std::string method;
  std::string lp_path;
  std::string trace_path;
  std::string solution_path;
  std::string methods = "union,bb";
  std::string seeds = "1";
  int level = 2;
  GenOptions gen;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check an instance file");
  validate_cmd->add_option("-i,--input", input)->required();

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "apply a reduction");
  reduce_cmd->add_option("--to", target, "node | edge | node_and_edge | simple | priority-st | dst")->required();
  reduce_cmd->add_option("-i,--input", input)->required();
  reduce_cmd->add_option("-o,--output", output)->required();
  reduce_cmd->add_option("--map", map_path);

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve exactly");
  solve_cmd->add_option("-i,--input", input)->required();
  solve_cmd->add_option("--method", method, "bb | brute | ilp-export")->required();
  solve_cmd->add_option("--lp", lp_path);
  solve_cmd->add_option("-o,--output", output);

  CLI::App* approx_cmd = app.add_subcommand("approx", "approximate");
  approx_cmd->add_option("-i,--input", input)->required();
  approx_cmd->add_option("--method", method, "union | charikar")->required();
  approx_cmd->add_option("--level", level, "recursion level for charikar");
  approx_cmd->add_option("-o,--output", output);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance");
  add_gen_options(*gen_cmd, gen);
  gen_cmd->add_option("-o,--output", output)->required();
  gen_cmd->add_option("--trace", trace_path);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a solution against an instance");
  verify_cmd->add_option("-i,--input", input)->required();
  verify_cmd->add_option("-s,--solution", solution_path)->required();

  CLI::App* bench_cmd = app.add_subcommand("bench", "run generated batches through solvers");
  add_gen_options(*bench_cmd, gen);
  bench_cmd->add_option("--methods", methods, "comma separated: union, charikar, bb, brute");
  bench_cmd->add_option("--seeds", seeds, "e.g. 1-10 or 1,4,9");
  bench_cmd->add_option("--level", level);
  bench_cmd->add_option("-o,--output", output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);
  Runner runner(out, err, command);
  if (validate_cmd->parsed()) return runner.guard([&] { return cmd_validate(runner, input); });
  if (reduce_cmd->parsed()) return runner.guard([&] { return cmd_reduce(runner, input, target, output, map_path); });
  if (solve_cmd->parsed()) return runner.guard([&] { return cmd_solve(runner, input, method, output, lp_path); });
  if (approx_cmd->parsed()) return runner.guard([&] { return cmd_approx(runner, input, method, level, output); });
  if (gen_cmd->parsed()) return runner.guard([&] { return cmd_gen(runner, gen, output, trace_path); });
  if (verify_cmd->parsed()) return runner.guard([&] { return cmd_verify(runner, input, solution_path); });
  if (bench_cmd->parsed()) {
    return runner.guard([&] { return cmd_bench(runner, gen, methods, seeds, level, output); });
  }
  return 2;
}

}  // namespace tsn::cli
