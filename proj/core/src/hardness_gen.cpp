#include "tsn/hardness_gen.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tsn/errors.hpp"
#include "tsn/random_instance.hpp"

namespace tsn {
namespace {

std::string label_list(const std::vector<int>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(labels[i] + 1);
  }
  return out;
}

// All label tuples of hyperedge e that fix `label` on `part` and agree.
std::vector<std::vector<int>> agreeing_tuples(const KphlcInstance& h, int e, int part, int label) {
  const auto& proj = h.projections[static_cast<std::size_t>(e)];
  const int color = proj[static_cast<std::size_t>(part)][static_cast<std::size_t>(label)];
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(static_cast<std::size_t>(h.k()), 0);
  const auto extend = [&](auto&& self, int s) -> void {
    if (s == h.k()) {
      out.push_back(tuple);
      return;
    }
    if (s == part) {
      tuple[static_cast<std::size_t>(s)] = label;
      self(self, s + 1);
      return;
    }
    for (int l = 0; l < h.num_labels; ++l) {
      if (proj[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)] != color) continue;
      tuple[static_cast<std::size_t>(s)] = l;
      self(self, s + 1);
    }
  };
  extend(extend, 0);
  return out;
}

struct PendingEdge {
  VertexId u;
  VertexId v;
  Rational weight;
  std::set<Time> times;
};

GadgetInstance build_gadget(const KphlcInstance& h, const std::vector<std::string>& prefixes) {
  if (const auto problems = check(h); !problems.empty()) throw InputError("invalid label cover: " + problems.front());
  const int k = h.k();
  InstanceBuilder builder(true, Variant::kEdge, k);
  GadgetInstance out;
  std::vector<PendingEdge> pending;
  std::map<std::pair<int, std::vector<int>>, std::size_t> contact_of;
  std::vector<std::size_t> contact_pending;  // pending index per trace contact

  const auto add = [&](VertexId u, VertexId v, Rational w, Time t) {
    pending.push_back({u, v, w, {t}});
    return pending.size() - 1;
  };

  for (int part = 0; part < k; ++part) {
    const std::string& p = prefixes[static_cast<std::size_t>(part)];
    const int n = h.part_sizes[static_cast<std::size_t>(part)];
    const Time frame = part + 1;
    std::vector<VertexId> hubs;
    for (int i = 1; i <= n + 1; ++i) hubs.push_back(builder.vertex(p + "S" + std::to_string(i)));

    for (int i = 0; i < n; ++i) {
      const std::string vertex_name = p + std::to_string(i + 1);
      std::vector<int> incident;
      for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
        if (h.hyperedges[e][static_cast<std::size_t>(part)] == i) incident.push_back(static_cast<int>(e));
      }
      out.trace.bundles.push_back({"vertex", part, i, -1, -1, hubs[static_cast<std::size_t>(i)],
                                   hubs[static_cast<std::size_t>(i + 1)], h.num_labels});

      for (int label = 0; label < h.num_labels; ++label) {
        const std::string strand = vertex_name + ".l" + std::to_string(label + 1);
        std::vector<VertexId> junction;
        for (std::size_t j = 0; j <= incident.size(); ++j) {
          junction.push_back(builder.vertex(strand + ".j" + std::to_string(j)));
        }
        add(hubs[static_cast<std::size_t>(i)], junction.front(), Rational(0), frame);

        for (std::size_t j = 0; j < incident.size(); ++j) {
          const int e = incident[j];
          const auto tuples = agreeing_tuples(h, e, part, label);
          out.trace.bundles.push_back({"edge", part, i, label, e, junction[j], junction[j + 1],
                                       std::max<int>(1, static_cast<int>(tuples.size()))});
          if (tuples.empty()) {
            const std::string base = strand + ".e" + std::to_string(e + 1);
            const VertexId in = builder.vertex(base + ".in");
            const VertexId outv = builder.vertex(base + ".out");
            add(junction[j], in, Rational(0), frame);
            contact_pending.push_back(add(in, outv, Rational(1), frame));
            out.trace.contacts.push_back({0, e, {}, part, i, label, {}});
            add(outv, junction[j + 1], Rational(0), frame);
            continue;
          }
          for (const auto& tuple : tuples) {
            const std::string base = "c[e" + std::to_string(e + 1) + ":" + label_list(tuple) + "]";
            const VertexId in = builder.vertex(base + ".in");
            const VertexId outv = builder.vertex(base + ".out");
            add(junction[j], in, Rational(0), frame);
            const auto key = std::make_pair(e, tuple);
            if (const auto it = contact_of.find(key); it != contact_of.end()) {
              pending[contact_pending[it->second]].times.insert(frame);
            } else {
              contact_of.emplace(key, out.trace.contacts.size());
              contact_pending.push_back(add(in, outv, Rational(1), frame));
              out.trace.contacts.push_back({0, e, tuple, -1, -1, -1, {}});
            }
            add(outv, junction[j + 1], Rational(0), frame);
          }
        }
        add(junction.back(), hubs[static_cast<std::size_t>(i + 1)], Rational(0), frame);
      }
    }
    builder.add_demand(hubs.front(), hubs.back(), frame);
  }

  for (const PendingEdge& edge : pending) {
    builder.add_edge(edge.u, edge.v, edge.weight, std::vector<Time>(edge.times.begin(), edge.times.end()));
  }
  for (std::size_t c = 0; c < out.trace.contacts.size(); ++c) {
    const PendingEdge& edge = pending[contact_pending[c]];
    out.trace.contacts[c].edge = static_cast<EdgeId>(contact_pending[c]);
    out.trace.contacts[c].frames.assign(edge.times.begin(), edge.times.end());
  }
  out.instance = std::move(builder).build();
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string times_text(const std::vector<Time>& times) {
  std::string out;
  for (Time t : times) out += std::to_string(t) + ",";
  return out;
}

}  // namespace

std::vector<std::string> check(const LabelCoverInstance& lc) { return check(as_hypergraph(lc)); }

std::vector<std::string> check(const KphlcInstance& h) {
  std::vector<std::string> problems;
  if (h.k() < 1) problems.push_back("need at least one part");
  if (h.num_labels < 1 || h.num_colors < 1) problems.push_back("label and color sets must be nonempty");
  if (h.projections.size() != h.hyperedges.size()) problems.push_back("one projection table per hyperedge");
  for (std::size_t e = 0; e < h.hyperedges.size() && problems.empty(); ++e) {
    const std::string label = "hyperedge " + std::to_string(e);
    if (h.hyperedges[e].size() != static_cast<std::size_t>(h.k())) {
      problems.push_back(label + " must name one vertex per part");
      continue;
    }
    for (int part = 0; part < h.k(); ++part) {
      const int v = h.hyperedges[e][static_cast<std::size_t>(part)];
      if (v < 0 || v >= h.part_sizes[static_cast<std::size_t>(part)]) problems.push_back(label + " vertex out of range");
    }
    if (h.projections[e].size() != static_cast<std::size_t>(h.k())) {
      problems.push_back(label + " needs a projection per part");
      continue;
    }
    for (const auto& table : h.projections[e]) {
      if (table.size() != static_cast<std::size_t>(h.num_labels)) problems.push_back(label + " projection is not total");
      for (int c : table) {
        if (c < 0 || c >= h.num_colors) problems.push_back(label + " projection leaves the color set");
      }
    }
  }
  return problems;
}

KphlcInstance as_hypergraph(const LabelCoverInstance& lc) {
  KphlcInstance h;
  h.part_sizes = {lc.num_left, lc.num_right};
  h.num_labels = lc.num_labels;
  h.num_colors = lc.num_colors;
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    h.hyperedges.push_back({lc.edges[e].first, lc.edges[e].second});
    h.projections.push_back({lc.proj_left.at(e), lc.proj_right.at(e)});
  }
  if (!lc.planted_left.empty()) h.planted = {lc.planted_left, lc.planted_right};
  return h;
}

GadgetInstance lc_to_2dtsn(const LabelCoverInstance& lc) { return build_gadget(as_hypergraph(lc), {"u", "v"}); }

GadgetInstance phlc_to_kdtsn(const KphlcInstance& h) {
  std::vector<std::string> prefixes;
  for (int t = 1; t <= h.k(); ++t) prefixes.push_back("v" + std::to_string(t) + ".");
  return build_gadget(h, prefixes);
}

TemporalInstance undirect(const TemporalInstance& instance) {
  if (!instance.directed) throw InputError("undirect expects a directed instance");
  TemporalInstance out = instance;
  out.directed = false;
  return out;
}

LabelCoverInstance example1_label_cover() {
  LabelCoverInstance lc;
  lc.num_left = 1;
  lc.num_right = 1;
  lc.edges = {{0, 0}};
  lc.num_labels = 2;
  lc.num_colors = 2;
  lc.proj_left = {{0, 0}};
  lc.proj_right = {{1, 0}};
  return lc;
}

bool is_total(const LabelCoverInstance& lc, const std::vector<int>& left, const std::vector<int>& right) {
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    const auto [u, v] = lc.edges[e];
    if (lc.proj_left[e][static_cast<std::size_t>(left.at(static_cast<std::size_t>(u)))] !=
        lc.proj_right[e][static_cast<std::size_t>(right.at(static_cast<std::size_t>(v)))]) {
      return false;
    }
  }
  return true;
}

bool strongly_satisfies(const KphlcInstance& h, const std::vector<std::vector<int>>& labeling) {
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
    std::set<int> colors;
    for (int part = 0; part < h.k(); ++part) {
      const int v = h.hyperedges[e][static_cast<std::size_t>(part)];
      const int label = labeling.at(static_cast<std::size_t>(part)).at(static_cast<std::size_t>(v));
      colors.insert(h.projections[e][static_cast<std::size_t>(part)][static_cast<std::size_t>(label)]);
    }
    if (colors.size() != 1) return false;
  }
  return true;
}

LabelCoverInstance gen_yes_lc(int num_left, int num_right, int degree, int num_labels, std::uint64_t seed) {
  if (num_left < 1 || num_right < 1 || degree < 1 || num_labels < 1) throw InputError("parameters must be positive");
  if (degree > num_right) throw InputError("degree exceeds the right side");
  Rng rng(seed);
  LabelCoverInstance lc;
  lc.num_left = num_left;
  lc.num_right = num_right;
  lc.num_labels = num_labels;
  lc.num_colors = num_labels;
  for (int u = 0; u < num_left; ++u) lc.planted_left.push_back(rng.uniform(0, num_labels - 1));
  for (int v = 0; v < num_right; ++v) lc.planted_right.push_back(rng.uniform(0, num_labels - 1));
  for (int u = 0; u < num_left; ++u) {
    std::vector<int> right(static_cast<std::size_t>(num_right));
    for (int v = 0; v < num_right; ++v) right[static_cast<std::size_t>(v)] = v;
    rng.shuffle(right);
    right.resize(static_cast<std::size_t>(degree));
    std::sort(right.begin(), right.end());
    for (int v : right) lc.edges.emplace_back(u, v);
  }
  for (const auto& [u, v] : lc.edges) {
    std::vector<int> left(static_cast<std::size_t>(num_labels));
    std::vector<int> right(static_cast<std::size_t>(num_labels));
    for (int& c : left) c = rng.uniform(0, lc.num_colors - 1);
    for (int& c : right) c = rng.uniform(0, lc.num_colors - 1);
    const int color = rng.uniform(0, lc.num_colors - 1);
    left[static_cast<std::size_t>(lc.planted_left[static_cast<std::size_t>(u)])] = color;
    right[static_cast<std::size_t>(lc.planted_right[static_cast<std::size_t>(v)])] = color;
    lc.proj_left.push_back(std::move(left));
    lc.proj_right.push_back(std::move(right));
  }
  return lc;
}

namespace {

std::vector<std::vector<int>> random_hyperedges(Rng& rng, int k, int part_size, int num_edges) {
  std::vector<std::vector<int>> out;
  for (int e = 0; e < num_edges; ++e) {
    std::vector<int> edge;
    for (int part = 0; part < k; ++part) edge.push_back(rng.uniform(0, part_size - 1));
    out.push_back(std::move(edge));
  }
  return out;
}

void require_hypergraph_params(int k, int part_size, int num_edges, int num_labels) {
  if (k < 1 || part_size < 1 || num_edges < 1 || num_labels < 1) throw InputError("parameters must be positive");
}

}  // namespace

KphlcInstance gen_yes_phlc(int k, int part_size, int num_edges, int num_labels, std::uint64_t seed) {
  require_hypergraph_params(k, part_size, num_edges, num_labels);
  Rng rng(seed);
  KphlcInstance h;
  h.part_sizes.assign(static_cast<std::size_t>(k), part_size);
  h.num_labels = num_labels;
  h.num_colors = num_labels;
  h.planted.resize(static_cast<std::size_t>(k));
  for (auto& labels : h.planted) {
    for (int v = 0; v < part_size; ++v) labels.push_back(rng.uniform(0, num_labels - 1));
  }
  h.hyperedges = random_hyperedges(rng, k, part_size, num_edges);
  for (const auto& edge : h.hyperedges) {
    std::vector<std::vector<int>> tables;
    const int color = rng.uniform(0, h.num_colors - 1);
    for (int part = 0; part < k; ++part) {
      std::vector<int> table(static_cast<std::size_t>(num_labels));
      for (int& c : table) c = rng.uniform(0, h.num_colors - 1);
      const int planted = h.planted[static_cast<std::size_t>(part)][static_cast<std::size_t>(edge[static_cast<std::size_t>(part)])];
      table[static_cast<std::size_t>(planted)] = color;
      tables.push_back(std::move(table));
    }
    h.projections.push_back(std::move(tables));
  }
  return h;
}

KphlcInstance gen_nosat_phlc(int k, int part_size, int num_edges, int num_labels, std::uint64_t seed) {
  require_hypergraph_params(k, part_size, num_edges, num_labels);
  Rng rng(seed);
  KphlcInstance h;
  h.part_sizes.assign(static_cast<std::size_t>(k), part_size);
  h.num_labels = num_labels;
  h.num_colors = k * num_labels;
  h.hyperedges = random_hyperedges(rng, k, part_size, num_edges);
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
    std::vector<std::vector<int>> tables;
    for (int part = 0; part < k; ++part) {
      std::vector<int> table;
      for (int label = 0; label < num_labels; ++label) table.push_back(part * num_labels + label);
      tables.push_back(std::move(table));
    }
    h.projections.push_back(std::move(tables));
  }
  return h;
}

std::uint64_t structural_hash(const TemporalInstance& instance) {
  const auto n = static_cast<std::size_t>(instance.num_vertices());
  std::vector<std::string> seed(n);
  for (std::size_t i = 0; i < instance.demands.size(); ++i) {
    const Demand& d = instance.demands[i];
    seed[static_cast<std::size_t>(d.a)] += "s" + std::to_string(d.t) + ";";
    seed[static_cast<std::size_t>(d.b)] += "t" + std::to_string(d.t) + ";";
  }
  std::vector<std::uint64_t> color(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::string text = seed[v];
    if (!instance.node_activity.empty()) text += "a" + times_text(instance.node_activity[v]);
    color[v] = fnv1a(text);
  }
  std::vector<std::string> edge_label(instance.edges.size());
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    edge_label[e] = to_string(instance.edges[e].weight) + "@" + times_text(instance.edges[e].times);
  }

  std::size_t classes = std::set<std::uint64_t>(color.begin(), color.end()).size();
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::vector<std::string>> around(n);
    for (std::size_t e = 0; e < instance.edges.size(); ++e) {
      const auto u = static_cast<std::size_t>(instance.edges[e].u);
      const auto v = static_cast<std::size_t>(instance.edges[e].v);
      const std::string out_tag = instance.directed ? ">" : "-";
      const std::string in_tag = instance.directed ? "<" : "-";
      around[u].push_back(out_tag + edge_label[e] + "#" + std::to_string(color[v]));
      around[v].push_back(in_tag + edge_label[e] + "#" + std::to_string(color[u]));
    }
    std::vector<std::uint64_t> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(around[v].begin(), around[v].end());
      std::string text = std::to_string(color[v]) + "|";
      for (const std::string& item : around[v]) text += item + "|";
      next[v] = fnv1a(text);
    }
    color = std::move(next);
    const std::size_t now = std::set<std::uint64_t>(color.begin(), color.end()).size();
    if (now == classes && round > 0) break;
    classes = now;
  }

  std::vector<std::string> parts;
  for (std::uint64_t c : color) parts.push_back("v" + std::to_string(c));
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    const auto cu = color[static_cast<std::size_t>(instance.edges[e].u)];
    const auto cv = color[static_cast<std::size_t>(instance.edges[e].v)];
    const auto lo = instance.directed ? cu : std::min(cu, cv);
    const auto hi = instance.directed ? cv : std::max(cu, cv);
    parts.push_back("e" + std::to_string(lo) + ":" + std::to_string(hi) + ":" + edge_label[e]);
  }
  std::sort(parts.begin(), parts.end());
  std::string text = std::string(instance.directed ? "D" : "U") + std::string(to_string(instance.variant)) +
                     std::to_string(instance.num_times) + "|";
  for (const std::string& p : parts) text += p + "|";
  return fnv1a(text);
}

Json to_json(const LabelCoverInstance& lc) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    edges.push_back(Json{{"u", lc.edges[e].first},
                         {"v", lc.edges[e].second},
                         {"pi_u", lc.proj_left[e]},
                         {"pi_v", lc.proj_right[e]}});
  }
  Json json{{"left", lc.num_left},
            {"right", lc.num_right},
            {"labels", lc.num_labels},
            {"colors", lc.num_colors},
            {"edges", std::move(edges)}};
  if (!lc.planted_left.empty()) json["planted"] = Json{{"left", lc.planted_left}, {"right", lc.planted_right}};
  return json;
}

Json to_json(const KphlcInstance& h) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
    edges.push_back(Json{{"vertices", h.hyperedges[e]}, {"projections", h.projections[e]}});
  }
  Json json{{"parts", h.part_sizes},
            {"labels", h.num_labels},
            {"colors", h.num_colors},
            {"hyperedges", std::move(edges)}};
  if (!h.planted.empty()) json["planted"] = h.planted;
  return json;
}

Json to_json(const GadgetTrace& trace, const TemporalInstance& instance) {
  const auto name = [&](VertexId v) { return instance.vertices.at(static_cast<std::size_t>(v)); };
  Json contacts = Json::array();
  for (const ContactRecord& c : trace.contacts) {
    const Edge& edge = instance.edges.at(static_cast<std::size_t>(c.edge));
    Json item{{"edge", c.edge}, {"u", name(edge.u)}, {"v", name(edge.v)}, {"hyperedge", c.hyperedge}};
    if (c.labels.empty()) {
      item["owner"] = Json{{"part", c.part}, {"vertex", c.vertex}, {"label", c.label}};
    } else {
      item["labels"] = c.labels;
    }
    item["frames"] = c.frames;
    contacts.push_back(std::move(item));
  }
  Json bundles = Json::array();
  for (const BundleRecord& b : trace.bundles) {
    Json item{{"kind", b.kind}, {"part", b.part}, {"vertex", b.vertex}};
    if (b.kind == "edge") {
      item["label"] = b.label;
      item["hyperedge"] = b.hyperedge;
    }
    item["source"] = name(b.source);
    item["sink"] = name(b.sink);
    item["strands"] = b.strands;
    bundles.push_back(std::move(item));
  }
  return Json{{"contacts", std::move(contacts)}, {"bundles", std::move(bundles)}};
}

}  // namespace tsn
