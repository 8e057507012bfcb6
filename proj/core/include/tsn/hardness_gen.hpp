#ifndef TSN_HARDNESS_GEN_HPP_
#define TSN_HARDNESS_GEN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tsn/instance.hpp"
#include "tsn/io.hpp"

namespace tsn {

// Bipartite constraint graph. Labels and colors are 0-based; names in the
// generated instances print labels 1-based.
struct LabelCoverInstance {
  int num_left = 0;
  int num_right = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right)
  int num_labels = 1;
  int num_colors = 1;
  std::vector<std::vector<int>> proj_left;   // [edge][label] -> color
  std::vector<std::vector<int>> proj_right;  // [edge][label] -> color
  std::vector<int> planted_left;             // empty when none was planted
  std::vector<int> planted_right;
};

// k-partite hypergraph; every hyperedge names one vertex per part.
struct KphlcInstance {
  std::vector<int> part_sizes;
  std::vector<std::vector<int>> hyperedges;               // [edge][part] -> vertex
  int num_labels = 1;
  int num_colors = 1;
  std::vector<std::vector<std::vector<int>>> projections;  // [edge][part][label] -> color
  std::vector<std::vector<int>> planted;                   // [part][vertex] -> label, or empty

  int k() const { return static_cast<int>(part_sizes.size()); }
};

struct ContactRecord {
  EdgeId edge = 0;
  int hyperedge = 0;
  // Label per part for a merged agreeing tuple; empty for the lone strand of
  // a bundle without agreeing tuples.
  std::vector<int> labels;
  int part = -1;   // owner of a lone strand
  int vertex = -1;
  int label = -1;
  std::vector<Time> frames;
};

struct BundleRecord {
  std::string kind;  // "vertex" or "edge"
  int part = 0;
  int vertex = 0;
  int label = -1;      // strand label, for edge bundles
  int hyperedge = -1;  // for edge bundles
  VertexId source = 0;
  VertexId sink = 0;
  int strands = 0;
};

struct GadgetTrace {
  std::vector<ContactRecord> contacts;
  std::vector<BundleRecord> bundles;
};

struct GadgetInstance {
  TemporalInstance instance;
  GadgetTrace trace;
};

std::vector<std::string> check(const LabelCoverInstance& lc);
std::vector<std::string> check(const KphlcInstance& h);

KphlcInstance as_hypergraph(const LabelCoverInstance& lc);

// Two-frame instance: left bundles in frame 1, right bundles in frame 2.
GadgetInstance lc_to_2dtsn(const LabelCoverInstance& lc);
// Part t's bundle chain lives in frame t; agreeing tuples share one contact.
GadgetInstance phlc_to_kdtsn(const KphlcInstance& h);

TemporalInstance undirect(const TemporalInstance& instance);

// Single edge, two labels; left labels 1 and 2 agree with right label 2 only.
LabelCoverInstance example1_label_cover();

bool is_total(const LabelCoverInstance& lc, const std::vector<int>& left, const std::vector<int>& right);
bool strongly_satisfies(const KphlcInstance& h, const std::vector<std::vector<int>>& labeling);

LabelCoverInstance gen_yes_lc(int num_left, int num_right, int degree, int num_labels, std::uint64_t seed);
KphlcInstance gen_yes_phlc(int k, int part_size, int num_edges, int num_labels, std::uint64_t seed);
// Projections are pairwise distinct within every hyperedge, so no tuple agrees.
KphlcInstance gen_nosat_phlc(int k, int part_size, int num_edges, int num_labels, std::uint64_t seed);

// Weisfeiler-Lehman style digest anchored at demand endpoints. Equal for
// isomorphic instances; vertex names and edge order do not matter.
std::uint64_t structural_hash(const TemporalInstance& instance);

Json to_json(const LabelCoverInstance& lc);
Json to_json(const KphlcInstance& h);
Json to_json(const GadgetTrace& trace, const TemporalInstance& instance);

}  // namespace tsn

#endif  // TSN_HARDNESS_GEN_HPP_
