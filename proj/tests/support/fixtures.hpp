#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pcnfee/graph.hpp"

namespace pcnfee::testing {

/// Policy whose fee is exactly `fee` at any amount.
inline ChannelPolicy flat(Sat fee) { return ChannelPolicy{fee, 0}; }

inline constexpr Sat kTx = 10'000;
inline constexpr Sat kRoomy = 1'000'000'000;

struct RandomDigraphOptions {
  std::size_t nodes = 8;
  double edge_probability = 0.35;
  Sat min_weight = 1;
  Sat max_weight = 20;
  /// Share of edges too small to carry kTx.
  double thin_fraction = 0.0;
};

/// Nodes "v0".."v{n-1}" (zero-padded), each ordered pair an edge with the
/// given probability, flat fees drawn uniformly.
PcnGraph random_digraph(std::mt19937_64& rng, const RandomDigraphOptions& options);

/// A network plus a strategic node with some channels and one candidate
/// outgoing edge, ready for fee search.
struct StrategicInstance {
  PcnGraph graph;
  NodeIndex strategic{};
  std::vector<EdgeIndex> prior;  // strategic node's other outgoing edges
  EdgeIndex candidate{};
};

/// `nodes` counts the strategic node. Prior channels get random flat fees in
/// both directions; the candidate's incoming edge too.
StrategicInstance random_strategic_instance(std::mt19937_64& rng, std::size_t nodes,
                                            std::size_t prior_channels);

/// S -> A (10), S -> R (100), A -> R candidate priced at `fee`; A strategic.
struct ThreeNode {
  PcnGraph graph;
  NodeIndex s{}, a{}, r{};
  EdgeIndex candidate{};
};
ThreeNode three_node(Sat fee);

/// Six nodes "a".."f" with a strategic node "s" holding one channel to "a".
struct SixNode {
  PcnGraph graph;
  NodeIndex strategic{};
};
SixNode six_node();

PcnGraph diamond();  // S->X, S->Y, X->R, Y->R, all weight 1
PcnGraph star(std::size_t leaves);  // "c" and "l1".., both directions, weight 1

}  // namespace pcnfee::testing
