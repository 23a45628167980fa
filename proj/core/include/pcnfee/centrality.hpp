#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "pcnfee/graph.hpp"
#include "pcnfee/rational.hpp"

namespace pcnfee {

inline constexpr Sat kUnreachable = std::numeric_limits<Sat>::max();

/// Single-source minimum-fee distances and shortest-path counts. Only edges
/// able to carry the transaction are traversed; edge cost is routing_weight.
struct PathCountTable {
  NodeIndex source{};
  std::vector<Sat> dist;
  std::vector<PathCount> sigma;
  /// For each node, the edges that end a minimum-cost path into it.
  std::vector<std::vector<EdgeIndex>> predecessors;
  /// Reachable nodes in non-decreasing distance order, source first.
  std::vector<NodeIndex> order;

  bool reachable(NodeIndex n) const { return dist[idx(n)] != kUnreachable; }
};

PathCountTable shortest_path_counts(const PcnGraph& graph, NodeIndex source, TxAmount tx);

/// Which (sender, receiver) pairs contribute to betweenness. Excluded nodes
/// may still relay payments; they just never appear as an endpoint.
class PairFilter {
 public:
  static PairFilter all() { return {}; }
  static PairFilter excluding(NodeIndex n) { return PairFilter{}.exclude(n); }

  PairFilter& exclude(NodeIndex n);
  /// Restricts to an explicit pair list (still subject to exclusions).
  PairFilter& only_pairs(std::span<const std::pair<NodeIndex, NodeIndex>> pairs);

  bool admits_endpoint(NodeIndex n) const;
  bool admits(NodeIndex s, NodeIndex t) const;

 private:
  std::set<NodeIndex> excluded_;
  std::optional<std::set<std::pair<NodeIndex, NodeIndex>>> pairs_;
};

/// Sum over admissible pairs (s, t) of sigma_st[e] / sigma_st, per edge.
struct EbcScore {
  std::vector<Rational> per_edge;

  const Rational& operator[](EdgeIndex e) const { return per_edge.at(idx(e)); }
};

EbcScore edge_betweenness(const PcnGraph& graph, TxAmount tx,
                          const PairFilter& filter = PairFilter::all());

/// Betweenness of every node: sum over s != v != t of sigma_stv / sigma_st.
std::vector<Rational> vertex_betweenness_all(const PcnGraph& graph, TxAmount tx);
Rational vertex_betweenness(const PcnGraph& graph, NodeIndex node, TxAmount tx);

/// edge_fee(edge) * EBC(edge). Not normalised by the number of pairs.
Rational expected_reward_channel(const PcnGraph& graph, EdgeIndex edge, TxAmount tx,
                                 const PairFilter& filter);

/// Sum of expected_reward_channel over channels that all leave the same
/// strategic node; pairs with that node as an endpoint are excluded.
Rational expected_reward_total(const PcnGraph& graph, std::span<const EdgeIndex> channels,
                               TxAmount tx);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;  // L1 change between iterations
  int max_iterations = 200;
};

/// Power iteration over all edges (parallel edges weigh in by multiplicity).
/// Dangling mass is spread uniformly.
std::vector<double> pagerank(const PcnGraph& graph, const PageRankOptions& options = {});

/// Nodes by in+out edge count, descending; ties by node id ascending.
std::vector<NodeIndex> degree_ranking(const PcnGraph& graph);

/// CSV debug dump: src,dst,numerator,denominator.
void write_ebc_csv(std::ostream& out, const PcnGraph& graph, const EbcScore& score);

}  // namespace pcnfee
