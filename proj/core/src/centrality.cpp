#include "pcnfee/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace pcnfee {

PathCountTable shortest_path_counts(const PcnGraph& graph, NodeIndex source, TxAmount tx) {
  const std::size_t n = graph.node_count();
  if (idx(source) >= n) throw std::out_of_range("source node out of range");

  PathCountTable table;
  table.source = source;
  table.dist.assign(n, kUnreachable);
  table.sigma.assign(n, 0);
  table.predecessors.assign(n, {});
  std::vector<char> settled(n, 0);

  using Entry = std::pair<Sat, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  table.dist[idx(source)] = 0;
  table.sigma[idx(source)] = 1;
  heap.emplace(0, idx(source));

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    table.order.push_back(node_at(u));

    for (EdgeIndex e : graph.out_edges(node_at(u))) {
      const auto& edge = graph.edge(e);
      if (!edge.usable(tx)) continue;
      const auto v = idx(edge.dst);
      if (settled[v]) continue;
      const Sat nd = d + routing_weight(edge.policy, tx);
      if (nd < table.dist[v]) {
        table.dist[v] = nd;
        table.sigma[v] = table.sigma[u];
        table.predecessors[v].assign(1, e);
        heap.emplace(nd, v);
      } else if (nd == table.dist[v]) {
        table.sigma[v] = checked_add(table.sigma[v], table.sigma[u]);
        table.predecessors[v].push_back(e);
      }
    }
  }
  return table;
}

PairFilter& PairFilter::exclude(NodeIndex n) {
  excluded_.insert(n);
  return *this;
}

PairFilter& PairFilter::only_pairs(std::span<const std::pair<NodeIndex, NodeIndex>> pairs) {
  pairs_.emplace(pairs.begin(), pairs.end());
  return *this;
}

bool PairFilter::admits_endpoint(NodeIndex n) const { return !excluded_.contains(n); }

bool PairFilter::admits(NodeIndex s, NodeIndex t) const {
  if (s == t || !admits_endpoint(s) || !admits_endpoint(t)) return false;
  return !pairs_ || pairs_->contains({s, t});
}

namespace {

// Brandes-style dependency accumulation for one source. `on_edge` receives
// the share each DAG edge carries; the return value is delta_s(v) per node.
std::vector<Rational> accumulate_dependencies(
    const PcnGraph& graph, const PathCountTable& table,
    const std::function<bool(NodeIndex)>& is_target,
    const std::function<void(EdgeIndex, const Rational&)>& on_edge) {
  std::vector<Rational> delta(graph.node_count());
  for (auto it = table.order.rbegin(); it != table.order.rend(); ++it) {
    const NodeIndex w = *it;
    if (w == table.source) continue;
    Rational carried = delta[idx(w)];
    if (is_target(w)) carried += 1;
    if (carried == 0) continue;
    const BigInt sigma_w = to_bigint(table.sigma[idx(w)]);
    for (EdgeIndex e : table.predecessors[idx(w)]) {
      const NodeIndex v = graph.edge(e).src;
      Rational share(to_bigint(table.sigma[idx(v)]) * carried.get_num(),
                     sigma_w * carried.get_den());
      share.canonicalize();
      on_edge(e, share);
      delta[idx(v)] += share;
    }
  }
  return delta;
}

}  // namespace

EbcScore edge_betweenness(const PcnGraph& graph, TxAmount tx, const PairFilter& filter) {
  EbcScore score;
  score.per_edge.assign(graph.edge_count(), Rational(0));
  for (std::size_t s = 0; s < graph.node_count(); ++s) {
    const NodeIndex source = node_at(s);
    if (!filter.admits_endpoint(source)) continue;
    const auto table = shortest_path_counts(graph, source, tx);
    accumulate_dependencies(
        graph, table, [&](NodeIndex t) { return filter.admits(source, t); },
        [&](EdgeIndex e, const Rational& share) { score.per_edge[idx(e)] += share; });
  }
  return score;
}

std::vector<Rational> vertex_betweenness_all(const PcnGraph& graph, TxAmount tx) {
  std::vector<Rational> bc(graph.node_count(), Rational(0));
  for (std::size_t s = 0; s < graph.node_count(); ++s) {
    const auto table = shortest_path_counts(graph, node_at(s), tx);
    const auto delta = accumulate_dependencies(
        graph, table, [](NodeIndex) { return true; }, [](EdgeIndex, const Rational&) {});
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      if (v != s) bc[v] += delta[v];
    }
  }
  return bc;
}

Rational vertex_betweenness(const PcnGraph& graph, NodeIndex node, TxAmount tx) {
  return vertex_betweenness_all(graph, tx).at(idx(node));
}

Rational expected_reward_channel(const PcnGraph& graph, EdgeIndex edge, TxAmount tx,
                                 const PairFilter& filter) {
  const auto score = edge_betweenness(graph, tx, filter);
  return Rational(to_bigint(edge_fee(graph.edge(edge).policy, tx))) * score[edge];
}

Rational expected_reward_total(const PcnGraph& graph, std::span<const EdgeIndex> channels,
                               TxAmount tx) {
  if (channels.empty()) return Rational(0);
  const NodeIndex owner = graph.edge(channels.front()).src;
  for (EdgeIndex e : channels) {
    if (graph.edge(e).src != owner) {
      throw std::invalid_argument("expected_reward_total: channels must share a source node");
    }
  }
  const auto score = edge_betweenness(graph, tx, PairFilter::excluding(owner));
  Rational total(0);
  for (EdgeIndex e : channels) {
    total += Rational(to_bigint(edge_fee(graph.edge(e).policy, tx))) * score[e];
  }
  return total;
}

std::vector<double> pagerank(const PcnGraph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) return {};
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, uniform), next(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (graph.out_edges(node_at(u)).empty()) dangling += rank[u];
    }
    const double base = (1.0 - options.damping) * uniform + options.damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t u = 0; u < n; ++u) {
      const auto out = graph.out_edges(node_at(u));
      if (out.empty()) continue;
      const double push = options.damping * rank[u] / static_cast<double>(out.size());
      for (EdgeIndex e : out) next[idx(graph.edge(e).dst)] += push;
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < options.tolerance) break;
  }
  return rank;
}

std::vector<NodeIndex> degree_ranking(const PcnGraph& graph) {
  std::vector<NodeIndex> nodes(graph.node_count());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = node_at(i);
  auto degree = [&](NodeIndex n) { return graph.out_edges(n).size() + graph.in_edges(n).size(); };
  std::sort(nodes.begin(), nodes.end(), [&](NodeIndex a, NodeIndex b) {
    const auto da = degree(a), db = degree(b);
    if (da != db) return da > db;
    return graph.id(a) < graph.id(b);
  });
  return nodes;
}

void write_ebc_csv(std::ostream& out, const PcnGraph& graph, const EbcScore& score) {
  out << "src,dst,numerator,denominator\n";
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const auto& edge = graph.edge(edge_at(i));
    const auto& value = score.per_edge.at(i);
    out << graph.id(edge.src) << ',' << graph.id(edge.dst) << ',' << value.get_num().get_str()
        << ',' << value.get_den().get_str() << '\n';
  }
}

}  // namespace pcnfee
