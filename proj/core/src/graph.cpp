#include "pcnfee/graph.hpp"
#include "pcnfee/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace pcnfee {

TxAmount::TxAmount(Sat amount) : amount_(amount) {
  if (amount == 0) throw std::invalid_argument("transaction amount must be at least 1 sat");
}

Sat edge_fee(const ChannelPolicy& policy, TxAmount tx) {
  using Wide = PathCount;
  const Wide proportional = static_cast<Wide>(policy.fee_rate_ppm) * tx.value() / 1'000'000u;
  const Wide total = proportional + policy.base_fee;
  if (total > std::numeric_limits<Sat>::max()) {
    throw std::overflow_error("edge fee exceeds 64-bit satoshi range");
  }
  return static_cast<Sat>(total);
}

Sat routing_weight(const ChannelPolicy& policy, TxAmount tx) {
  return std::max<Sat>(edge_fee(policy, tx), 1);
}

NodeIndex PcnGraph::add_node(std::string id) {
  if (lookup_.contains(id)) throw std::invalid_argument("duplicate node id: " + id);
  const auto n = node_at(ids_.size());
  lookup_.emplace(id, n);
  ids_.push_back(std::move(id));
  out_.emplace_back();
  in_.emplace_back();
  return n;
}

void PcnGraph::check_node(NodeIndex n) const {
  if (idx(n) >= ids_.size()) throw std::out_of_range("node index out of range");
}

EdgeIndex PcnGraph::add_edge(const DirectedEdge& edge) {
  check_node(edge.src);
  check_node(edge.dst);
  if (edge.src == edge.dst) throw std::invalid_argument("self-loop channel at " + id(edge.src));
  const auto e = edge_at(edges_.size());
  edges_.push_back(edge);
  out_[idx(edge.src)].push_back(e);
  in_[idx(edge.dst)].push_back(e);
  return e;
}

std::optional<NodeIndex> PcnGraph::find(std::string_view id) const {
  if (auto it = lookup_.find(std::string(id)); it != lookup_.end()) return it->second;
  return std::nullopt;
}

NodeIndex PcnGraph::index_of(std::string_view id) const {
  if (auto n = find(id)) return *n;
  throw std::out_of_range("unknown node id: " + std::string(id));
}

void PcnGraph::set_policy(EdgeIndex e, const ChannelPolicy& policy) {
  edges_.at(idx(e)).policy = policy;
}

bool PcnGraph::adjacent(NodeIndex a, NodeIndex b) const {
  for (EdgeIndex e : out_edges(a)) {
    if (edges_[idx(e)].dst == b) return true;
  }
  for (EdgeIndex e : in_edges(a)) {
    if (edges_[idx(e)].src == b) return true;
  }
  return false;
}

std::optional<EdgeIndex> PcnGraph::strategic_edge(NodeIndex src, NodeIndex dst) const {
  for (EdgeIndex e : out_edges(src)) {
    const auto& edge = edges_[idx(e)];
    if (edge.strategic && edge.dst == dst) return e;
  }
  return std::nullopt;
}

void PcnGraph::erase_edges(std::vector<EdgeIndex> doomed) {
  std::sort(doomed.begin(), doomed.end());
  doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
  std::vector<DirectedEdge> kept;
  kept.reserve(edges_.size() - doomed.size());
  auto next = doomed.begin();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (next != doomed.end() && idx(*next) == i) {
      ++next;
      continue;
    }
    kept.push_back(edges_[i]);
  }
  edges_ = std::move(kept);
  rebuild_adjacency();
}

void PcnGraph::rebuild_adjacency() {
  for (auto& list : out_) list.clear();
  for (auto& list : in_) list.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[idx(edges_[i].src)].push_back(edge_at(i));
    in_[idx(edges_[i].dst)].push_back(edge_at(i));
  }
}

PcnGraph filter_by_capacity(const PcnGraph& graph, TxAmount tx) {
  PcnGraph out;
  for (std::size_t i = 0; i < graph.node_count(); ++i) out.add_node(graph.id(node_at(i)));
  for (const auto& edge : graph.edges()) {
    if (edge.usable(tx)) out.add_edge(edge);
  }
  return out;
}

PcnGraph add_channel(PcnGraph graph, NodeIndex a, NodeIndex peer,
                     const ChannelPolicy& out_policy,
                     const ChannelPolicy& in_policy, Sat capacity) {
  if (a == peer) throw std::invalid_argument("cannot open a channel to self");
  if (graph.strategic_edge(a, peer)) {
    throw std::invalid_argument("strategic channel already exists: " + graph.id(a) + " -> " +
                                graph.id(peer));
  }
  graph.add_edge({a, peer, out_policy, capacity, true});
  graph.add_edge({peer, a, in_policy, capacity, true});
  return graph;
}

PcnGraph remove_channel(PcnGraph graph, NodeIndex a, NodeIndex peer) {
  const auto out = graph.strategic_edge(a, peer);
  if (!out) {
    throw std::invalid_argument("no strategic channel " + graph.id(a) + " -> " + graph.id(peer));
  }
  // The incoming half is the strategic edge peer->a added alongside.
  std::optional<EdgeIndex> in;
  for (EdgeIndex e : graph.out_edges(peer)) {
    const auto& edge = graph.edge(e);
    if (edge.strategic && edge.dst == a) in = e;
  }
  if (!in) throw std::logic_error("strategic channel is missing its incoming edge");
  graph.erase_edges({*out, *in});
  return graph;
}

bool same_network(const PcnGraph& lhs, const PcnGraph& rhs) {
  if (lhs.node_count() != rhs.node_count() || lhs.edge_count() != rhs.edge_count()) return false;
  for (std::size_t i = 0; i < lhs.node_count(); ++i) {
    if (lhs.id(node_at(i)) != rhs.id(node_at(i))) return false;
  }
  auto key = [](const DirectedEdge& e) {
    return std::make_tuple(idx(e.src), idx(e.dst), e.policy.base_fee, e.policy.fee_rate_ppm,
                           e.capacity, e.strategic);
  };
  auto sorted = [&](const PcnGraph& g) {
    std::vector<decltype(key(DirectedEdge{}))> keys;
    for (const auto& e : g.edges()) keys.push_back(key(e));
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  return sorted(lhs) == sorted(rhs);
}

}  // namespace pcnfee
