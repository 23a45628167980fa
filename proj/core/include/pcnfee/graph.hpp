#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcnfee {

/// Amounts and fees, in satoshi.
using Sat = std::uint64_t;

enum class NodeIndex : std::uint32_t {};
enum class EdgeIndex : std::uint32_t {};

constexpr std::uint32_t idx(NodeIndex n) { return static_cast<std::uint32_t>(n); }
constexpr std::uint32_t idx(EdgeIndex e) { return static_cast<std::uint32_t>(e); }
constexpr NodeIndex node_at(std::size_t i) { return static_cast<NodeIndex>(i); }
constexpr EdgeIndex edge_at(std::size_t i) { return static_cast<EdgeIndex>(i); }

/// Fee policy of one channel direction, set by (and paid to) the source node.
struct ChannelPolicy {
  Sat base_fee = 0;
  std::uint64_t fee_rate_ppm = 0;

  auto operator<=>(const ChannelPolicy&) const = default;
};

/// Lightning defaults: 1000 sat base fee and a 0.001 proportional rate.
inline constexpr ChannelPolicy kDefaultPolicy{1000, 1000};

/// On-chain open+close cost; also the default upper bound on a searched fee.
inline constexpr Sat kChannelCost = 8192;

class TxAmount {
 public:
  explicit TxAmount(Sat amount);
  Sat value() const { return amount_; }
  auto operator<=>(const TxAmount&) const = default;

 private:
  Sat amount_;
};

/// base_fee + floor(fee_rate_ppm * amount / 1e6). Throws std::overflow_error
/// if the result does not fit in Sat.
Sat edge_fee(const ChannelPolicy& policy, TxAmount tx);

/// Path-cost weight of an edge. Equal to edge_fee except that zero-fee edges
/// cost 1, so every cycle has positive cost and path counts stay finite.
Sat routing_weight(const ChannelPolicy& policy, TxAmount tx);

struct DirectedEdge {
  NodeIndex src{};
  NodeIndex dst{};
  ChannelPolicy policy{};
  Sat capacity = 0;
  /// Added by add_channel on behalf of the strategic node.
  bool strategic = false;

  bool usable(TxAmount tx) const { return capacity >= tx.value(); }
  bool operator==(const DirectedEdge&) const = default;
};

/// Directed multigraph of a payment channel network. Each channel is stored
/// as two independent directed edges. Node indices are dense and stable.
class PcnGraph {
 public:
  NodeIndex add_node(std::string id);
  EdgeIndex add_edge(const DirectedEdge& edge);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& id(NodeIndex n) const { return ids_.at(idx(n)); }
  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws std::out_of_range for unknown ids.
  NodeIndex index_of(std::string_view id) const;

  const DirectedEdge& edge(EdgeIndex e) const { return edges_.at(idx(e)); }
  std::span<const DirectedEdge> edges() const { return edges_; }
  std::span<const EdgeIndex> out_edges(NodeIndex n) const { return out_.at(idx(n)); }
  std::span<const EdgeIndex> in_edges(NodeIndex n) const { return in_.at(idx(n)); }

  void set_policy(EdgeIndex e, const ChannelPolicy& policy);

  /// True if any edge connects a and b in either direction.
  bool adjacent(NodeIndex a, NodeIndex b) const;
  std::optional<EdgeIndex> strategic_edge(NodeIndex src, NodeIndex dst) const;

  /// Removes the listed edges and renumbers the rest, preserving order.
  void erase_edges(std::vector<EdgeIndex> doomed);

 private:
  void check_node(NodeIndex n) const;
  void rebuild_adjacency();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> lookup_;
  std::vector<DirectedEdge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
};

/// Keeps exactly the edges whose capacity can carry tx; node set unchanged.
PcnGraph filter_by_capacity(const PcnGraph& graph, TxAmount tx);

/// Opens a channel between a and peer: edge a->peer with out_policy and edge
/// peer->a with in_policy, both with the given capacity. At most one
/// strategic channel per (a, peer) pair.
PcnGraph add_channel(PcnGraph graph, NodeIndex a, NodeIndex peer,
                     const ChannelPolicy& out_policy,
                     const ChannelPolicy& in_policy, Sat capacity);

/// Inverse of add_channel. Throws std::invalid_argument if no such channel.
PcnGraph remove_channel(PcnGraph graph, NodeIndex a, NodeIndex peer);

/// Node ids equal and edge multisets equal (edge order ignored).
bool same_network(const PcnGraph& lhs, const PcnGraph& rhs);

}  // namespace pcnfee
