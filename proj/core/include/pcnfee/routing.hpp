#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pcnfee/graph.hpp"
#include "pcnfee/rational.hpp"

namespace pcnfee {

/// All-pairs minimum-fee distances and path counts on the network with the
/// strategic node (and every edge touching it) removed.
///
/// Every minimum-cost path between two other nodes either avoids the
/// strategic node or crosses it exactly once (costs are positive), so these
/// tables plus the strategic node's own edges determine every shortest path.
/// The tables never change while the strategic node opens channels.
class BaseRouting {
 public:
  BaseRouting(const PcnGraph& graph, NodeIndex strategic, TxAmount tx);

  std::size_t node_count() const { return n_; }
  Sat dist(std::uint32_t s, std::uint32_t t) const { return dist_[s * n_ + t]; }
  PathCount count(std::uint32_t s, std::uint32_t t) const { return count_[s * n_ + t]; }

 private:
  std::size_t n_ = 0;
  std::vector<Sat> dist_;
  std::vector<PathCount> count_;
};

/// Reward of a candidate channel at one fee, split as in TotalER: the
/// candidate's own expected reward and that of the strategic node's other
/// channels.
struct RewardSplit {
  Rational candidate;
  Rational others;

  Rational total() const { return candidate + others; }
};

/// The channel-fee objective for one prospective channel, precomputed so a
/// single evaluation costs a binary search plus the tied pairs.
///
/// For each (sender, receiver) pair the candidate path costs
/// `threshold_base + fee`; it takes the whole pair below the pair's current
/// distance, splits it on a tie and loses it above. Pairs are grouped by the
/// fee at which they tie.
class CandidateObjective {
 public:
  RewardSplit evaluate(Sat fee) const;
  /// Edge betweenness of the candidate edge at this fee.
  Rational betweenness(Sat fee) const;
  NodeIndex peer() const { return peer_; }

 private:
  friend class StrategicRouting;

  struct TiedPair {
    PathCount via_count;
    PathCount base_count;
    PathCount other_weighted;  // sum of fee * paths over the other channels
  };
  struct Group {
    Sat tie_fee;
    std::size_t first;     // into tied_
    std::size_t last;
    std::size_t cumulative_pairs;  // pairs with tie_fee <= this group's
    Rational cumulative_others;    // others' reward of pairs with tie_fee <= this group's
  };

  const Group* group_at_or_above(Sat fee, std::size_t& below) const;

  NodeIndex peer_{};
  std::size_t always_won_ = 0;
  std::size_t contested_ = 0;
  Rational unaffected_;  // others' reward from pairs the candidate never touches
  std::vector<TiedPair> tied_;
  std::vector<Group> groups_;
};

/// Expected-reward bookkeeping for one strategic node: its channels, their
/// fees, and exact rewards, evaluated on top of a shared BaseRouting.
class StrategicRouting {
 public:
  struct Scope {
    /// Treat this outgoing edge as absent (it becomes the candidate).
    std::optional<EdgeIndex> omit_out;
    /// Outgoing edges that earn reward; default is all of them.
    std::optional<std::vector<EdgeIndex>> rewarded;
  };

  struct Channel {
    NodeIndex peer;
    Sat weight;
    Sat fee;
    bool rewarded;
  };

  StrategicRouting(const PcnGraph& graph, NodeIndex strategic, TxAmount tx);
  StrategicRouting(const PcnGraph& graph, NodeIndex strategic, TxAmount tx, const Scope& scope);
  StrategicRouting(std::shared_ptr<const BaseRouting> base, const PcnGraph& graph,
                   NodeIndex strategic, TxAmount tx, const Scope& scope = {});

  NodeIndex strategic() const { return strategic_; }
  TxAmount tx() const { return tx_; }
  const std::vector<Channel>& channels() const { return out_; }
  const std::shared_ptr<const BaseRouting>& base() const { return base_; }

  /// True if the strategic node already has an edge to or from peer.
  bool is_neighbor(NodeIndex peer) const { return neighbor_.at(idx(peer)) != 0; }

  /// Expected reward of every rewarded channel summed (pairs exclude the
  /// strategic node as an endpoint).
  Rational total_reward() const;
  std::vector<Rational> channel_rewards() const;
  std::vector<Rational> channel_betweenness() const;

  /// Objective for a new channel to peer. in_policy is the policy of the
  /// peer->strategic edge opened with it, or nullopt if that edge exists.
  CandidateObjective candidate(NodeIndex peer, std::optional<ChannelPolicy> in_policy) const;

  void add_channel(NodeIndex peer, const ChannelPolicy& out_policy, const ChannelPolicy& in_policy);

 private:
  void add_incoming(NodeIndex from, Sat weight);
  void add_outgoing(const Channel& channel);

  std::shared_ptr<const BaseRouting> base_;
  NodeIndex strategic_;
  TxAmount tx_;
  std::size_t n_;
  std::vector<Channel> out_;
  std::vector<char> neighbor_;
  // sender -> strategic node
  std::vector<Sat> in_dist_;
  std::vector<PathCount> in_count_;
  // strategic node -> receiver, through the best outgoing channels
  std::vector<Sat> out_dist_;
  std::vector<PathCount> out_count_;
  std::vector<PathCount> out_weighted_;
};

}  // namespace pcnfee
