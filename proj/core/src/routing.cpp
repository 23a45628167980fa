#include "pcnfee/routing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

#include "pcnfee/centrality.hpp"

namespace pcnfee {

namespace {

Sat add_dist(Sat a, Sat b) {
  if (a == kUnreachable || b == kUnreachable) return kUnreachable;
  Sat out = 0;
  if (__builtin_add_overflow(a, b, &out) || out == kUnreachable) {
    throw std::overflow_error("path cost overflow");
  }
  return out;
}

// Sum of fractions bucketed by denominator; most pairs share a handful of
// path counts, so this avoids a gcd per term.
class FractionSum {
 public:
  void add(PathCount num, PathCount den) {
    if (num == 0) return;
    auto& slot = buckets_[den];
    slot = checked_add(slot, num);
  }
  Rational value() const {
    Rational total(0);
    for (const auto& [den, num] : buckets_) total += make_rational(num, den);
    return total;
  }
  void clear() { buckets_.clear(); }

 private:
  std::map<PathCount, PathCount> buckets_;
};

}  // namespace

BaseRouting::BaseRouting(const PcnGraph& graph, NodeIndex strategic, TxAmount tx)
    : n_(graph.node_count()) {
  // CSR adjacency without the strategic node.
  std::vector<std::size_t> offsets(n_ + 1, 0);
  for (const auto& edge : graph.edges()) {
    if (!edge.usable(tx) || edge.src == strategic || edge.dst == strategic) continue;
    ++offsets[idx(edge.src) + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::pair<std::uint32_t, Sat>> adjacency(offsets[n_]);
  auto fill = offsets;
  for (const auto& edge : graph.edges()) {
    if (!edge.usable(tx) || edge.src == strategic || edge.dst == strategic) continue;
    adjacency[fill[idx(edge.src)]++] = {idx(edge.dst), routing_weight(edge.policy, tx)};
  }

  dist_.assign(n_ * n_, kUnreachable);
  count_.assign(n_ * n_, 0);
  std::vector<char> settled(n_);
  using Entry = std::pair<Sat, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  for (std::uint32_t s = 0; s < n_; ++s) {
    if (s == idx(strategic)) continue;
    Sat* dist = &dist_[s * n_];
    PathCount* count = &count_[s * n_];
    std::fill(settled.begin(), settled.end(), 0);
    dist[s] = 0;
    count[s] = 1;
    heap.emplace(0, s);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (settled[u]) continue;
      settled[u] = 1;
      for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k) {
        const auto [v, w] = adjacency[k];
        if (settled[v]) continue;
        const Sat nd = add_dist(d, w);
        if (nd < dist[v]) {
          dist[v] = nd;
          count[v] = count[u];
          heap.emplace(nd, v);
        } else if (nd == dist[v]) {
          count[v] = checked_add(count[v], count[u]);
        }
      }
    }
  }
}

const CandidateObjective::Group* CandidateObjective::group_at_or_above(Sat fee,
                                                                       std::size_t& below) const {
  auto it = std::lower_bound(groups_.begin(), groups_.end(), fee,
                             [](const Group& g, Sat f) { return g.tie_fee < f; });
  below = it == groups_.begin() ? 0 : std::prev(it)->cumulative_pairs;
  return it == groups_.end() ? nullptr : &*it;
}

RewardSplit CandidateObjective::evaluate(Sat fee) const {
  const Sat weight = std::max<Sat>(fee, 1);
  std::size_t below = 0;
  const Group* at = group_at_or_above(weight, below);
  const std::size_t index = at ? static_cast<std::size_t>(at - groups_.data()) : groups_.size();

  RewardSplit split;
  split.others = unaffected_;
  if (index > 0) split.others += groups_[index - 1].cumulative_others;

  std::size_t won = always_won_ + contested_ - below;
  Rational tied_share(0);
  if (at && at->tie_fee == weight) {
    won -= at->last - at->first;
    FractionSum share, others;
    for (std::size_t i = at->first; i < at->last; ++i) {
      const auto& pair = tied_[i];
      const PathCount total = checked_add(pair.base_count, pair.via_count);
      share.add(pair.via_count, total);
      others.add(pair.other_weighted, total);
    }
    tied_share = share.value();
    split.others += others.value();
  }
  split.candidate = Rational(to_bigint(fee)) * (Rational(to_bigint(won)) + tied_share);
  return split;
}

Rational CandidateObjective::betweenness(Sat fee) const {
  const Sat weight = std::max<Sat>(fee, 1);
  std::size_t below = 0;
  const Group* at = group_at_or_above(weight, below);
  std::size_t won = always_won_ + contested_ - below;
  FractionSum share;
  if (at && at->tie_fee == weight) {
    won -= at->last - at->first;
    for (std::size_t i = at->first; i < at->last; ++i) {
      const auto& pair = tied_[i];
      share.add(pair.via_count, checked_add(pair.base_count, pair.via_count));
    }
  }
  return Rational(to_bigint(won)) + share.value();
}

StrategicRouting::StrategicRouting(const PcnGraph& graph, NodeIndex strategic, TxAmount tx)
    : StrategicRouting(graph, strategic, tx, Scope{}) {}

StrategicRouting::StrategicRouting(const PcnGraph& graph, NodeIndex strategic, TxAmount tx,
                                   const Scope& scope)
    : StrategicRouting(std::make_shared<const BaseRouting>(graph, strategic, tx), graph, strategic,
                       tx, scope) {}

StrategicRouting::StrategicRouting(std::shared_ptr<const BaseRouting> base, const PcnGraph& graph,
                                   NodeIndex strategic, TxAmount tx, const Scope& scope)
    : base_(std::move(base)), strategic_(strategic), tx_(tx), n_(graph.node_count()) {
  if (!base_ || base_->node_count() != n_) {
    throw std::invalid_argument("base routing does not match the graph");
  }
  if (idx(strategic) >= n_) throw std::out_of_range("strategic node out of range");
  neighbor_.assign(n_, 0);
  in_dist_.assign(n_, kUnreachable);
  in_count_.assign(n_, 0);
  out_dist_.assign(n_, kUnreachable);
  out_count_.assign(n_, 0);
  out_weighted_.assign(n_, 0);

  for (EdgeIndex e : graph.in_edges(strategic)) {
    const auto& edge = graph.edge(e);
    neighbor_[idx(edge.src)] = 1;
    if (edge.usable(tx)) add_incoming(edge.src, routing_weight(edge.policy, tx));
  }
  for (EdgeIndex e : graph.out_edges(strategic)) {
    const auto& edge = graph.edge(e);
    if (scope.omit_out == e) continue;
    neighbor_[idx(edge.dst)] = 1;
    if (!edge.usable(tx)) continue;
    const bool rewarded =
        !scope.rewarded || std::find(scope.rewarded->begin(), scope.rewarded->end(), e) !=
                               scope.rewarded->end();
    add_outgoing({edge.dst, routing_weight(edge.policy, tx), edge_fee(edge.policy, tx), rewarded});
  }
}

void StrategicRouting::add_incoming(NodeIndex from, Sat weight) {
  const auto u = idx(from);
  for (std::uint32_t s = 0; s < n_; ++s) {
    if (s == idx(strategic_)) continue;
    const Sat d = add_dist(base_->dist(s, u), weight);
    if (d == kUnreachable) continue;
    if (d < in_dist_[s]) {
      in_dist_[s] = d;
      in_count_[s] = base_->count(s, u);
    } else if (d == in_dist_[s]) {
      in_count_[s] = checked_add(in_count_[s], base_->count(s, u));
    }
  }
}

void StrategicRouting::add_outgoing(const Channel& channel) {
  out_.push_back(channel);
  const auto p = idx(channel.peer);
  const PathCount fee = channel.rewarded ? channel.fee : 0;
  for (std::uint32_t t = 0; t < n_; ++t) {
    if (t == idx(strategic_)) continue;
    const Sat d = add_dist(channel.weight, base_->dist(p, t));
    if (d == kUnreachable) continue;
    const PathCount paths = base_->count(p, t);
    if (d < out_dist_[t]) {
      out_dist_[t] = d;
      out_count_[t] = paths;
      out_weighted_[t] = checked_mul(fee, paths);
    } else if (d == out_dist_[t]) {
      out_count_[t] = checked_add(out_count_[t], paths);
      out_weighted_[t] = checked_add(out_weighted_[t], checked_mul(fee, paths));
    }
  }
}

void StrategicRouting::add_channel(NodeIndex peer, const ChannelPolicy& out_policy,
                                   const ChannelPolicy& in_policy) {
  if (peer == strategic_) throw std::invalid_argument("cannot open a channel to self");
  neighbor_.at(idx(peer)) = 1;
  add_incoming(peer, routing_weight(in_policy, tx_));
  add_outgoing({peer, routing_weight(out_policy, tx_), edge_fee(out_policy, tx_), true});
}

Rational StrategicRouting::total_reward() const {
  FractionSum sum;
  const auto a = idx(strategic_);
  for (std::uint32_t s = 0; s < n_; ++s) {
    if (s == a || in_dist_[s] == kUnreachable) continue;
    for (std::uint32_t t = 0; t < n_; ++t) {
      if (t == a || t == s || out_weighted_[t] == 0) continue;
      const Sat through = add_dist(in_dist_[s], out_dist_[t]);
      const Sat direct = base_->dist(s, t);
      if (through > direct) continue;
      PathCount paths = checked_mul(in_count_[s], out_count_[t]);
      if (through == direct) paths = checked_add(paths, base_->count(s, t));
      sum.add(checked_mul(in_count_[s], out_weighted_[t]), paths);
    }
  }
  return sum.value();
}

std::vector<Rational> StrategicRouting::channel_betweenness() const {
  std::vector<FractionSum> sums(out_.size());
  const auto a = idx(strategic_);
  for (std::uint32_t s = 0; s < n_; ++s) {
    if (s == a || in_dist_[s] == kUnreachable) continue;
    for (std::uint32_t t = 0; t < n_; ++t) {
      if (t == a || t == s || out_dist_[t] == kUnreachable) continue;
      const Sat through = add_dist(in_dist_[s], out_dist_[t]);
      const Sat direct = base_->dist(s, t);
      if (through > direct) continue;
      PathCount paths = checked_mul(in_count_[s], out_count_[t]);
      if (through == direct) paths = checked_add(paths, base_->count(s, t));
      for (std::size_t j = 0; j < out_.size(); ++j) {
        const auto p = idx(out_[j].peer);
        if (add_dist(out_[j].weight, base_->dist(p, t)) != out_dist_[t]) continue;
        sums[j].add(checked_mul(in_count_[s], base_->count(p, t)), paths);
      }
    }
  }
  std::vector<Rational> out;
  out.reserve(sums.size());
  for (const auto& sum : sums) out.push_back(sum.value());
  return out;
}

std::vector<Rational> StrategicRouting::channel_rewards() const {
  auto rewards = channel_betweenness();
  for (std::size_t j = 0; j < out_.size(); ++j) {
    rewards[j] *= out_[j].rewarded ? Rational(to_bigint(out_[j].fee)) : Rational(0);
  }
  return rewards;
}

CandidateObjective StrategicRouting::candidate(NodeIndex peer,
                                               std::optional<ChannelPolicy> in_policy) const {
  if (peer == strategic_) throw std::invalid_argument("cannot open a channel to self");
  const auto a = idx(strategic_);
  const auto c = idx(peer);

  auto in_dist = in_dist_;
  auto in_count = in_count_;
  if (in_policy) {
    const Sat w = routing_weight(*in_policy, tx_);
    for (std::uint32_t s = 0; s < n_; ++s) {
      if (s == a) continue;
      const Sat d = add_dist(base_->dist(s, c), w);
      if (d == kUnreachable) continue;
      if (d < in_dist[s]) {
        in_dist[s] = d;
        in_count[s] = base_->count(s, c);
      } else if (d == in_dist[s]) {
        in_count[s] = checked_add(in_count[s], base_->count(s, c));
      }
    }
  }

  struct Contested {
    Sat tie_fee;
    CandidateObjective::TiedPair pair;
  };
  std::vector<Contested> contested;
  CandidateObjective objective;
  objective.peer_ = peer;
  FractionSum unaffected;

  for (std::uint32_t s = 0; s < n_; ++s) {
    if (s == a || in_dist[s] == kUnreachable) continue;
    for (std::uint32_t t = 0; t < n_; ++t) {
      if (t == a || t == s) continue;
      // Shortest paths without the candidate edge.
      const Sat through = add_dist(in_dist[s], out_dist_[t]);
      const Sat direct = base_->dist(s, t);
      const Sat best = std::min(through, direct);
      PathCount paths = 0;
      PathCount weighted = 0;
      if (best != kUnreachable) {
        if (direct == best) paths = base_->count(s, t);
        if (through == best) {
          paths = checked_add(paths, checked_mul(in_count[s], out_count_[t]));
          weighted = checked_mul(in_count[s], out_weighted_[t]);
        }
      }
      const Sat via_base = add_dist(in_dist[s], base_->dist(c, t));
      if (via_base == kUnreachable) {
        unaffected.add(weighted, paths);
        continue;
      }
      if (best == kUnreachable) {
        ++objective.always_won_;
        continue;
      }
      if (best <= via_base) {  // candidate costs at least 1, so it never ties or wins
        unaffected.add(weighted, paths);
        continue;
      }
      contested.push_back(
          {best - via_base, {checked_mul(in_count[s], base_->count(c, t)), paths, weighted}});
    }
  }
  objective.unaffected_ = unaffected.value();
  objective.contested_ = contested.size();

  std::stable_sort(contested.begin(), contested.end(),
                   [](const Contested& x, const Contested& y) { return x.tie_fee < y.tie_fee; });
  objective.tied_.reserve(contested.size());
  Rational running(0);
  FractionSum group_sum;
  for (std::size_t i = 0; i < contested.size();) {
    const Sat tie = contested[i].tie_fee;
    const std::size_t first = i;
    group_sum.clear();
    for (; i < contested.size() && contested[i].tie_fee == tie; ++i) {
      objective.tied_.push_back(contested[i].pair);
      group_sum.add(contested[i].pair.other_weighted, contested[i].pair.base_count);
    }
    running += group_sum.value();
    objective.groups_.push_back({tie, first, i, i, running});
  }
  return objective;
}

}  // namespace pcnfee
