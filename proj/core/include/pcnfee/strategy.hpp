#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcnfee/fee_search.hpp"
#include "pcnfee/graph.hpp"
#include "pcnfee/rational.hpp"
#include "pcnfee/routing.hpp"

namespace pcnfee {

/// How the strategic node prices a newly opened channel.
struct FeeMode {
  enum class Kind { optimized, fixed };

  Kind kind = Kind::optimized;
  ChannelPolicy policy = kDefaultPolicy;  // used when kind == fixed

  static FeeMode optimized() { return {}; }
  static FeeMode defaults(const ChannelPolicy& policy = kDefaultPolicy) {
    return {Kind::fixed, policy};
  }
  /// "optimized" or "default".
  std::string name() const;
  bool operator==(const FeeMode&) const = default;
};

FeeMode parse_fee_mode(const std::string& name, const ChannelPolicy& default_policy = kDefaultPolicy);

struct StrategyOptions {
  FeeInterval fees{1, kChannelCost};
  unsigned divisions = 10;
  /// Policy of the peer->strategic edge of every opened channel.
  ChannelPolicy in_policy = kDefaultPolicy;
  /// Capacity of opened channels; defaults to the transaction amount.
  std::optional<Sat> capacity;
  /// Keep every candidate's best (fee, reward) per step.
  bool audit = false;
};

struct CandidateScore {
  NodeIndex peer;
  Sat fee;
  Rational reward;
};

struct StrategyStep {
  NodeIndex peer{};
  std::string peer_id;
  /// Fee of the new outgoing edge at the configured amount.
  Sat fee = 0;
  ChannelPolicy out_policy{};
  /// Strategic node's total expected reward once this channel is open.
  Rational total_reward;
  std::size_t evaluations = 0;
  double seconds = 0.0;
  std::vector<CandidateScore> audit;
};

struct StrategyRun {
  std::string strategy;
  FeeMode fee_mode;
  Rational initial_reward;
  std::vector<StrategyStep> steps;
  /// Fewer eligible peers than requested channels.
  bool truncated = false;
};

/// Greedy channel selection: each step tries a channel to every node not yet
/// adjacent to `strategic`, prices it per fee_mode, and opens the one with
/// the highest total reward (ties go to the smallest node id). Earlier fees
/// stay fixed.
StrategyRun greedy_select(const PcnGraph& graph, NodeIndex strategic, std::size_t n_channels,
                          TxAmount tx, const FeeMode& fee_mode,
                          const StrategyOptions& options = {});
StrategyRun greedy_select(const PcnGraph& graph, StrategicRouting routing, std::size_t n_channels,
                          const FeeMode& fee_mode, const StrategyOptions& options = {});

enum class Ranking { random, degree, betweenness, pagerank };

std::string ranking_name(Ranking ranking);
std::optional<Ranking> parse_ranking(const std::string& name);

/// Eligible peers (not `strategic`, not already adjacent) ordered by the
/// ranking on `graph`; ties by node id.
std::vector<NodeIndex> rank_peers(const PcnGraph& graph, NodeIndex strategic, TxAmount tx,
                                  Ranking ranking, std::uint64_t seed);

/// Opens channels to the top n_channels peers of a centrality ranking
/// computed once on the initial graph.
StrategyRun baseline_select(const PcnGraph& graph, NodeIndex strategic, std::size_t n_channels,
                            TxAmount tx, Ranking ranking, std::uint64_t seed,
                            const FeeMode& fee_mode, const StrategyOptions& options = {});
StrategyRun baseline_select(const PcnGraph& graph, StrategicRouting routing,
                            std::size_t n_channels, Ranking ranking, std::uint64_t seed,
                            const FeeMode& fee_mode, const StrategyOptions& options = {});

/// The graph after opening every channel of the run.
PcnGraph apply_run(PcnGraph graph, NodeIndex strategic, const StrategyRun& run, TxAmount tx,
                   const StrategyOptions& options = {});

std::string to_json(const StrategyRun& run);
/// step,peer,fee,reward rows (reward as an exact fraction).
void write_csv(std::ostream& out, const StrategyRun& run);

}  // namespace pcnfee
