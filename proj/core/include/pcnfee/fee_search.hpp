#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "pcnfee/graph.hpp"
#include "pcnfee/rational.hpp"
#include "pcnfee/routing.hpp"

namespace pcnfee {

/// Closed integer fee range searched for the best channel fee.
struct FeeInterval {
  Sat lo = 1;
  Sat hi = kChannelCost;
};

struct FeeSearchResult {
  Sat best_fee = 1;
  Rational best_reward;
  /// Distinct fees whose TotalER was computed.
  std::size_t evaluations = 0;
  /// Sub-intervals discarded by the reward bound.
  std::size_t pruned_intervals = 0;
};

/// Candidate-reward / other-channels split at a given fee.
using FeeObjective = std::function<RewardSplit(Sat fee)>;

/// Largest fee f2 = floor(f1 * r3 / r1) such that every fee in (f1, f2]
/// earns the candidate at most r3, given the candidate earns r1 at f1 and
/// r3 at f3 > f1. nullopt when no bound applies (r1 == 0 or r3 <= r1).
std::optional<Sat> prune_bound(Sat f1, const Rational& r1, Sat f3, const Rational& r3);

/// Recursive interval search for the fee maximising TotalER on
/// [interval.lo, interval.hi]. Splits into `divisions` sub-intervals,
/// evaluates their endpoints, and recurses into every sub-interval whose
/// upper bound r_i * f_{i+1} / f_i + r'_{i+1} can still beat the incumbent.
/// Returns the same maximum as an exhaustive scan; ties go to the smaller fee.
FeeSearchResult fee_search(const FeeObjective& objective, FeeInterval interval,
                           unsigned divisions);

/// TotalER of `candidate` (an outgoing edge of the strategic node, already in
/// the graph) priced at `fee`, with `prior` the strategic node's other
/// rewarded channels at their current policies.
RewardSplit total_er(const PcnGraph& graph, std::span<const EdgeIndex> prior, EdgeIndex candidate,
                     Sat fee, TxAmount tx, Sat f_max = kChannelCost);

FeeSearchResult fee_search(const PcnGraph& graph, std::span<const EdgeIndex> prior,
                           EdgeIndex candidate, FeeInterval interval, unsigned divisions,
                           TxAmount tx);

}  // namespace pcnfee
