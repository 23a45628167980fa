#include "pcnfee/fee_search.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pcnfee {

std::optional<Sat> prune_bound(Sat f1, const Rational& r1, Sat f3, const Rational& r3) {
  if (r1 <= 0 || r3 <= r1 || f3 <= f1) return std::nullopt;
  const Rational bound = Rational(to_bigint(f1)) * r3 / r1;
  BigInt floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (!floor_value.fits_ulong_p()) return std::numeric_limits<Sat>::max();
  return static_cast<Sat>(floor_value.get_ui());
}

namespace {

class IntervalSearch {
 public:
  IntervalSearch(const FeeObjective& objective, unsigned divisions)
      : objective_(objective), divisions_(divisions) {}

  void recurse(Sat lo, Sat hi) {
    if (hi - lo <= divisions_) {
      scan(lo, hi);
      return;
    }
    std::vector<Sat> points(divisions_ + 1);
    const Sat span = hi - lo;
    for (unsigned i = 0; i <= divisions_; ++i) {
      points[i] = lo + static_cast<Sat>(static_cast<PathCount>(span) * i / divisions_);
    }
    for (Sat f : points) evaluate(f);

    struct Bound {
      unsigned index;
      Rational value;
    };
    std::vector<Bound> bounds;
    for (unsigned i = 0; i < divisions_; ++i) {
      const Sat left = points[i], right = points[i + 1];
      if (right - left < 2) continue;  // no interior fees
      const auto& at_left = cache_.at(left);
      const auto& at_right = cache_.at(right);
      Rational ceiling = at_left.candidate * Rational(to_bigint(right)) / Rational(to_bigint(left)) +
                         at_right.others;
      bounds.push_back({i, std::move(ceiling)});
    }
    std::stable_sort(bounds.begin(), bounds.end(),
                     [](const Bound& x, const Bound& y) { return x.value > y.value; });
    for (const auto& bound : bounds) {
      const Sat left = points[bound.index];
      if (worth_exploring(bound.value, left + 1)) {
        recurse(left, points[bound.index + 1]);
      } else {
        ++result_.pruned_intervals;
      }
    }
  }

  void scan(Sat lo, Sat hi) {
    const RewardSplit upper = evaluate(hi);
    for (Sat f = lo; f < hi;) {
      const RewardSplit& here = evaluate(f);
      Sat next = f + 1;
      if (auto bound = prune_bound(f, here.candidate, hi, upper.candidate)) {
        // Fees strictly below f * r_hi / r_f earn strictly less than hi does.
        const bool exact = Rational(to_bigint(*bound)) * here.candidate ==
                           Rational(to_bigint(f)) * upper.candidate;
        next = std::max(next, exact ? *bound : *bound + 1);
      }
      f = std::min(next, hi);
    }
  }

  const RewardSplit& evaluate(Sat fee) {
    auto it = cache_.find(fee);
    if (it != cache_.end()) return it->second;
    it = cache_.emplace(fee, objective_(fee)).first;
    const Rational total = it->second.total();
    if (!have_best_ || total > result_.best_reward ||
        (total == result_.best_reward && fee < result_.best_fee)) {
      have_best_ = true;
      result_.best_reward = total;
      result_.best_fee = fee;
    }
    return it->second;
  }

  FeeSearchResult finish() {
    result_.evaluations = cache_.size();
    return std::move(result_);
  }

 private:
  bool worth_exploring(const Rational& ceiling, Sat smallest_interior) const {
    if (ceiling > result_.best_reward) return true;
    return ceiling == result_.best_reward && smallest_interior < result_.best_fee;
  }

  const FeeObjective& objective_;
  unsigned divisions_;
  std::map<Sat, RewardSplit> cache_;
  FeeSearchResult result_;
  bool have_best_ = false;
};

}  // namespace

FeeSearchResult fee_search(const FeeObjective& objective, FeeInterval interval,
                           unsigned divisions) {
  if (interval.lo < 1 || interval.lo > interval.hi) {
    throw std::invalid_argument("fee interval must satisfy 1 <= lo <= hi");
  }
  if (divisions < 2) throw std::invalid_argument("division parameter must be at least 2");
  IntervalSearch search(objective, divisions);
  search.recurse(interval.lo, interval.hi);
  return search.finish();
}

namespace {

StrategicRouting routing_for_candidate(const PcnGraph& graph, std::span<const EdgeIndex> prior,
                                       EdgeIndex candidate, TxAmount tx) {
  const NodeIndex owner = graph.edge(candidate).src;
  for (EdgeIndex e : prior) {
    if (graph.edge(e).src != owner) {
      throw std::invalid_argument("prior channels must leave the candidate's source node");
    }
    if (e == candidate) throw std::invalid_argument("candidate listed among prior channels");
  }
  StrategicRouting::Scope scope;
  scope.omit_out = candidate;
  scope.rewarded = std::vector<EdgeIndex>(prior.begin(), prior.end());
  return StrategicRouting(graph, owner, tx, scope);
}

FeeObjective objective_for(const PcnGraph& graph, const StrategicRouting& routing,
                           EdgeIndex candidate, TxAmount tx) {
  const auto& edge = graph.edge(candidate);
  if (!edge.usable(tx)) {
    return [others = routing.total_reward()](Sat) { return RewardSplit{Rational(0), others}; };
  }
  auto objective = std::make_shared<CandidateObjective>(routing.candidate(edge.dst, std::nullopt));
  return [objective](Sat fee) { return objective->evaluate(fee); };
}

}  // namespace

RewardSplit total_er(const PcnGraph& graph, std::span<const EdgeIndex> prior, EdgeIndex candidate,
                     Sat fee, TxAmount tx, Sat f_max) {
  if (fee < 1 || fee > f_max) throw std::invalid_argument("fee outside [1, f_max]");
  const auto routing = routing_for_candidate(graph, prior, candidate, tx);
  return objective_for(graph, routing, candidate, tx)(fee);
}

FeeSearchResult fee_search(const PcnGraph& graph, std::span<const EdgeIndex> prior,
                           EdgeIndex candidate, FeeInterval interval, unsigned divisions,
                           TxAmount tx) {
  const auto routing = routing_for_candidate(graph, prior, candidate, tx);
  return fee_search(objective_for(graph, routing, candidate, tx), interval, divisions);
}

}  // namespace pcnfee
