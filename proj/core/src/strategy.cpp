#include "pcnfee/strategy.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pcnfee/centrality.hpp"

namespace pcnfee {

std::string FeeMode::name() const { return kind == Kind::optimized ? "optimized" : "default"; }

FeeMode parse_fee_mode(const std::string& name, const ChannelPolicy& default_policy) {
  if (name == "optimized") return FeeMode::optimized();
  if (name == "default") return FeeMode::defaults(default_policy);
  throw std::invalid_argument("unknown fee mode: " + name);
}

std::string ranking_name(Ranking ranking) {
  switch (ranking) {
    case Ranking::random: return "random";
    case Ranking::degree: return "degree";
    case Ranking::betweenness: return "betweenness";
    case Ranking::pagerank: return "pagerank";
  }
  return "unknown";
}

std::optional<Ranking> parse_ranking(const std::string& name) {
  for (Ranking r : {Ranking::random, Ranking::degree, Ranking::betweenness, Ranking::pagerank}) {
    if (ranking_name(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

void check_options(const StrategyOptions& options, TxAmount tx) {
  if (options.fees.lo < 1 || options.fees.lo > options.fees.hi) {
    throw std::invalid_argument("fee range must satisfy 1 <= lo <= hi");
  }
  if (options.divisions < 2) throw std::invalid_argument("division parameter must be at least 2");
  if (options.capacity && *options.capacity < tx.value()) {
    throw std::invalid_argument("channel capacity below the transaction amount");
  }
}

struct Priced {
  Sat fee;
  ChannelPolicy policy;
  Rational reward;
  std::size_t evaluations;
};

Priced price_channel(const CandidateObjective& objective, const FeeMode& mode, TxAmount tx,
                     const StrategyOptions& options) {
  if (mode.kind == FeeMode::Kind::fixed) {
    const Sat fee = edge_fee(mode.policy, tx);
    return {fee, mode.policy, objective.evaluate(fee).total(), 1};
  }
  auto result = fee_search([&](Sat f) { return objective.evaluate(f); }, options.fees,
                           options.divisions);
  return {result.best_fee, ChannelPolicy{result.best_fee, 0}, std::move(result.best_reward),
          result.evaluations};
}

std::vector<NodeIndex> ids_ascending(const PcnGraph& graph) {
  std::vector<NodeIndex> nodes(graph.node_count());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = node_at(i);
  std::sort(nodes.begin(), nodes.end(),
            [&](NodeIndex a, NodeIndex b) { return graph.id(a) < graph.id(b); });
  return nodes;
}

StrategyStep commit(const PcnGraph& graph, StrategicRouting& routing, NodeIndex peer,
                    Priced priced, const StrategyOptions& options, Clock::time_point started) {
  routing.add_channel(peer, priced.policy, options.in_policy);
  StrategyStep step;
  step.peer = peer;
  step.peer_id = graph.id(peer);
  step.fee = priced.fee;
  step.out_policy = priced.policy;
  step.total_reward = std::move(priced.reward);
  step.evaluations = priced.evaluations;
  step.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return step;
}

}  // namespace

StrategyRun greedy_select(const PcnGraph& graph, NodeIndex strategic, std::size_t n_channels,
                          TxAmount tx, const FeeMode& fee_mode, const StrategyOptions& options) {
  return greedy_select(graph, StrategicRouting(graph, strategic, tx), n_channels, fee_mode,
                       options);
}

StrategyRun greedy_select(const PcnGraph& graph, StrategicRouting routing, std::size_t n_channels,
                          const FeeMode& fee_mode, const StrategyOptions& options) {
  check_options(options, routing.tx());
  StrategyRun run;
  run.strategy = "greedy";
  run.fee_mode = fee_mode;
  run.initial_reward = routing.total_reward();

  const auto order = ids_ascending(graph);
  while (run.steps.size() < n_channels) {
    const auto started = Clock::now();
    std::optional<NodeIndex> chosen;
    std::optional<Priced> best;
    std::size_t evaluations = 0;
    std::vector<CandidateScore> audit;
    for (NodeIndex peer : order) {
      if (peer == routing.strategic() || routing.is_neighbor(peer)) continue;
      const auto objective = routing.candidate(peer, options.in_policy);
      Priced priced = price_channel(objective, fee_mode, routing.tx(), options);
      evaluations += priced.evaluations;
      if (options.audit) audit.push_back({peer, priced.fee, priced.reward});
      if (!best || priced.reward > best->reward) {
        chosen = peer;
        best = std::move(priced);
      }
    }
    if (!chosen) {
      run.truncated = true;
      break;
    }
    best->evaluations = evaluations;
    auto step = commit(graph, routing, *chosen, std::move(*best), options, started);
    step.audit = std::move(audit);
    run.steps.push_back(std::move(step));
  }
  return run;
}

std::vector<NodeIndex> rank_peers(const PcnGraph& graph, NodeIndex strategic, TxAmount tx,
                                  Ranking ranking, std::uint64_t seed) {
  std::vector<NodeIndex> ranked;
  switch (ranking) {
    case Ranking::degree:
      ranked = degree_ranking(graph);
      break;
    case Ranking::betweenness: {
      const auto bc = vertex_betweenness_all(graph, tx);
      ranked = ids_ascending(graph);
      std::stable_sort(ranked.begin(), ranked.end(),
                       [&](NodeIndex a, NodeIndex b) { return bc[idx(a)] > bc[idx(b)]; });
      break;
    }
    case Ranking::pagerank: {
      const auto pr = pagerank(graph);
      ranked = ids_ascending(graph);
      std::stable_sort(ranked.begin(), ranked.end(),
                       [&](NodeIndex a, NodeIndex b) { return pr[idx(a)] > pr[idx(b)]; });
      break;
    }
    case Ranking::random: {
      ranked = ids_ascending(graph);
      std::mt19937_64 rng(seed);
      for (std::size_t i = ranked.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(ranked[i - 1], ranked[pick(rng)]);
      }
      break;
    }
  }
  std::erase_if(ranked, [&](NodeIndex n) { return n == strategic || graph.adjacent(strategic, n); });
  return ranked;
}

StrategyRun baseline_select(const PcnGraph& graph, NodeIndex strategic, std::size_t n_channels,
                            TxAmount tx, Ranking ranking, std::uint64_t seed,
                            const FeeMode& fee_mode, const StrategyOptions& options) {
  return baseline_select(graph, StrategicRouting(graph, strategic, tx), n_channels, ranking, seed,
                         fee_mode, options);
}

StrategyRun baseline_select(const PcnGraph& graph, StrategicRouting routing,
                            std::size_t n_channels, Ranking ranking, std::uint64_t seed,
                            const FeeMode& fee_mode, const StrategyOptions& options) {
  check_options(options, routing.tx());
  StrategyRun run;
  run.strategy = ranking_name(ranking);
  run.fee_mode = fee_mode;
  run.initial_reward = routing.total_reward();

  const auto peers = rank_peers(graph, routing.strategic(), routing.tx(), ranking, seed);
  for (NodeIndex peer : peers) {
    if (run.steps.size() >= n_channels) break;
    const auto started = Clock::now();
    const auto objective = routing.candidate(peer, options.in_policy);
    Priced priced = price_channel(objective, fee_mode, routing.tx(), options);
    run.steps.push_back(commit(graph, routing, peer, std::move(priced), options, started));
  }
  run.truncated = run.steps.size() < n_channels;
  return run;
}

PcnGraph apply_run(PcnGraph graph, NodeIndex strategic, const StrategyRun& run, TxAmount tx,
                   const StrategyOptions& options) {
  const Sat capacity = options.capacity.value_or(tx.value());
  for (const auto& step : run.steps) {
    graph = add_channel(std::move(graph), strategic, step.peer, step.out_policy, options.in_policy,
                        capacity);
  }
  return graph;
}

}  // namespace pcnfee
