#include "pcnfee/experiment.hpp"

#include <memory>
#include <stdexcept>

#include "pcnfee/centrality.hpp"
#include "pcnfee/routing.hpp"
#include "pcnfee/snapshot.hpp"

namespace pcnfee {

Sat class_amount(TxClass tx_class) {
  switch (tx_class) {
    case TxClass::micro: return 100;
    case TxClass::medium: return 10'000;
    case TxClass::macro: return 1'000'000;
  }
  throw std::invalid_argument("unknown transaction class");
}

std::optional<TxClass> parse_tx_class(const std::string& name) {
  if (name == "micro") return TxClass::micro;
  if (name == "medium") return TxClass::medium;
  if (name == "macro") return TxClass::macro;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (tx_amount < 1) throw std::invalid_argument("transaction amount must be positive");
  if (n_channels < 1) throw std::invalid_argument("channel count must be at least 1");
  if (f_max < 1) throw std::invalid_argument("f_max must be at least 1");
  if (divisions < 2) throw std::invalid_argument("division parameter must be at least 2");
  if (strategic_id.empty()) throw std::invalid_argument("strategic node id must not be empty");
  for (const auto& name : strategies) {
    if (name != "greedy" && !parse_ranking(name)) {
      throw std::invalid_argument("unknown strategy: " + name);
    }
  }
  for (const auto& name : fee_modes) parse_fee_mode(name, default_policy);
}

std::size_t ExperimentConfig::channel_limit() const {
  if (!budget) return n_channels;
  return std::min<std::size_t>(n_channels, *budget / tx_amount);
}

PcnGraph seed_initial_channels(PcnGraph graph, NodeIndex strategic, const ChannelPolicy& policy,
                               Sat capacity, std::vector<NodeIndex>* chosen) {
  std::vector<NodeIndex> picks;
  for (NodeIndex n : degree_ranking(graph)) {
    if (picks.size() == 2) break;
    if (n == strategic || graph.adjacent(strategic, n)) continue;
    picks.push_back(n);
  }
  if (picks.size() < 2) {
    throw std::invalid_argument("seeding needs at least two other nodes");
  }
  for (NodeIndex peer : picks) {
    graph = add_channel(std::move(graph), strategic, peer, policy, policy, capacity);
  }
  if (chosen) *chosen = picks;
  return graph;
}

namespace {

struct Prepared {
  PcnGraph graph;
  NodeIndex strategic{};
  std::vector<NodeIndex> seeded;
};

Prepared prepare(const ExperimentConfig& config, const PcnGraph& network) {
  const TxAmount tx(config.tx_amount);
  Prepared out{filter_by_capacity(network, tx), {}, {}};
  if (out.graph.find(config.strategic_id)) {
    throw std::invalid_argument("strategic node id already in the network: " +
                                config.strategic_id);
  }
  out.strategic = out.graph.add_node(config.strategic_id);
  if (config.seed_channels) {
    out.graph = seed_initial_channels(std::move(out.graph), out.strategic, config.default_policy,
                                      config.tx_amount, &out.seeded);
  }
  return out;
}

StrategyOptions strategy_options(const ExperimentConfig& config) {
  StrategyOptions options;
  options.fees = {1, config.f_max};
  options.divisions = config.divisions;
  options.in_policy = config.default_policy;
  options.capacity = config.tx_amount;
  return options;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, const PcnGraph& network) {
  config.validate();
  const TxAmount tx(config.tx_amount);
  auto prepared = prepare(config, network);

  RunReport report;
  report.config = config;
  report.snapshot_nodes = network.node_count();
  report.snapshot_edges = network.edge_count();
  report.filtered_edges = filter_by_capacity(network, tx).edge_count();
  for (NodeIndex n : prepared.seeded) report.seeded_peers.push_back(prepared.graph.id(n));

  const StrategicRouting initial(prepared.graph, prepared.strategic, tx);
  report.initial_reward = initial.total_reward();
  const auto options = strategy_options(config);
  const std::size_t limit = config.channel_limit();

  for (const auto& strategy : config.strategies) {
    for (const auto& mode_name : config.fee_modes) {
      Series series{strategy, mode_name, {}, false, {}};
      try {
        const FeeMode mode = parse_fee_mode(mode_name, config.default_policy);
        StrategyRun run;
        if (strategy == "greedy") {
          run = greedy_select(prepared.graph, initial, limit, mode, options);
        } else {
          run = baseline_select(prepared.graph, initial, limit, *parse_ranking(strategy),
                                config.seed, mode, options);
        }
        series.truncated = run.truncated;
        for (std::size_t i = 0; i < run.steps.size(); ++i) {
          auto& step = run.steps[i];
          series.points.push_back({i + 1, step.peer_id, step.fee, std::move(step.total_reward),
                                   step.evaluations, step.seconds});
        }
      } catch (const std::exception& e) {
        series.error = e.what();
      }
      report.series.push_back(std::move(series));
    }
  }
  return report;
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  auto ingested = ingest_snapshot(config.snapshot, config.default_policy);
  return run_experiment(config, ingested.graph);
}

PcnGraph reconstruct_graph(const RunReport& report, const Series& series,
                           const PcnGraph& network) {
  const auto& config = report.config;
  const TxAmount tx(config.tx_amount);
  PcnGraph graph = filter_by_capacity(network, tx);
  const NodeIndex strategic = graph.add_node(config.strategic_id);
  for (const auto& id : report.seeded_peers) {
    graph = add_channel(std::move(graph), strategic, graph.index_of(id), config.default_policy,
                        config.default_policy, config.tx_amount);
  }
  const FeeMode mode = parse_fee_mode(series.fee_mode, config.default_policy);
  for (const auto& point : series.points) {
    const ChannelPolicy out =
        mode.kind == FeeMode::Kind::fixed ? mode.policy : ChannelPolicy{point.fee, 0};
    graph = add_channel(std::move(graph), strategic, graph.index_of(point.peer), out,
                        config.default_policy, config.tx_amount);
  }
  return graph;
}

}  // namespace pcnfee
