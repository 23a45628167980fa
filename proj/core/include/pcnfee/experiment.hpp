#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcnfee/graph.hpp"
#include "pcnfee/rational.hpp"
#include "pcnfee/strategy.hpp"

namespace pcnfee {

/// Transaction size classes: 100, 10'000 and 1'000'000 sat.
enum class TxClass { micro, medium, macro };

Sat class_amount(TxClass tx_class);
std::optional<TxClass> parse_tx_class(const std::string& name);

inline const std::vector<std::string> kAllStrategies{"greedy", "degree", "betweenness",
                                                     "pagerank", "random"};

struct ExperimentConfig {
  std::filesystem::path snapshot;
  Sat tx_amount = 10'000;
  std::size_t n_channels = 10;
  std::vector<std::string> strategies = kAllStrategies;
  std::vector<std::string> fee_modes = {"default", "optimized"};
  std::uint64_t seed = 1;
  Sat f_max = kChannelCost;
  unsigned divisions = 10;
  ChannelPolicy default_policy = kDefaultPolicy;
  /// Id under which the strategic node joins the network.
  std::string strategic_id = "strategic";
  /// Open two default-fee channels to the two highest-degree nodes first.
  bool seed_channels = true;
  /// Coin budget; caps the channel count at floor(budget / tx_amount).
  std::optional<Sat> budget;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  /// n_channels after applying the budget cap.
  std::size_t channel_limit() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Opens default-policy channels (both directions, given capacity) from
/// `strategic` to the two highest-degree other nodes, ties by node id.
/// Returns the graph and the chosen peers.
PcnGraph seed_initial_channels(PcnGraph graph, NodeIndex strategic, const ChannelPolicy& policy,
                               Sat capacity, std::vector<NodeIndex>* chosen = nullptr);

struct SeriesPoint {
  std::size_t step = 0;
  std::string peer;
  Sat fee = 0;
  Rational total_reward;
  std::size_t evaluations = 0;
  double seconds = 0.0;

  bool operator==(const SeriesPoint&) const = default;
};

struct Series {
  std::string strategy;
  std::string fee_mode;
  std::vector<SeriesPoint> points;
  bool truncated = false;
  /// Set when the strategy failed; points hold whatever completed.
  std::string error;

  bool operator==(const Series&) const = default;
};

struct RunReport {
  ExperimentConfig config;
  std::size_t snapshot_nodes = 0;
  std::size_t snapshot_edges = 0;
  /// Directed edges left after capacity filtering for the configured amount.
  std::size_t filtered_edges = 0;
  std::vector<std::string> seeded_peers;
  Rational initial_reward;
  std::vector<Series> series;

  bool operator==(const RunReport&) const = default;
};

/// Runs every (strategy, fee mode) combination on `network`: capacity filter,
/// add the strategic node, seed, then open channels step by step.
RunReport run_experiment(const ExperimentConfig& config, const PcnGraph& network);
/// Same, reading config.snapshot.
RunReport run_experiment(const ExperimentConfig& config);

/// Rebuilds the final graph of one series (for re-checking rewards).
PcnGraph reconstruct_graph(const RunReport& report, const Series& series, const PcnGraph& network);

enum class ReportFormat { csv, json };

void write_report_csv(std::ostream& out, const RunReport& report);
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Writes report.csv or report.json under out_dir (created if needed) and
/// returns the file path.
std::filesystem::path emit_report(const RunReport& report, ReportFormat format,
                                  const std::filesystem::path& out_dir);

}  // namespace pcnfee
