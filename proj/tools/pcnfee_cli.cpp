#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcnfee/experiment.hpp"
#include "pcnfee/snapshot.hpp"
#include "pcnfee/synthetic.hpp"

namespace {

using namespace pcnfee;

struct RunArgs {
  std::string snapshot;
  std::optional<Sat> tx_amount;
  std::string tx_class;
  std::size_t channels = 10;
  std::vector<std::string> strategies = kAllStrategies;
  std::vector<std::string> fee_modes = {"default", "optimized"};
  std::uint64_t seed = 1;
  Sat f_max = kChannelCost;
  unsigned divisions = 10;
  std::string out = "out";
  std::string format = "csv";
  std::optional<Sat> budget;
};

int run(const RunArgs& args) {
  ExperimentConfig config;
  config.snapshot = args.snapshot;
  if (args.tx_amount) {
    config.tx_amount = *args.tx_amount;
  } else if (!args.tx_class.empty()) {
    const auto tx_class = parse_tx_class(args.tx_class);
    if (!tx_class) throw std::invalid_argument("unknown transaction class: " + args.tx_class);
    if (*tx_class == TxClass::micro) {
      std::cerr << "note: the micro class has very cheap fees relative to base fees; results are "
                   "dominated by base fees\n";
    }
    config.tx_amount = class_amount(*tx_class);
  }
  config.n_channels = args.channels;
  config.strategies = args.strategies;
  config.fee_modes = args.fee_modes;
  config.seed = args.seed;
  config.f_max = args.f_max;
  config.divisions = args.divisions;
  config.budget = args.budget;
  config.validate();

  const auto ingested = ingest_snapshot(config.snapshot, config.default_policy);
  for (const auto& warning : ingested.warnings) std::cerr << "warning: " << warning << '\n';
  const auto report = run_experiment(config, ingested.graph);

  int failed = 0;
  for (const auto& series : report.series) {
    std::cerr << series.strategy << '/' << series.fee_mode << ": " << series.points.size()
              << " steps";
    if (!series.points.empty()) {
      std::fprintf(stderr, ", final reward %.6f", series.points.back().total_reward.get_d());
    }
    if (series.truncated) std::cerr << " (ran out of peers)";
    if (!series.error.empty()) {
      std::cerr << " FAILED: " << series.error;
      ++failed;
    }
    std::cerr << '\n';
  }
  const auto path = emit_report(report, args.format == "json" ? ReportFormat::json : ReportFormat::csv,
                                args.out);
  std::cout << path.string() << '\n';
  return failed == 0 ? 0 : 1;
}

int gen_synthetic(const SyntheticOptions& options, const std::string& out) {
  const auto snapshot = generate_synthetic(options);
  if (out == "-") {
    write_snapshot(std::cout, snapshot);
    return 0;
  }
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out);
  write_snapshot(file, snapshot);
  if (!file) throw std::runtime_error("failed writing " + out);
  std::cerr << "wrote " << snapshot.nodes.size() << " nodes, " << snapshot.channels.size()
            << " channels to " << out << '\n';
  return 0;
}

int validate_snapshot(const std::string& path) {
  const auto result = ingest_snapshot(path);
  for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << '\n';
  const auto& g = result.graph;
  std::cout << "nodes " << g.node_count() << '\n'
            << "directed_edges " << g.edge_count() << '\n'
            << "channels_read " << result.channels_read << '\n'
            << "skipped_channels " << result.skipped_channels << '\n'
            << "defaulted_policies " << result.defaulted_policies << '\n';
  for (TxClass c : {TxClass::micro, TxClass::medium, TxClass::macro}) {
    const Sat amount = class_amount(c);
    std::cout << "edges_at_" << amount << ' ' << filter_by_capacity(g, TxAmount(amount)).edge_count()
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel placement and fee optimisation for a payment channel network node.\n"
               "Every flag can also be set through a PCNFEE_* environment variable."};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run strategies on a snapshot and write a report");
  run_cmd->add_option("--snapshot", run_args.snapshot, "Normalized snapshot JSON")
      ->required()
      ->check(CLI::ExistingFile)
      ->envname("PCNFEE_SNAPSHOT");
  auto* amount = run_cmd->add_option("--tx-amount", run_args.tx_amount, "Transaction amount in sat")
                     ->check(CLI::PositiveNumber)
                     ->envname("PCNFEE_TX_AMOUNT");
  run_cmd->add_option("--tx-class", run_args.tx_class, "micro, medium (default) or macro")
      ->check(CLI::IsMember({"micro", "medium", "macro"}))
      ->excludes(amount)
      ->envname("PCNFEE_TX_CLASS");
  run_cmd->add_option("--channels", run_args.channels, "Channels to open")
      ->check(CLI::PositiveNumber)
      ->envname("PCNFEE_CHANNELS");
  run_cmd->add_option("--strategies", run_args.strategies, "Comma-separated strategies")
      ->delimiter(',')
      ->check(CLI::IsMember(kAllStrategies))
      ->envname("PCNFEE_STRATEGIES");
  run_cmd->add_option("--fee-mode", run_args.fee_modes, "Comma-separated: default, optimized")
      ->delimiter(',')
      ->check(CLI::IsMember({"default", "optimized"}))
      ->envname("PCNFEE_FEE_MODE");
  run_cmd->add_option("--seed", run_args.seed, "Seed for the random baseline")
      ->envname("PCNFEE_SEED");
  run_cmd->add_option("--f-max", run_args.f_max, "Largest fee searched")
      ->check(CLI::PositiveNumber)
      ->envname("PCNFEE_F_MAX");
  run_cmd->add_option("--d", run_args.divisions, "Sub-intervals per fee search level")
      ->check(CLI::Range(2u, 1u << 20))
      ->envname("PCNFEE_D");
  run_cmd->add_option("--out", run_args.out, "Output directory")->envname("PCNFEE_OUT");
  run_cmd->add_option("--format", run_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("PCNFEE_FORMAT");
  run_cmd->add_option("--budget", run_args.budget, "Coin budget; caps channels at budget / amount")
      ->envname("PCNFEE_BUDGET");

  SyntheticOptions synthetic;
  std::string synthetic_out = "-";
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a synthetic scale-free snapshot");
  gen_cmd->add_option("--nodes", synthetic.nodes, "Node count")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}))
      ->envname("PCNFEE_NODES");
  gen_cmd->add_option("--edges", synthetic.channels, "Channel count (two directed edges each)")
      ->envname("PCNFEE_EDGES");
  gen_cmd->add_option("--seed", synthetic.seed, "Generator seed")->envname("PCNFEE_SEED");
  gen_cmd->add_option("--out", synthetic_out, "Output file, - for stdout")->envname("PCNFEE_OUT");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate-snapshot", "Ingest a snapshot and report counts");
  validate_cmd->add_option("--snapshot", validate_path, "Normalized snapshot JSON")
      ->required()
      ->envname("PCNFEE_SNAPSHOT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(run_args);
    if (*gen_cmd) return gen_synthetic(synthetic, synthetic_out);
    if (*validate_cmd) return validate_snapshot(validate_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
