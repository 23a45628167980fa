#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pcnfee/centrality.hpp"
#include "pcnfee/experiment.hpp"
#include "pcnfee/synthetic.hpp"

namespace pcnfee {
namespace {

using testing::flat;
using testing::kRoomy;

PcnGraph synthetic_graph(std::size_t nodes, std::size_t channels, std::uint64_t seed) {
  SyntheticOptions options;
  options.nodes = nodes;
  options.channels = channels;
  options.seed = seed;
  return build_graph(generate_synthetic(options)).graph;
}

std::size_t csv_rows(const RunReport& report) {
  std::ostringstream out;
  write_report_csv(out, report);
  std::size_t lines = 0;
  for (char c : out.str()) lines += c == '\n';
  return lines - 1;
}

TEST(Seeding, StarPicksCenterThenFirstLeaf) {
  auto g = testing::star(4);
  const auto a = g.add_node("zz");
  std::vector<NodeIndex> chosen;
  g = seed_initial_channels(std::move(g), a, kDefaultPolicy, 10'000, &chosen);
  ASSERT_EQ(chosen.size(), 2u);
  EXPECT_EQ(g.id(chosen[0]), "c");
  EXPECT_EQ(g.id(chosen[1]), "l1");
  EXPECT_EQ(g.out_edges(a).size(), 2u);
  EXPECT_EQ(g.in_edges(a).size(), 2u);
}

TEST(Seeding, TwoNodeGraphAndTooSmall) {
  PcnGraph g;
  g.add_node("x");
  g.add_node("y");
  const auto a = g.add_node("zz");
  std::vector<NodeIndex> chosen;
  seed_initial_channels(g, a, kDefaultPolicy, 10'000, &chosen);
  EXPECT_EQ(chosen.size(), 2u);

  PcnGraph tiny;
  tiny.add_node("x");
  const auto b = tiny.add_node("zz");
  EXPECT_THROW(seed_initial_channels(tiny, b, kDefaultPolicy, 10'000), std::invalid_argument);
}

TEST(Experiment, ClassesAndWeights) {
  EXPECT_EQ(class_amount(*parse_tx_class("micro")), 100u);
  EXPECT_EQ(class_amount(*parse_tx_class("medium")), 10'000u);
  EXPECT_EQ(class_amount(*parse_tx_class("macro")), 1'000'000u);
  EXPECT_FALSE(parse_tx_class("huge"));
  EXPECT_EQ(edge_fee(kDefaultPolicy, TxAmount(class_amount(TxClass::medium))), 1010u);
  EXPECT_EQ(edge_fee(kDefaultPolicy, TxAmount(class_amount(TxClass::macro))), 2000u);
}

TEST(Experiment, FilteredEdgeCountsShrinkWithAmount) {
  const auto g = synthetic_graph(150, 500, 3);
  const auto micro = filter_by_capacity(g, TxAmount(100)).edge_count();
  const auto medium = filter_by_capacity(g, TxAmount(10'000)).edge_count();
  const auto macro = filter_by_capacity(g, TxAmount(1'000'000)).edge_count();
  EXPECT_GE(micro, medium);
  EXPECT_GE(medium, macro);
  EXPECT_GT(medium, macro);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig config;
  EXPECT_NO_THROW(config.validate());
  config.n_channels = 0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.strategies = {"closeness"};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.fee_modes = {"free"};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.f_max = 0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.budget = 35'000;
  EXPECT_EQ(config.channel_limit(), 3u);
}

class SmallExperiment : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    network_ = new PcnGraph(synthetic_graph(40, 120, 9));
    ExperimentConfig config;
    config.n_channels = 3;
    config.f_max = 2000;
    report_ = new RunReport(run_experiment(config, *network_));
  }
  static void TearDownTestSuite() {
    delete report_;
    delete network_;
  }
  static PcnGraph* network_;
  static RunReport* report_;
};
PcnGraph* SmallExperiment::network_ = nullptr;
RunReport* SmallExperiment::report_ = nullptr;

TEST_F(SmallExperiment, FullMatrixHasTenSeries) {
  ASSERT_EQ(report_->series.size(), 10u);
  EXPECT_EQ(report_->seeded_peers.size(), 2u);
  for (const auto& series : report_->series) {
    EXPECT_TRUE(series.error.empty()) << series.error;
    EXPECT_EQ(series.points.size(), 3u);
  }
  EXPECT_EQ(csv_rows(*report_), 30u);
}

TEST_F(SmallExperiment, GreedyOptimizedNonDecreasing) {
  for (const auto& series : report_->series) {
    if (series.strategy != "greedy" || series.fee_mode != "optimized") continue;
    Rational previous = report_->initial_reward;
    for (const auto& point : series.points) {
      EXPECT_GE(point.total_reward, previous);
      previous = point.total_reward;
    }
  }
}

TEST_F(SmallExperiment, RewardsReproducibleOnReconstructedGraph) {
  for (const auto& series : report_->series) {
    const auto graph = reconstruct_graph(*report_, series, *network_);
    const auto a = graph.index_of(report_->config.strategic_id);
    const auto out = graph.out_edges(a);
    EXPECT_EQ(series.points.back().total_reward,
              expected_reward_total(graph, std::vector<EdgeIndex>(out.begin(), out.end()),
                                    TxAmount(report_->config.tx_amount)))
        << series.strategy << '/' << series.fee_mode;
  }
}

TEST_F(SmallExperiment, JsonRoundTrip) {
  EXPECT_EQ(report_from_json(report_to_json(*report_)), *report_);
}

TEST_F(SmallExperiment, SameSeedSameCsv) {
  ExperimentConfig config = report_->config;
  const auto again = run_experiment(config, *network_);
  std::ostringstream a, b;
  write_report_csv(a, *report_);
  write_report_csv(b, again);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Report, EmptyReportIsHeaderOnly) {
  std::ostringstream out;
  write_report_csv(out, RunReport{});
  EXPECT_EQ(out.str(),
            "strategy,fee_mode,step,peer_id,fee,total_reward_numerator,total_reward_denominator,"
            "reward_float\n");
}

TEST(Report, TwoStrategiesThreeSteps) {
  RunReport report;
  for (const char* name : {"greedy", "degree"}) {
    Series series{name, "default", {}, false, {}};
    for (std::size_t step = 1; step <= 3; ++step) {
      series.points.push_back({step, "n" + std::to_string(step), 1010, Rational(7, 3), 1, 0.0});
    }
    report.series.push_back(series);
  }
  EXPECT_EQ(csv_rows(report), 6u);
  std::ostringstream out;
  write_report_csv(out, report);
  EXPECT_NE(out.str().find("greedy,default,1,n1,1010,7,3,2.333333\n"), std::string::npos);
}

TEST(Report, EmitWritesFilesAndFailsOnBadPath) {
  const auto dir = std::filesystem::temp_directory_path() / "pcnfee_emit_test";
  std::filesystem::remove_all(dir);
  const auto path = emit_report(RunReport{}, ReportFormat::json, dir);
  EXPECT_EQ(path.filename(), "report.json");
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(report_from_json(text.str()), RunReport{});
  std::filesystem::remove_all(dir);
  EXPECT_THROW(emit_report(RunReport{}, ReportFormat::csv, "/proc/pcnfee/denied"),
               std::runtime_error);
}

TEST(Experiment, DuplicateStrategicIdRejected) {
  PcnGraph g = testing::star(3);
  ExperimentConfig config;
  config.strategic_id = "c";
  EXPECT_THROW(run_experiment(config, g), std::invalid_argument);
}

}  // namespace
}  // namespace pcnfee
