#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pcnfee/centrality.hpp"
#include "pcnfee/strategy.hpp"
#include "pcnfee_oracle/oracle.hpp"

namespace pcnfee {
namespace {

using testing::flat;
using testing::kRoomy;

const TxAmount kTx(testing::kTx);

StrategyOptions small_options(Sat f_max) {
  StrategyOptions options;
  options.fees = {1, f_max};
  options.in_policy = flat(2);
  options.capacity = kRoomy;
  return options;
}

TEST(Greedy, ZeroChannelsIsEmpty) {
  const auto fixture = testing::six_node();
  const auto run = greedy_select(fixture.graph, fixture.strategic, 0, kTx, FeeMode::optimized());
  EXPECT_TRUE(run.steps.empty());
  EXPECT_FALSE(run.truncated);
}

TEST(Greedy, SixNodeFixtureMatchesStepwiseExhaustiveSearch) {
  const auto fixture = testing::six_node();
  const Sat f_max = 300;
  const auto options = small_options(f_max);
  const auto run =
      greedy_select(fixture.graph, fixture.strategic, 2, kTx, FeeMode::optimized(), options);
  ASSERT_EQ(run.steps.size(), 2u);

  PcnGraph g = fixture.graph;
  for (const auto& step : run.steps) {
    const auto truth = oracle::exhaustive_step(g, fixture.strategic, kTx, f_max, options.in_policy);
    ASSERT_TRUE(truth);
    EXPECT_EQ(step.peer, truth->peer);
    EXPECT_EQ(step.fee, truth->fee);
    EXPECT_EQ(step.total_reward, truth->reward);
    g = add_channel(std::move(g), fixture.strategic, truth->peer, flat(truth->fee),
                    options.in_policy, kRoomy);
  }
}

TEST(Greedy, UnitFeeCapReducesToBetweenness) {
  auto fixture = testing::six_node();
  auto& g = fixture.graph;
  g.set_policy(*g.strategic_edge(fixture.strategic, g.index_of("a")), flat(1));
  const auto options = small_options(1);
  const auto run = greedy_select(g, fixture.strategic, 3, kTx, FeeMode::optimized(), options);
  ASSERT_EQ(run.steps.size(), 3u);
  PcnGraph current = g;
  for (const auto& step : run.steps) {
    Rational best(-1);
    for (std::size_t p = 0; p < current.node_count(); ++p) {
      const auto peer = node_at(p);
      if (peer == fixture.strategic || current.adjacent(fixture.strategic, peer)) continue;
      const auto trial = add_channel(current, fixture.strategic, peer, flat(1), flat(2), kRoomy);
      best = std::max(best, vertex_betweenness(trial, fixture.strategic, kTx));
    }
    current = add_channel(std::move(current), fixture.strategic, step.peer, flat(1), flat(2), kRoomy);
    EXPECT_EQ(step.fee, 1u);
    EXPECT_EQ(step.total_reward, vertex_betweenness(current, fixture.strategic, kTx));
    EXPECT_EQ(step.total_reward, best);
  }
}

TEST(Greedy, TruncatesWhenPeersRunOut) {
  const auto fixture = testing::six_node();
  const auto run = greedy_select(fixture.graph, fixture.strategic, 10, kTx,
                                 FeeMode::defaults(), small_options(50));
  EXPECT_EQ(run.steps.size(), 5u);
  EXPECT_TRUE(run.truncated);
}

TEST(Greedy, OptimizedSeriesIsNonDecreasing) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = testing::random_digraph(rng, {14, 0.25, 1, 20});
    const auto a = g.add_node("zz");
    const auto run = greedy_select(g, a, 4, kTx, FeeMode::optimized(), small_options(500));
    Rational previous = run.initial_reward;
    for (const auto& step : run.steps) {
      EXPECT_GE(step.total_reward, previous);
      previous = step.total_reward;
    }
  }
}

TEST(Greedy, RewardsMatchReconstructedGraph) {
  const auto fixture = testing::six_node();
  const auto options = small_options(200);
  for (const auto& mode : {FeeMode::optimized(), FeeMode::defaults(flat(9))}) {
    const auto run = greedy_select(fixture.graph, fixture.strategic, 3, kTx, mode, options);
    const auto final_graph = apply_run(fixture.graph, fixture.strategic, run, kTx, options);
    const auto out = final_graph.out_edges(fixture.strategic);
    EXPECT_EQ(run.steps.back().total_reward,
              expected_reward_total(final_graph, std::vector<EdgeIndex>(out.begin(), out.end()), kTx));
  }
}

TEST(Greedy, AuditRecordsEveryCandidate) {
  const auto fixture = testing::six_node();
  auto options = small_options(100);
  options.audit = true;
  const auto run = greedy_select(fixture.graph, fixture.strategic, 1, kTx, FeeMode::optimized(),
                                 options);
  ASSERT_EQ(run.steps.size(), 1u);
  EXPECT_EQ(run.steps[0].audit.size(), 5u);
  for (const auto& score : run.steps[0].audit) EXPECT_LE(score.reward, run.steps[0].total_reward);
}

TEST(Greedy, RejectsBadOptions) {
  const auto fixture = testing::six_node();
  auto options = small_options(100);
  options.divisions = 1;
  EXPECT_THROW(greedy_select(fixture.graph, fixture.strategic, 1, kTx, FeeMode::optimized(), options),
               std::invalid_argument);
  options = small_options(100);
  options.capacity = 5;
  EXPECT_THROW(greedy_select(fixture.graph, fixture.strategic, 1, kTx, FeeMode::optimized(), options),
               std::invalid_argument);
}

TEST(Baselines, DegreeOnStarPicksCenterFirst) {
  auto g = testing::star(4);
  const auto a = g.add_node("zz");
  const auto peers = rank_peers(g, a, kTx, Ranking::degree, 1);
  ASSERT_FALSE(peers.empty());
  EXPECT_EQ(g.id(peers.front()), "c");
  const auto run = baseline_select(g, a, 2, kTx, Ranking::degree, 1, FeeMode::defaults());
  ASSERT_EQ(run.steps.size(), 2u);
  EXPECT_EQ(run.steps[0].peer_id, "c");
  EXPECT_EQ(run.steps[1].peer_id, "l1");
  EXPECT_EQ(run.steps[0].fee, 1010u);
}

TEST(Baselines, ExcludeStrategicNodeAndNeighbors) {
  const auto fixture = testing::six_node();
  for (Ranking r : {Ranking::random, Ranking::degree, Ranking::betweenness, Ranking::pagerank}) {
    const auto peers = rank_peers(fixture.graph, fixture.strategic, kTx, r, 5);
    EXPECT_EQ(peers.size(), 5u) << ranking_name(r);
    for (NodeIndex p : peers) {
      EXPECT_NE(p, fixture.strategic);
      EXPECT_NE(fixture.graph.id(p), "a");
    }
  }
}

TEST(Baselines, RandomIsDeterministicPerSeed) {
  std::mt19937_64 rng(41);
  auto g = testing::random_digraph(rng, {30, 0.1});
  const auto a = g.add_node("zz");
  const auto first = rank_peers(g, a, kTx, Ranking::random, 99);
  EXPECT_EQ(first, rank_peers(g, a, kTx, Ranking::random, 99));
  EXPECT_NE(first, rank_peers(g, a, kTx, Ranking::random, 100));
}

TEST(Baselines, ParseNames) {
  EXPECT_EQ(parse_ranking("pagerank"), Ranking::pagerank);
  EXPECT_FALSE(parse_ranking("greedy"));
  EXPECT_EQ(parse_fee_mode("default", flat(4)).policy, flat(4));
  EXPECT_THROW(parse_fee_mode("cheap"), std::invalid_argument);
}

TEST(StrategyIo, CsvAndJson) {
  const auto fixture = testing::six_node();
  const auto run = greedy_select(fixture.graph, fixture.strategic, 2, kTx, FeeMode::optimized(),
                                 small_options(100));
  std::ostringstream csv;
  write_csv(csv, run);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  EXPECT_EQ(line, "step,peer,fee,reward");
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 2);
  EXPECT_NE(to_json(run).find("\"strategy\": \"greedy\""), std::string::npos);
}

}  // namespace
}  // namespace pcnfee
