#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pcnfee/centrality.hpp"
#include "pcnfee_oracle/oracle.hpp"

namespace pcnfee {
namespace {

using testing::flat;
using testing::kRoomy;

const TxAmount kTx(testing::kTx);

TEST(Oracle, DiamondMatchesBrandes) {
  const auto g = testing::diamond();
  EXPECT_EQ(oracle::enumerate_ebc(g, kTx, PairFilter::all()).per_edge,
            edge_betweenness(g, kTx).per_edge);
}

TEST(Oracle, SingleEdge) {
  PcnGraph g;
  const auto s = g.add_node("s"), t = g.add_node("t");
  const auto e = g.add_edge({s, t, flat(4), kRoomy});
  EXPECT_EQ(oracle::enumerate_ebc(g, kTx, PairFilter::all())[e], 1);
}

TEST(Oracle, ZeroFeeEdgesCostOne) {
  PcnGraph g;
  const auto s = g.add_node("s"), m = g.add_node("m"), t = g.add_node("t");
  g.add_edge({s, m, flat(0), kRoomy});
  g.add_edge({m, t, flat(0), kRoomy});
  const auto direct = g.add_edge({s, t, flat(2), kRoomy});
  // Both routes cost 2.
  EXPECT_EQ(oracle::enumerate_ebc(g, kTx, PairFilter::all())[direct], Rational(1, 2));
  EXPECT_EQ(edge_betweenness(g, kTx)[direct], Rational(1, 2));
}

TEST(Oracle, RefusesOversizedInputs) {
  std::mt19937_64 rng(1);
  const auto big = testing::random_digraph(rng, {13, 0.2});
  EXPECT_THROW(oracle::enumerate_ebc(big, kTx, PairFilter::all()), oracle::BudgetExceeded);
  const auto inst = testing::three_node(1);
  EXPECT_THROW(oracle::exhaustive_fee_scan(inst.graph, {}, inst.candidate, 1, 9000, kTx),
               oracle::BudgetExceeded);
}

TEST(Oracle, ExhaustiveScanThreeNode) {
  const auto inst = testing::three_node(1);
  const auto result = oracle::exhaustive_fee_scan(inst.graph, {}, inst.candidate, 1, 200, kTx);
  EXPECT_EQ(result.best_fee, 89u);
  EXPECT_EQ(result.best_reward, 89);
  EXPECT_EQ(result.evaluations, 200u);
}

TEST(Oracle, StepWhenAlreadyConnectedToAll) {
  PcnGraph g;
  const auto a = g.add_node("a"), b = g.add_node("b"), c = g.add_node("c");
  g = add_channel(std::move(g), a, b, flat(1), flat(1), kRoomy);
  g = add_channel(std::move(g), a, c, flat(1), flat(1), kRoomy);
  EXPECT_FALSE(oracle::exhaustive_step(g, a, kTx, 10));
}

TEST(Oracle, UnitFeeStepMaximisesBetweenness) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = testing::random_digraph(rng, {7, 0.35, 1, 6});
    const auto a = g.add_node("zz");
    const auto choice = oracle::exhaustive_step(g, a, kTx, 1, flat(1));
    ASSERT_TRUE(choice);
    Rational best(-1);
    for (std::size_t p = 0; p + 1 < g.node_count(); ++p) {
      const auto trial_graph = add_channel(g, a, node_at(p), flat(1), flat(1), kRoomy);
      best = std::max(best, oracle::enumerate_vertex_bc(trial_graph, a, kTx));
    }
    EXPECT_EQ(choice->reward, best);
  }
}

}  // namespace
}  // namespace pcnfee
