#include "fixtures.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace pcnfee::testing {

namespace {

std::string padded(const char* prefix, std::size_t i) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%s%02zu", prefix, i);
  return buffer;
}

Sat draw(std::mt19937_64& rng, Sat lo, Sat hi) {
  return std::uniform_int_distribution<Sat>(lo, hi)(rng);
}

}  // namespace

PcnGraph random_digraph(std::mt19937_64& rng, const RandomDigraphOptions& options) {
  PcnGraph graph;
  for (std::size_t i = 0; i < options.nodes; ++i) graph.add_node(padded("v", i));
  std::bernoulli_distribution present(options.edge_probability);
  std::bernoulli_distribution thin(options.thin_fraction);
  for (std::size_t s = 0; s < options.nodes; ++s) {
    for (std::size_t t = 0; t < options.nodes; ++t) {
      if (s == t || !present(rng)) continue;
      const Sat capacity = thin(rng) ? kTx - 1 : kRoomy;
      graph.add_edge({node_at(s), node_at(t), flat(draw(rng, options.min_weight, options.max_weight)),
                      capacity});
    }
  }
  return graph;
}

StrategicInstance random_strategic_instance(std::mt19937_64& rng, std::size_t nodes,
                                            std::size_t prior_channels) {
  StrategicInstance out;
  out.graph = random_digraph(rng, {nodes - 1, 0.3, 1, 20, 0.1});
  out.strategic = out.graph.add_node("zz");
  std::vector<std::size_t> peers(nodes - 1);
  for (std::size_t i = 0; i < peers.size(); ++i) peers[i] = i;
  std::shuffle(peers.begin(), peers.end(), rng);
  prior_channels = std::min(prior_channels, peers.size() - 1);
  for (std::size_t k = 0; k < prior_channels; ++k) {
    out.graph.add_edge({out.strategic, node_at(peers[k]), flat(draw(rng, 1, 20)), kRoomy, true});
    out.graph.add_edge({node_at(peers[k]), out.strategic, flat(draw(rng, 1, 20)), kRoomy, true});
  }
  for (EdgeIndex e : out.graph.out_edges(out.strategic)) out.prior.push_back(e);
  const NodeIndex peer = node_at(peers[prior_channels]);
  out.candidate = out.graph.add_edge({out.strategic, peer, flat(1), kRoomy, true});
  out.graph.add_edge({peer, out.strategic, flat(draw(rng, 1, 20)), kRoomy, true});
  return out;
}

ThreeNode three_node(Sat fee) {
  ThreeNode out;
  out.s = out.graph.add_node("S");
  out.a = out.graph.add_node("A");
  out.r = out.graph.add_node("R");
  out.graph.add_edge({out.s, out.a, flat(10), kRoomy});
  out.graph.add_edge({out.s, out.r, flat(100), kRoomy});
  out.candidate = out.graph.add_edge({out.a, out.r, flat(fee), kRoomy, true});
  return out;
}

SixNode six_node() {
  SixNode out;
  auto& g = out.graph;
  for (const char* id : {"a", "b", "c", "d", "e", "f"}) g.add_node(id);
  const auto n = [&](const char* id) { return g.index_of(id); };
  const auto both = [&](const char* x, const char* y, Sat w1, Sat w2) {
    g.add_edge({n(x), n(y), flat(w1), kRoomy});
    g.add_edge({n(y), n(x), flat(w2), kRoomy});
  };
  both("a", "b", 4, 6);
  both("b", "c", 5, 3);
  both("c", "d", 7, 2);
  both("d", "e", 3, 8);
  both("e", "f", 2, 4);
  both("a", "f", 30, 25);
  both("b", "e", 40, 35);
  out.strategic = g.add_node("s");
  g = add_channel(std::move(g), out.strategic, n("a"), flat(3), flat(2), kRoomy);
  return out;
}

PcnGraph diamond() {
  PcnGraph g;
  const auto s = g.add_node("S"), x = g.add_node("X"), y = g.add_node("Y"), r = g.add_node("R");
  g.add_edge({s, x, flat(1), kRoomy});
  g.add_edge({s, y, flat(1), kRoomy});
  g.add_edge({x, r, flat(1), kRoomy});
  g.add_edge({y, r, flat(1), kRoomy});
  return g;
}

PcnGraph star(std::size_t leaves) {
  PcnGraph g;
  const auto c = g.add_node("c");
  for (std::size_t i = 1; i <= leaves; ++i) {
    const auto leaf = g.add_node("l" + std::to_string(i));
    g.add_edge({leaf, c, flat(1), kRoomy});
    g.add_edge({c, leaf, flat(1), kRoomy});
  }
  return g;
}

}  // namespace pcnfee::testing
