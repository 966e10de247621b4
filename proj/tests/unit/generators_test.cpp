#include <gtest/gtest.h>

#include "cwg/balance.hpp"
#include "cwg/cycles.hpp"
#include "cwg/generators.hpp"
#include "cwg/io.hpp"
#include "cwg/partition.hpp"
#include "oracles.hpp"

namespace cwg {
namespace {

GeneratorConfig four_partite(std::size_t n, double p, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.node_count = n;
  cfg.edge_probability = p;
  cfg.signature_set = four_partite_signatures();
  cfg.seed = seed;
  return cfg;
}

TEST(PortableRng, KnownStreamAndRanges) {
  PortableRng a(5), b(5);
  for (int k = 0; k < 100; ++k) {
    const double u = a.uniform01();
    EXPECT_EQ(u, b.uniform01());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  // First draw of mt19937_64 seeded with 5489 is 14514284786278117030.
  PortableRng c(5489);
  EXPECT_EQ(c.uniform01(), static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
  PortableRng d(9);
  std::vector<int> hits(3, 0);
  for (int k = 0; k < 3000; ++k) ++hits[d.index(3)];
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW(d.index(0), std::invalid_argument);
}

TEST(RandomBalancedGraph, ExampleScaleIsBalancedWithFourClusters) {
  const GeneratedGraph gen = random_balanced_graph(four_partite(150, 0.1, 1));
  EXPECT_TRUE(gen.connected);
  const BalanceReport r = check_balance(gen.graph);
  ASSERT_TRUE(r.balanced);
  EXPECT_EQ(extract_partition(*r.signatures).partite_count(), 4u);
  for (const Edge& e : gen.graph.edges()) {
    EXPECT_GE(e.modulus, 1.0);
    EXPECT_LE(e.modulus, 5.0);
  }
}

TEST(RandomBalancedGraph, CompletePositiveGraph) {
  GeneratorConfig cfg;
  cfg.node_count = 3;
  cfg.edge_probability = 1.0;
  cfg.signature_set = {0.0};
  const GeneratedGraph gen = random_balanced_graph(cfg);
  EXPECT_EQ(gen.graph.edge_count(), 6u);
  const BalanceReport r = check_balance(gen.graph);
  ASSERT_TRUE(r.balanced);
  EXPECT_EQ(*r.zeta, Eigen::VectorXcd::Ones(3));
}

TEST(RandomBalancedGraph, SameSeedSameBytes) {
  for (std::uint64_t seed : {0u, 1u, 77u}) {
    const auto a = random_balanced_graph(four_partite(60, 0.1, seed));
    const auto b = random_balanced_graph(four_partite(60, 0.1, seed));
    EXPECT_EQ(serialize_graph(a.graph), serialize_graph(b.graph));
    EXPECT_EQ(a.signatures, b.signatures);
  }
  EXPECT_NE(serialize_graph(random_balanced_graph(four_partite(60, 0.1, 1)).graph),
            serialize_graph(random_balanced_graph(four_partite(60, 0.1, 2)).graph));
}

TEST(RandomBalancedGraph, RejectsBadConfigs) {
  GeneratorConfig cfg = four_partite(10, 0.1, 0);
  cfg.edge_probability = 0.0;
  EXPECT_THROW(random_balanced_graph(cfg), std::invalid_argument);
  cfg = four_partite(10, 0.1, 0);
  cfg.signature_set = {0.0, 0.0};
  EXPECT_THROW(random_balanced_graph(cfg), std::invalid_argument);
  cfg = four_partite(10, 0.1, 0);
  cfg.modulus_lo = 0.0;
  EXPECT_THROW(random_balanced_graph(cfg), std::invalid_argument);
  cfg = four_partite(0, 0.1, 0);
  EXPECT_THROW(random_balanced_graph(cfg), std::invalid_argument);
}

// Property: every seed gives a balanced graph whose partition matches the ground truth
// up to a common offset and relabeling.
TEST(RandomBalancedGraph, RecoversGroundTruthPartition) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto gen = random_balanced_graph(four_partite(5 + seed % 40, 0.2, seed));
    const auto r = check_balance_any(gen.graph);
    ASSERT_TRUE(r.balanced());
    if (!gen.connected) continue;
    const auto thetas = *r.signatures(gen.graph.node_count());
    const double offset = wrap_angle(gen.signatures[0] - thetas[0]);
    for (std::size_t v = 0; v < thetas.size(); ++v) {
      EXPECT_NEAR(std::abs(wrap_angle(thetas[v] + offset - gen.signatures[v])), 0.0, 1e-9);
    }
    const Partition recovered = extract_partition(thetas);
    const Partition truth = extract_partition(gen.signatures);
    EXPECT_EQ(recovered.partite_of, truth.partite_of);
  }
}

TEST(KPartiteExample, ThreePartites) {
  const GeneratedGraph gen = k_partite_example({2, 2, 2});
  const BalanceReport r = check_balance(gen.graph);
  ASSERT_TRUE(r.balanced);
  EXPECT_EQ(extract_partition(*r.signatures).partite_count(), 3u);
}

TEST(KPartiteExample, SinglePartiteRingIsPositive) {
  const GeneratedGraph gen = k_partite_example({4});
  for (const Edge& e : gen.graph.edges()) EXPECT_EQ(e.argument, 0.0);
  for (std::size_t v = 0; v < 4; ++v) EXPECT_TRUE(gen.graph.find_edge(v, (v + 1) % 4));
  EXPECT_EQ(*check_balance(gen.graph).zeta, Eigen::VectorXcd::Ones(4));
}

TEST(KPartiteExample, BipartitePair) {
  const GeneratedGraph gen = k_partite_example({1, 1});
  ASSERT_EQ(gen.graph.edge_count(), 2u);
  for (const Edge& e : gen.graph.edges()) EXPECT_EQ(e.argument, kPi);
  EXPECT_THROW(k_partite_example({}), std::invalid_argument);
  EXPECT_THROW(k_partite_example({2, 0}), std::invalid_argument);
}

TEST(DirectedCycleExample, Examples) {
  const double a = 2 * kPi / 3;
  EXPECT_TRUE(check_balance(directed_cycle_example({a, a, a}, {1, 1, 1})).balanced);
  EXPECT_TRUE(cycle_consistency_oracle(directed_cycle_example({a, a, a}, {1, 1, 1})).consistent);
  EXPECT_FALSE(check_balance(directed_cycle_example({kPi, 0, 0}, {1, 1, 1})).balanced);
  EXPECT_TRUE(check_balance(directed_cycle_example({0, 0}, {1, 1})).balanced);
  EXPECT_THROW(directed_cycle_example({0}, {1}), std::invalid_argument);
  EXPECT_THROW(directed_cycle_example({0, 0}, {1}), std::invalid_argument);
}

TEST(WeakCycleExample, Examples) {
  EXPECT_TRUE(check_balance(weak_cycle_example(0.9, 0.4, 0.5)).balanced);
  EXPECT_FALSE(check_balance(weak_cycle_example(0.0, 0.0, kPi)).balanced);
  const Graph g = weak_cycle_example(kPi / 2, kPi / 4, kPi / 4);
  EXPECT_TRUE(check_balance(g).balanced);
  EXPECT_TRUE(cycle_consistency_oracle(g, CycleMode::kEnumerate).consistent);
}

TEST(PerturbUnbalance, TriCycleBecomesUnbalancedOnItsCycle) {
  const double a = 2 * kPi / 3;
  const Graph base = directed_cycle_example({a, a, a}, {1, 1, 1});
  for (std::size_t k = 0; k < 3; ++k) {
    const Edge& e = base.edge(k);
    const Graph g = perturb_unbalance(base, e.source, e.target, 0.3);
    const BalanceReport r = check_balance(g);
    ASSERT_FALSE(r.balanced);
    EXPECT_NEAR(std::abs(wrap_angle(r.witness->cycle.argument_sum(g))), 0.3, 1e-12);
    EXPECT_EQ(r.witness->cycle.steps.size(), 3u);
  }
}

TEST(PerturbUnbalance, FullTurnIsANoOp) {
  const Graph base = weak_cycle_example(0.9, 0.4, 0.5);
  EXPECT_EQ(perturb_unbalance(base, 1, 0, kTwoPi), base);
  EXPECT_THROW(perturb_unbalance(base, 0, 1, 0.3), std::invalid_argument);
}

TEST(PerturbUnbalance, CycleEdgesFlipTreeEdgesNever) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = testing::random_connected_balanced(rng, 2 + trial % 9, trial % 3 == 0 ? 0.0 : 0.3);
    const Graph& g = inst.graph;
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, g.edge_count() - 1)(rng);
    const Edge& e = g.edge(k);
    const double delta = std::uniform_real_distribution<double>(0.1, kTwoPi - 0.1)(rng);
    const Graph h = perturb_unbalance(g, e.source, e.target, delta);
    EXPECT_EQ(check_balance(h).balanced, !edge_on_weak_cycle(g, k));
  }
}

}  // namespace
}  // namespace cwg
