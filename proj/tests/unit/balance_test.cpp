#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "cwg/balance.hpp"
#include "cwg/cycles.hpp"
#include "cwg/generators.hpp"
#include "cwg/laplacian.hpp"
#include "cwg/partition.hpp"
#include "oracles.hpp"

namespace cwg {
namespace {

using testing::cd;

Graph antagonism() { return Graph::from_polar(2, {{0, 1, 1.0, kPi}, {1, 0, 1.0, kPi}}); }

Graph tri_cycle(double m1 = 1, double m2 = 1, double m3 = 1) {
  const double a = 2 * kPi / 3;
  return Graph::from_polar(3, {{0, 1, m1, a}, {1, 2, m2, a}, {2, 0, m3, a}});
}

// Mutual triangle with one negative pair, placed on nodes (a, b).
Graph one_negative_triangle(std::size_t a = 1, std::size_t b = 2) {
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == j) continue;
      const bool negative = (j == a && i == b) || (j == b && i == a);
      edges.push_back({j, i, 1.0, negative ? kPi : 0.0});
    }
  }
  return Graph::from_polar(3, std::move(edges));
}

TEST(AssignSignatures, OneStepPerNode) {
  const Graph g = Graph::from_polar(3, {{0, 1, 1, kPi / 2}, {0, 2, 1, kPi}});
  const auto s = assign_signatures(g, *find_spanning_tree(g).tree);
  EXPECT_EQ(s.root, 0u);
  EXPECT_EQ(s.thetas, (std::vector<double>{0.0, kPi / 2, kPi}));
}

TEST(AssignSignatures, WrapsAccumulatedAngles) {
  const double a = 2 * kPi / 3;
  const Graph g = Graph::from_polar(3, {{0, 1, 1, a}, {1, 2, 1, a}});
  const auto s = assign_signatures(g, *find_spanning_tree(g).tree);
  EXPECT_EQ(s.thetas[0], 0.0);
  EXPECT_NEAR(s.thetas[1], a, 1e-15);
  EXPECT_NEAR(s.thetas[2], -a, 1e-15);
}

TEST(AssignSignatures, SingleNode) {
  const Graph g = Graph::from_polar(1, {});
  EXPECT_EQ(assign_signatures(g, *find_spanning_tree(g).tree).thetas, std::vector<double>{0.0});
}

TEST(CheckBalance, TriCycleIsBalancedWithCubeRoots) {
  const BalanceReport r = check_balance(tri_cycle(2, 3, 5));
  ASSERT_TRUE(r.balanced);
  const Eigen::VectorXcd& z = *r.zeta;
  EXPECT_LT(std::abs(z(0) - cd(1, 0)), 1e-15);
  EXPECT_LT(std::abs(z(1) - std::polar(1.0, 2 * kPi / 3)), 1e-15);
  EXPECT_LT(std::abs(z(2) - std::polar(1.0, -2 * kPi / 3)), 1e-15);
  EXPECT_TRUE(cycle_consistency_oracle(tri_cycle(), CycleMode::kEnumerate).consistent);
}

TEST(CheckBalance, OneNegativeTriangleReportsThePiEdge) {
  const Graph g = one_negative_triangle();
  const BalanceReport r = check_balance(g);
  ASSERT_FALSE(r.balanced);
  ASSERT_TRUE(r.witness);
  EXPECT_DOUBLE_EQ(g.edge(r.witness->edge_index).argument, kPi);
  EXPECT_NEAR(r.witness->deviation, kPi, 1e-12);
  // The witness cycle closes through the witness edge and is inconsistent.
  const WeakCycle& c = r.witness->cycle;
  EXPECT_EQ(c.nodes.size(), c.steps.size());
  EXPECT_NEAR(std::abs(wrap_angle(c.argument_sum(g))), kPi, 1e-12);
  bool uses_witness = false;
  for (const auto& s : c.steps) uses_witness |= s.edge_index == r.witness->edge_index;
  EXPECT_TRUE(uses_witness);
}

TEST(CheckBalance, NegativePairOnTreeStillClosesAnInconsistentCycle) {
  // With the negative pair at the root both tree edges leave node 1, so the first
  // violation is a positive edge whose fundamental cycle runs through the pi-edge.
  const Graph g = one_negative_triangle(0, 2);
  const BalanceReport r = check_balance(g);
  ASSERT_FALSE(r.balanced);
  int pi_steps = 0;
  for (const auto& s : r.witness->cycle.steps) pi_steps += g.edge(s.edge_index).argument == kPi;
  EXPECT_EQ(pi_steps, 1);
  EXPECT_NEAR(std::abs(wrap_angle(r.witness->cycle.argument_sum(g))), kPi, 1e-12);
}

TEST(CheckBalance, SpanningTreeIsAlwaysBalanced) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 12;
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
      edges.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v, 1.5, angle(rng)});
    }
    EXPECT_TRUE(check_balance(Graph::from_polar(n, std::move(edges))).balanced);
  }
}

TEST(CheckBalance, DisconnectedGraphThrowsConnectivityError) {
  EXPECT_THROW(check_balance(Graph::from_polar(2, {})), ConnectivityError);
}

TEST(CheckBalance, ToleranceDecidesNearMisses) {
  const Graph g = perturb_unbalance(tri_cycle(), 0, 1, 1e-7);
  EXPECT_FALSE(check_balance(g).balanced);
  const BalanceReport loose = check_balance(g, 1e-6);
  EXPECT_TRUE(loose.balanced);
  EXPECT_EQ(loose.tolerance_used, 1e-6);
}

TEST(CheckBalanceAny, DisjointBalancedTwoCycles) {
  const Graph g =
      Graph::from_polar(4, {{0, 1, 1, kPi}, {1, 0, 1, kPi}, {2, 3, 1, 0.5}, {3, 2, 1, -0.5}});
  const GraphBalance r = check_balance_any(g);
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_TRUE(r.components[0].balanced());
  EXPECT_TRUE(r.components[1].balanced());
  EXPECT_TRUE(r.balanced());
  const auto thetas = *r.signatures(4);
  EXPECT_LT(kernel_residual(g, zeta_vector(thetas)), 1e-14);
}

TEST(CheckBalanceAny, MixedComponents) {
  const Graph g =
      Graph::from_polar(5, {{0, 1, 1, kPi}, {1, 0, 1, kPi}, {2, 3, 1, 0}, {3, 4, 1, 0}, {4, 2, 1, kPi}});
  const GraphBalance r = check_balance_any(g);
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_TRUE(r.components[0].balanced());
  EXPECT_FALSE(r.components[1].balanced());
  EXPECT_FALSE(r.balanced());
  EXPECT_FALSE(r.signatures(5).has_value());
  const auto& w = *r.components[1].report.witness;
  EXPECT_GE(w.source, 2u);
  EXPECT_GE(w.target, 2u);
  for (auto v : w.cycle.nodes) EXPECT_GE(v, 2u);
  EXPECT_EQ(g.edge(w.edge_index).source, w.source);
}

TEST(CheckBalanceAny, EdgelessSingletonsAreBalancedAtZero) {
  const GraphBalance r = check_balance_any(Graph::from_polar(3, {}));
  EXPECT_EQ(r.components.size(), 3u);
  EXPECT_TRUE(r.balanced());
  EXPECT_EQ(*r.signatures(3), std::vector<double>(3, 0.0));
}

TEST(CheckBalanceAny, WeaklyConnectedWithoutRoot) {
  // 1 -> 2 <- 3 with arguments pi and pi/2: signatures exist for every such tree.
  const Graph g = Graph::from_polar(3, {{0, 1, 1, kPi}, {2, 1, 1, kPi / 2}});
  const GraphBalance r = check_balance_any(g);
  ASSERT_EQ(r.components.size(), 1u);
  EXPECT_FALSE(r.components[0].has_directed_tree);
  EXPECT_TRUE(r.balanced());
  EXPECT_LT(kernel_residual(g, zeta_vector(*r.signatures(3))), 1e-15);
}

TEST(CheckBalanceAny, WeaklyConnectedUnbalancedWithoutRoot) {
  // Two sources 1 and 3 feeding 2 and 4: a weak 4-cycle with argument sum pi.
  const Graph g =
      Graph::from_polar(4, {{0, 1, 1, kPi}, {2, 1, 1, 0}, {0, 3, 1, 0}, {2, 3, 1, 0}});
  EXPECT_FALSE(is_connected(g));
  const GraphBalance r = check_balance_any(g);
  EXPECT_FALSE(r.balanced());
  EXPECT_FALSE(cycle_consistency_oracle(g, CycleMode::kEnumerate).consistent);
}

TEST(ZetaVector, Examples) {
  EXPECT_EQ(zeta_vector(std::vector<double>{0, kPi}), Eigen::Vector2cd(1, -1));
  EXPECT_EQ(zeta_vector(std::vector<double>{0, kPi / 2}), Eigen::Vector2cd(1, cd(0, 1)));
  const Eigen::VectorXcd z = zeta_vector(std::vector<double>{0, 2 * kPi / 3, -2 * kPi / 3});
  for (const auto& v : z) EXPECT_LT(std::abs(std::pow(v, 3) - 1.0), 1e-15);
  EXPECT_LT(std::abs(z.sum()), 1e-15);
}

TEST(KernelResidual, Examples) {
  EXPECT_LT(kernel_residual(antagonism(), Eigen::Vector2cd(1, -1)), 1e-15);
  EXPECT_DOUBLE_EQ(kernel_residual(antagonism(), Eigen::Vector2cd(1, 1)), 2.0);
  EXPECT_EQ(kernel_residual(Graph::from_polar(3, {}), Eigen::Vector3cd(1, cd(0, 1), -1)), 0.0);
}

TEST(GaugeTransform, Antagonism) {
  const GaugeResult r = gauge_transform(antagonism(), Eigen::Vector2cd(1, -1));
  for (const Edge& e : r.graph.edges()) {
    EXPECT_EQ(e.modulus, 1.0);
    EXPECT_EQ(e.argument, 0.0);
  }
  EXPECT_EQ(r.max_imaginary_leakage, 0.0);
}

TEST(GaugeTransform, TriCycleKeepsModuli) {
  const Graph g = tri_cycle(2, 3, 5);
  const GaugeResult r = gauge_transform(g, *check_balance(g).zeta);
  EXPECT_LT(r.max_imaginary_leakage, 1e-14);
  EXPECT_EQ(r.graph.edge(0).modulus, 2.0);
  EXPECT_EQ(r.graph.edge(1).modulus, 3.0);
  EXPECT_EQ(r.graph.edge(2).modulus, 5.0);
  for (const Edge& e : r.graph.edges()) EXPECT_EQ(e.argument, 0.0);
}

TEST(GaugeTransform, IdentityGaugeOnNonnegativeGraph) {
  const Graph g = Graph::from_polar(3, {{0, 1, 2, 0}, {1, 2, 0.5, 0}, {2, 0, 7, 0}});
  EXPECT_EQ(gauge_transform(g, Eigen::VectorXcd::Ones(3)).graph, g);
}

TEST(GaugeTransform, RejectsWrongZeta) {
  EXPECT_THROW(gauge_transform(antagonism(), Eigen::Vector2cd(1, 1)), BalanceError);
  EXPECT_THROW(gauge_transform(antagonism(), Eigen::Vector2cd(1, -2)), BalanceError);
}

TEST(CycleOracle, DirectedTriangleConsistentIffSumVanishes) {
  for (double t3 : {0.0, 0.3, -1.1, kPi}) {
    const double t1 = 0.7, t2 = -2.0;
    const Graph g = directed_cycle_example({t1, t2, t3}, {1, 1, 1});
    const bool expected = std::abs(wrap_angle(t1 + t2 + t3)) < 1e-12;
    for (auto mode : {CycleMode::kBasis, CycleMode::kEnumerate}) {
      EXPECT_EQ(cycle_consistency_oracle(g, mode).consistent, expected);
    }
  }
  const Graph closing = directed_cycle_example({0.7, -2.0, 1.3}, {1, 1, 1});
  EXPECT_TRUE(cycle_consistency_oracle(closing).consistent);
}

TEST(CycleOracle, WeakCycleConsistentIffIdentityHolds) {
  EXPECT_TRUE(cycle_consistency_oracle(weak_cycle_example(0.9, 0.4, 0.5)).consistent);
  const auto bad = cycle_consistency_oracle(weak_cycle_example(0.0, 0.0, kPi), CycleMode::kEnumerate);
  EXPECT_FALSE(bad.consistent);
  EXPECT_TRUE(bad.witness_real_negative);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(bad.witness->steps.size(), 3u);
}

TEST(CycleOracle, AcyclicGraphIsVacuouslyConsistent) {
  const Graph g = Graph::from_polar(4, {{0, 1, 1, 1}, {0, 2, 1, 2}, {2, 3, 1, 3}});
  for (auto mode : {CycleMode::kBasis, CycleMode::kEnumerate}) {
    const auto r = cycle_consistency_oracle(g, mode);
    EXPECT_TRUE(r.consistent);
    EXPECT_EQ(r.cycles_checked, 0u);
  }
}

TEST(CycleOracle, MutualPairIsATwoCycle) {
  const Graph g = Graph::from_polar(2, {{0, 1, 1, 0.5}, {1, 0, 1, 0.4}});
  EXPECT_FALSE(cycle_consistency_oracle(g, CycleMode::kEnumerate).consistent);
  EXPECT_FALSE(cycle_consistency_oracle(g, CycleMode::kBasis).consistent);
}

TEST(CycleOracle, EnumerationRefusesLargeGraphs) {
  EXPECT_THROW(cycle_consistency_oracle(Graph::from_polar(21, {}), CycleMode::kEnumerate), Error);
}

TEST(FundamentalCycle, ClosesThroughOffTreeEdge) {
  const Graph g = weak_cycle_example(0.9, 0.4, 0.5);
  const SpanningTree t = *find_spanning_tree(g).tree;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const bool on_tree = std::any_of(t.edges.begin(), t.edges.end(),
                                     [&](const TreeEdge& te) { return te.edge_index == k; });
    if (on_tree) continue;
    const WeakCycle c = fundamental_cycle(g, t, k);
    EXPECT_EQ(c.steps.size(), 3u);
    EXPECT_NEAR(wrap_angle(c.argument_sum(g)), 0.0, 1e-12);
  }
}

TEST(Partition, Examples) {
  const Partition two = extract_partition(std::vector<double>{0, 0, kPi, kPi});
  EXPECT_EQ(two.partite_count(), 2u);
  EXPECT_EQ(two.members(), (std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}}));

  std::vector<double> eight;
  for (int v = 0; v < 8; ++v) eight.push_back(four_partite_signatures()[v % 4]);
  EXPECT_EQ(extract_partition(eight).partite_count(), 4u);

  EXPECT_EQ(extract_partition(std::vector<double>{0}).partite_count(), 1u);
}

TEST(Partition, MergesAcrossTheBranchCut) {
  const Partition p = extract_partition(std::vector<double>{kPi, -kPi + 1e-12, 0.0}, 1e-9);
  EXPECT_EQ(p.partite_count(), 2u);
  EXPECT_EQ(p.partite_of[0], p.partite_of[1]);
  EXPECT_EQ(p.partite_signature[p.partite_of[0]], kPi);
}

TEST(Partition, RejectsAmbiguousClusters) {
  EXPECT_THROW(extract_partition(std::vector<double>{0.0, 0.8e-9, 1.6e-9, 2.4e-9}, 1e-9),
               PartitionError);
}

// Property: check_balance agrees with the kernel and gauge characterizations.
TEST(BalanceProperties, VerdictMatchesKernelAndGauge) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = testing::random_connected_balanced(rng, 2 + trial % 9, 0.3);
    Graph g = inst.graph;
    const bool perturb = trial % 2 == 1;
    if (perturb) {
      for (std::size_t k = 0; k < g.edge_count(); ++k) {
        if (edge_on_weak_cycle(g, k)) {
          g = perturb_unbalance(g, g.edge(k).source, g.edge(k).target, 0.5);
          break;
        }
      }
    }
    const BalanceReport r = check_balance(g);
    const double tol = 1e-9 * static_cast<double>(g.node_count());
    if (r.balanced) {
      EXPECT_LE(kernel_residual(g, *r.zeta), tol);
      const GaugeResult gauge = gauge_transform(g, *r.zeta);
      EXPECT_LE(gauge.max_imaginary_leakage, 1e-9);
      for (std::size_t k = 0; k < g.edge_count(); ++k) {
        EXPECT_NEAR(gauge.graph.edge(k).modulus, g.edge(k).modulus, 1e-12 * g.edge(k).modulus);
      }
    } else {
      // No unit vector with signatures from this tree annihilates L.
      EXPECT_GT(kernel_residual(g, zeta_vector(assign_signatures(g, r.tree))), tol);
    }
  }
}

TEST(BalanceProperties, CommonOffsetPreservesVerdictAndPartition) {
  std::mt19937_64 rng(32);
  const std::vector<double> pool{-kPi / 2, 0.0, kPi / 2, kPi};
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = testing::random_connected_balanced(rng, 3 + trial % 10, 0.3, pool);
    const BalanceReport r = check_balance(inst.graph);
    ASSERT_TRUE(r.balanced);
    const double b = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
    std::vector<double> shifted = r.signatures->thetas;
    for (auto& t : shifted) t = wrap_angle(t + b);
    EXPECT_LE(kernel_residual(inst.graph, zeta_vector(shifted)), 1e-12);
    const Partition p = extract_partition(*r.signatures);
    const Partition q = extract_partition(shifted);
    EXPECT_EQ(p.partite_of, q.partite_of);
    for (std::size_t k = 0; k < p.partite_count(); ++k) {
      EXPECT_NEAR(std::abs(wrap_angle(q.partite_signature[k] - p.partite_signature[k] - b)), 0.0, 1e-12);
    }
  }
}

TEST(BalanceProperties, SignedReductionMatchesFundamentalCycleParity) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    auto inst = testing::random_connected_balanced(rng, 2 + trial % 7, 0.35);
    std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
    for (auto& e : edges) e.argument = coin(rng) ? kPi : 0.0;
    const Graph g = Graph::from_polar(inst.graph.node_count(), std::move(edges));
    const BalanceReport r = check_balance(g);
    bool all_even = true;
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      const bool on_tree = std::any_of(r.tree.edges.begin(), r.tree.edges.end(),
                                       [&](const TreeEdge& te) { return te.edge_index == k; });
      if (on_tree) continue;
      int negatives = 0;
      for (const auto& s : fundamental_cycle(g, r.tree, k).steps) negatives += g.edge(s.edge_index).argument == kPi;
      all_even &= negatives % 2 == 0;
    }
    EXPECT_EQ(r.balanced, all_even);
    if (r.balanced) {
      for (double t : r.signatures->thetas) EXPECT_TRUE(t == 0.0 || t == kPi) << t;
    }
  }
}

}  // namespace
}  // namespace cwg
