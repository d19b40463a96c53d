#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace indg;
using fixtures::Edges;

namespace {

Player make_player(std::vector<double> b, double c) {
  Player p;
  p.benefit = BenefitFunction(std::move(b));
  p.edge_cost = c;
  return p;
}

}  // namespace

TEST(Benefit, ValidatesTable) {
  EXPECT_THROW(BenefitFunction(std::vector<double>{}), ArgumentError);
  EXPECT_THROW(BenefitFunction({1.0, 2.0}), ArgumentError);
  EXPECT_THROW(BenefitFunction({1.0, -0.5}), ArgumentError);
  EXPECT_THROW(BenefitFunction({std::nan("")}), ArgumentError);
  BenefitFunction b({3.0, 2.0});
  EXPECT_DOUBLE_EQ(b.at(1), 3.0);
  EXPECT_DOUBLE_EQ(b.at(3), 0.0);
  EXPECT_DOUBLE_EQ(b(Hops::infinite()), 0.0);
  EXPECT_THROW(b.at(0), ArgumentError);
}

TEST(Classify, BoundaryIsLowCost) {
  EXPECT_EQ(classify(make_player({3, 1}, 2.0)), CostClass::LowCost);
  EXPECT_EQ(classify(make_player({3, 1}, 2.0000001)), CostClass::HighCost);
  EXPECT_EQ(classify(make_player({1.2, 0.7}, 0.5)), CostClass::LowCost);
  EXPECT_EQ(classify(make_player({1.2, 0.7}, 1250)), CostClass::HighCost);
}

TEST(Radii, ExampleTwoTable) {
  auto inst = fixtures::example2();
  const std::vector<std::pair<int, int>> expected{{2, 1}, {1, 0}, {1, 0}, {2, 1}, {1, 0},
                                                  {1, 0}, {-1, -1}, {1, 1}, {3, 2}};
  for (std::size_t i = 0; i < 9; ++i) {
    const Player& p = inst.player(i);
    if (expected[i].first < 0) {
      EXPECT_EQ(classify(p), CostClass::LowCost) << "player " << i;
      continue;
    }
    EXPECT_EQ(classify(p), CostClass::HighCost) << "player " << i;
    EXPECT_EQ(l_radius(p, 7), Hops(expected[i].first)) << "player " << i;
    EXPECT_EQ(r_radius(p, 7), Hops(expected[i].second)) << "player " << i;
  }
}

TEST(Radii, HomogeneousScenario) {
  Player p = make_player({1.2, 0.7, 0.6, 0.5, 0.3, 0.2}, 1250);
  EXPECT_EQ(r_radius(p, 5000), Hops(2));
  EXPECT_EQ(l_radius(p, 5000), Hops(3));
}

TEST(Radii, InfiniteWhenHubEdgeNeverPays) {
  Player p = make_player({1, 0.1}, 5);  // 1 - 5 + 2 * 0.1 < 0
  EXPECT_FALSE(r_radius(p, 3).is_finite());
  EXPECT_FALSE(l_radius(p, 3).is_finite());
  Player zero = make_player({1, 0.5}, 2);  // exactly 0 with m = 3
  EXPECT_FALSE(r_radius(zero, 3).is_finite());
}

TEST(Radii, RRadiusCutoffs) {
  // In the heterogeneous scenario r depends only on which band c falls in.
  std::vector<double> b{1.2, 0.7, 0.6, 0.5, 0.3, 0.2};
  EXPECT_EQ(r_radius(make_player(b, 100), 5000), Hops(0));
  EXPECT_EQ(r_radius(make_player(b, 600), 5000), Hops(1));
  EXPECT_EQ(r_radius(make_player(b, 1500), 5000), Hops(2));
  EXPECT_EQ(r_radius(make_player(b, 2400), 5000), Hops(3));
}

TEST(Radii, BigR) {
  EXPECT_EQ(big_r_radius(make_player({5, 4, 3, 1}, 3)), Hops(3));  // 2 > b(4) = 1
  EXPECT_EQ(big_r_radius(make_player({5, 1}, 1)), Hops(1));
  EXPECT_FALSE(big_r_radius(make_player({1, 0.5}, 1)).has_value());
  EXPECT_FALSE(big_r_radius(make_player({1, 0.5}, 2)).has_value());
}

TEST(Instance, ValidatesConstruction) {
  std::vector<PlayerSpec> one{{BenefitFunction({1}), 1.0}};
  EXPECT_THROW(GameInstance::complete(fixtures::path(2), fixtures::path(2), one), ArgumentError);
  std::vector<PlayerSpec> bad{{BenefitFunction({1}), 0.0}};
  EXPECT_THROW(GameInstance::complete(fixtures::path(1), fixtures::path(2), bad), ArgumentError);
  EXPECT_THROW(GameInstance(fixtures::path(1), fixtures::path(2), Edges{{0, 2}}, one), ArgumentError);
  EXPECT_THROW(GameInstance(fixtures::path(1), fixtures::path(2), Edges{{0, 1}, {0, 1}}, one), ArgumentError);
  auto inst = GameInstance(fixtures::path(1), fixtures::path(2), Edges{{0, 1}}, one);
  EXPECT_FALSE(inst.dependency_complete());
  EXPECT_EQ(inst.player(0).dependencies, std::vector<NodeIndex>{1});
  EXPECT_THROW(inst.player(1), ArgumentError);
}

TEST(Instance, ValidatesProfiles) {
  auto inst = fixtures::example2();
  auto p = StrategyProfile::empty(9);
  EXPECT_NO_THROW(inst.validate(p));
  p.actions[0] = {3, 1};
  EXPECT_THROW(inst.validate(p), ArgumentError);
  p.actions[0] = {7};
  EXPECT_THROW(inst.validate(p), ArgumentError);
  EXPECT_THROW(inst.validate(StrategyProfile::empty(8)), ArgumentError);
}

TEST(Instance, CombinedIndexing) {
  auto inst = fixtures::example2();
  EXPECT_EQ(inst.right(0), 9u);
  EXPECT_EQ(inst.locate(10), (PartitionedNode{Side::Right, 1}));
  EXPECT_EQ(inst.locate(3), (PartitionedNode{Side::Left, 3}));
  EXPECT_THROW(inst.locate(16), ArgumentError);
  auto p = StrategyProfile::empty(9);
  p.actions[6] = {0, 1};
  Graph g = combine(inst, p);
  EXPECT_EQ(g.node_count(), 16u);
  EXPECT_EQ(g.edge_count(), 8u + 6u + 2u);
  EXPECT_TRUE(g.has_edge(6, 10));
}

TEST(Utility, ExampleOneHandComputed) {
  auto inst = fixtures::example1();
  auto p = StrategyProfile::empty(6);
  p.actions[0] = {0, 1, 5};
  // y0, y1, y5 at distance 1 and y2..y4 through y0 at distance 2.
  EXPECT_DOUBLE_EQ(player_utility(inst, p, 0), 3 * 5 + 3 * 4 - 3 * 3);
  // Player 5 reaches everything through the whole path: x5..x0 is 5 hops.
  EXPECT_DOUBLE_EQ(player_utility(inst, p, 5), 0.0);
  // Players without dependencies get nothing and pay nothing.
  EXPECT_DOUBLE_EQ(player_utility(inst, p, 2), 0.0);
  EXPECT_DOUBLE_EQ(social_welfare(inst, p), 18.0);
}

TEST(Utility, MatchesIndependentRecomputation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 4, m = 1 + trial % 5;
    Graph g1 = fixtures::random_graph(n, 0.5, rng), g2 = fixtures::random_graph(m, 0.4, rng);
    Edges deps;
    for (NodeIndex x = 0; x < n; ++x)
      for (NodeIndex y = 0; y < m; ++y)
        if (rng() % 3) deps.emplace_back(x, y);
    std::vector<PlayerSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
      specs.push_back({BenefitFunction(fixtures::random_benefits(1 + rng() % 4, 3.0, rng)), 0.1 + (rng() % 20) / 10.0});
    GameInstance inst(g1, g2, deps, std::move(specs));
    auto prof = StrategyProfile::empty(n);
    for (auto& a : prof.actions)
      for (NodeIndex y = 0; y < m; ++y)
        if (rng() % 3 == 0) a.push_back(y);
    auto all = player_utilities(inst, prof);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(all[i], fixtures::reference_utility(inst, prof, i), 1e-12);
  }
}

TEST(Utility, EvaluatorSwapsOnlyOnePlayer) {
  auto inst = fixtures::example2();
  auto prof = StrategyProfile::empty(9);
  prof.actions[6] = full_action(7);
  UtilityEvaluator eval(inst, prof);
  auto alt = prof;
  alt.actions[0] = {0};
  EXPECT_DOUBLE_EQ(eval.utility(0, {0}), fixtures::reference_utility(inst, alt, 0));
  alt = prof;
  alt.actions[6] = {};
  EXPECT_DOUBLE_EQ(eval.utility(6, {}), fixtures::reference_utility(inst, alt, 6));
}

TEST(RNeighborhood, UsesGivenRadii) {
  auto inst = fixtures::example2();
  std::vector<Hops> radii(9, Hops(1));
  auto nb = r_neighborhood(inst, 2, radii);
  // x2 neighbors: x1, x4, x5, x6; x6 is the low-cost player.
  EXPECT_EQ(nb, (std::vector<NodeIndex>{1, 2, 4, 5}));
  radii[7] = Hops(1);
  // x7's neighbor x6 is low cost and excluded.
  EXPECT_EQ(r_neighborhood(inst, 7, radii), (std::vector<NodeIndex>{0, 7}));
  radii[7] = Hops::infinite();
  EXPECT_EQ(r_neighborhood(inst, 7, radii).size(), 8u);
}
