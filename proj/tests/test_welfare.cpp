#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"

using namespace indg;
using fixtures::Edges;

TEST(SocialOptimum, SharedHubEdge) {
  auto inst = fixtures::poa_instance();
  auto opt = socially_optimal(inst);
  EXPECT_NEAR(opt.welfare, -0.1 + 2.0 * 2.0 / 1.0, 1e-9);
  auto expected = StrategyProfile::empty(3);
  expected.actions[0] = {0};
  EXPECT_EQ(opt.profile, expected);
}

TEST(SocialOptimum, TrivialCases) {
  auto one = GameInstance::complete(Graph(1), Graph(1), {{BenefitFunction({2.0}), 0.5}});
  auto opt = socially_optimal(one);
  EXPECT_EQ(opt.profile.actions[0], Action{0});
  EXPECT_DOUBLE_EQ(opt.welfare, 1.5);

  std::vector<PlayerSpec> specs(2, {BenefitFunction({0.01}), 5.0});
  auto priced = GameInstance::complete(fixtures::path(2), fixtures::path(2), specs);
  auto none = socially_optimal(priced);
  EXPECT_EQ(none.profile, StrategyProfile::empty(2));
  EXPECT_DOUBLE_EQ(none.welfare, 0.0);
}

TEST(SocialOptimum, BudgetEnforced) {
  std::vector<PlayerSpec> specs(3, {BenefitFunction({1.0}), 1.0});
  auto inst = GameInstance::complete(fixtures::path(3), fixtures::path(6), specs);
  EXPECT_THROW(socially_optimal(inst), CapacityError);
  EXPECT_THROW(enumerate_equilibria(inst), CapacityError);
  EXPECT_NO_THROW(socially_optimal(fixtures::poa_instance(), 6));
}

TEST(Equilibria, PoaInstanceHasOnlyTheEmptyProfile) {
  auto inst = fixtures::poa_instance();
  auto eqs = enumerate_equilibria(inst);
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_EQ(eqs.front(), StrategyProfile::empty(3));
}

TEST(Equilibria, SingleEdgeGame) {
  auto inst = GameInstance::complete(Graph(1), Graph(1), {{BenefitFunction({2.0}), 0.5}});
  auto eqs = enumerate_equilibria(inst);
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_EQ(eqs.front().actions[0], Action{0});
}

TEST(Equilibria, LowCostPlayerAlwaysFullyWired) {
  std::vector<PlayerSpec> specs{{BenefitFunction({3.0, 1.0}), 1.0}, {BenefitFunction({1.0, 0.6}), 0.7}};
  auto inst = GameInstance::complete(fixtures::path(2), fixtures::path(3), specs);
  auto eqs = enumerate_equilibria(inst);
  ASSERT_FALSE(eqs.empty());
  for (const auto& e : eqs) EXPECT_EQ(e.actions[0], full_action(3));
}

TEST(Equilibria, StarInstancesContainTheConstructedProfile) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 4;
    if (n * m > 9) m = 9 / n;
    Graph g1 = fixtures::random_graph(n, 0.5, rng);
    Graph g2 = add_hub(fixtures::random_graph(m, 0.3, rng), 0);
    std::vector<PlayerSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
      specs.push_back({BenefitFunction(fixtures::random_benefits(3, 3.0, rng)),
                       0.05 + std::uniform_real_distribution<double>(0.0, 4.0)(rng)});
    auto inst = GameInstance::complete(std::move(g1), std::move(g2), std::move(specs));
    auto eqs = enumerate_equilibria(inst);
    auto eq = star_nash_equilibrium(inst);
    EXPECT_NE(std::find(eqs.begin(), eqs.end(), eq.profile), eqs.end()) << format_instance(inst);
    auto opt = socially_optimal(inst);
    for (const auto& e : eqs) EXPECT_LE(social_welfare(inst, e), opt.welfare + 1e-9);
  }
}

TEST(PriceOfAnarchy, InfiniteOnPoaInstance) {
  auto r = price_of_anarchy(fixtures::poa_instance());
  EXPECT_EQ(r.status, PoaStatus::Infinite);
  EXPECT_NEAR(r.optimal_welfare, 3.9, 1e-9);
  EXPECT_NEAR(r.min_equilibrium_welfare, 0.0, 1e-12);
  EXPECT_EQ(r.equilibrium_count, 1u);
}

TEST(PriceOfAnarchy, OneWhenAllLowCost) {
  std::vector<PlayerSpec> specs(2, {BenefitFunction({3.0, 1.0}), 1.0});
  auto inst = GameInstance::complete(fixtures::path(2), fixtures::star(3), specs);
  auto r = price_of_anarchy(inst);
  EXPECT_EQ(r.status, PoaStatus::Finite);
  EXPECT_NEAR(r.poa, 1.0, 1e-12);
  EXPECT_NEAR(r.min_equilibrium_welfare, r.optimal_welfare, 1e-9);
}

TEST(PriceOfAnarchy, UndefinedWhenNothingPays) {
  std::vector<PlayerSpec> specs(2, {BenefitFunction({0.01}), 5.0});
  auto r = price_of_anarchy(GameInstance::complete(fixtures::path(2), fixtures::path(2), specs));
  EXPECT_EQ(r.status, PoaStatus::Undefined);
}
