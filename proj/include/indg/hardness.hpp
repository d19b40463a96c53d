#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "indg/best_response.hpp"
#include "indg/dominating_set.hpp"
#include "indg/game.hpp"

namespace indg {

/// Constants of the reduction. Any choice with b3 < b1 - c < b2 works.
struct ReductionConstants {
  double edge_cost = 2.0;
  double b1 = 4.0, b2 = 3.0, b3 = 1.0;

  void check() const {
    if (!(b3 < b1 - edge_cost && b1 - edge_cost < b2))
      throw ArgumentError("reduction constants must satisfy b(3) < b(1) - c < b(2)");
    if (!(edge_cost > 0.0) || b2 > b1 || b3 < 0.0)
      throw ArgumentError("reduction constants must give a positive cost and a nonincreasing, nonnegative benefit");
  }
};

/// A best response interconnection question: can `player` reach utility at
/// least `threshold` against `fixed_others`?
struct BriInstance {
  GameInstance game;
  StrategyProfile fixed_others;
  std::size_t player = 0;
  double threshold = 0.0;
};

inline constexpr std::size_t kBruteForceNodeCap = 20;

/// Maps (G_d, k) to a single-player game whose G2 is G_d, with
/// threshold k (b1 - c) + (|V_d| - k) b2.
inline BriInstance reduce_dominating_set(const Graph& g_d, std::size_t k, const ReductionConstants& rc = {}) {
  rc.check();
  const std::size_t m = g_d.node_count();
  if (k < 1 || k > m)
    throw ArgumentError("k must lie in 1.." + std::to_string(m) + ", got " + std::to_string(k));
  std::vector<PlayerSpec> specs{PlayerSpec{BenefitFunction({rc.b1, rc.b2, rc.b3}), rc.edge_cost}};
  auto game = GameInstance::complete(Graph(1, std::vector<std::pair<NodeIndex, NodeIndex>>{}), g_d, std::move(specs));
  double r = static_cast<double>(k) * (rc.b1 - rc.edge_cost) + static_cast<double>(m - k) * rc.b2;
  return BriInstance{std::move(game), StrategyProfile::empty(1), 0, r};
}

/// Exhaustive search over all 2^m actions.
inline bool decide_bri_brute(const BriInstance& bri) {
  const std::size_t m = bri.game.m();
  if (m > kBruteForceNodeCap)
    throw CapacityError("BRI brute force is limited to " + std::to_string(kBruteForceNodeCap) + " G2 nodes, got " +
                        std::to_string(m));
  bri.game.check_player(bri.player);
  UtilityEvaluator eval(bri.game, bri.fixed_others);
  bool found = false;
  for_each_action(m, m, [&](const Action& a) {
    found = eval.utility(bri.player, a) >= bri.threshold - 1e-9;
    return !found;
  });
  return found;
}

/// Exhaustive check for a dominating set of size at most k.
inline bool decide_dominating_set_brute(const Graph& g, std::size_t k) {
  const std::size_t n = g.node_count();
  if (n > kBruteForceNodeCap)
    throw CapacityError("dominating set brute force is limited to " + std::to_string(kBruteForceNodeCap) +
                        " nodes, got " + std::to_string(n));
  std::vector<std::uint32_t> closed(n);
  for (NodeIndex v = 0; v < n; ++v) {
    closed[v] = std::uint32_t{1} << v;
    for (NodeIndex u : g.neighbors(v)) closed[v] |= std::uint32_t{1} << u;
  }
  const std::uint32_t all = n == 32 ? ~0u : (std::uint32_t{1} << n) - 1;
  for (std::uint32_t s = 0; s <= all; ++s) {
    if (static_cast<std::size_t>(__builtin_popcount(s)) > k) continue;
    std::uint32_t covered = 0;
    for (NodeIndex v = 0; v < n; ++v)
      if (s >> v & 1u) covered |= closed[v];
    if (covered == all) return true;
  }
  return false;
}

/// Both deciders agree on (G_d, k).
inline bool verify_reduction(const Graph& g_d, std::size_t k, const ReductionConstants& rc = {}) {
  return decide_dominating_set_brute(g_d, k) == decide_bri_brute(reduce_dominating_set(g_d, k, rc));
}

}  // namespace indg
