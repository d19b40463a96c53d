#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "indg/best_response.hpp"
#include "indg/game.hpp"

namespace indg {

/// Why each player ended up with its action in the star construction.
struct EquilibriumTrace {
  NodeIndex hub = 0;
  std::vector<std::size_t> s_low;    // low cost, wired to all of V2
  std::vector<std::size_t> s_h_inf;  // high cost with infinite r-radius, empty
  std::vector<std::size_t> s_h_l;    // high cost with a low-cost player within L_i, empty
  std::vector<std::size_t> builders; // wired to the hub, in selection order
  std::map<std::size_t, std::size_t> suppressed;   // player -> builder within its r-radius
  std::map<std::size_t, std::size_t> near_low_cost; // s_h_l player -> nearest low-cost player
  std::vector<std::size_t> decision_order;          // every player, in the order decided
  std::vector<Hops> l_radii;  // per player; meaningful for high-cost players
  std::vector<Hops> r_radii;
};

struct EquilibriumResult {
  StrategyProfile profile;
  EquilibriumTrace trace;
};

/// Builds a pure Nash equilibrium when G2 has a hub and every player depends
/// on all of V2.
///
/// 1. Low-cost players connect to every node of G2.
/// 2. High-cost players with infinite r-radius stay empty.
/// 3. High-cost players with a low-cost player within G1 distance L_i stay empty.
/// 4. Of the rest, the player with the smallest r-radius (then lowest index)
///    connects to the hub.
/// 5. Every undecided player j within G1 distance r_j of that builder stays empty.
/// 6. Repeat from 4 until nobody is left.
inline EquilibriumResult star_nash_equilibrium(const GameInstance& inst) {
  auto hub = find_hub(inst.g2());
  if (!hub) throw ArgumentError("star equilibrium needs a hub in G2 (a node adjacent to all others)");
  if (!inst.dependency_complete())
    throw ArgumentError("star equilibrium needs a complete bipartite dependency network");

  const std::size_t n = inst.n(), m = inst.m();
  EquilibriumResult out{StrategyProfile::empty(n), {}};
  EquilibriumTrace& tr = out.trace;
  tr.hub = *hub;
  tr.l_radii.assign(n, Hops::infinite());
  tr.r_radii.assign(n, Hops::infinite());

  std::vector<char> decided(n, 0);
  std::vector<CostClass> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = classify(inst.player(i));
    if (cls[i] == CostClass::LowCost) {
      out.profile.actions[i] = full_action(m);
      tr.s_low.push_back(i);
      tr.decision_order.push_back(i);
      decided[i] = 1;
    } else {
      tr.l_radii[i] = l_radius(inst.player(i), m);
      tr.r_radii[i] = r_radius(inst.player(i), m);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (decided[i] || tr.r_radii[i].is_finite()) continue;
    tr.s_h_inf.push_back(i);
    tr.decision_order.push_back(i);
    decided[i] = 1;
  }

  if (!tr.s_low.empty()) {
    // Multi-source BFS over G1 from all low-cost homes, remembering the
    // lowest-index source among the nearest ones.
    std::vector<Hops> dist(n, Hops::infinite());
    std::vector<std::size_t> nearest(n, n);
    std::vector<NodeIndex> queue;
    for (std::size_t s : tr.s_low) {
      dist[s] = Hops(0);
      nearest[s] = s;
      queue.push_back(static_cast<NodeIndex>(s));
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeIndex u = queue[head];
      for (NodeIndex v : inst.g1().neighbors(u)) {
        if (!dist[v].is_finite()) {
          dist[v] = Hops(dist[u].value() + 1);
          nearest[v] = nearest[u];
          queue.push_back(v);
        } else if (dist[v].value() == dist[u].value() + 1) {
          nearest[v] = std::min(nearest[v], nearest[u]);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (decided[i] || !dist[i].is_finite() || dist[i] > tr.l_radii[i]) continue;
      tr.s_h_l.push_back(i);
      tr.near_low_cost[i] = nearest[i];
      tr.decision_order.push_back(i);
      decided[i] = 1;
    }
  }

  std::vector<std::size_t> queue_q;
  for (std::size_t i = 0; i < n; ++i)
    if (!decided[i]) queue_q.push_back(i);
  std::stable_sort(queue_q.begin(), queue_q.end(),
                   [&](std::size_t a, std::size_t b) { return tr.r_radii[a] < tr.r_radii[b]; });

  BfsWorkspace ws;
  for (std::size_t pick : queue_q) {
    if (decided[pick]) continue;
    decided[pick] = 1;
    out.profile.actions[pick] = Action{*hub};
    tr.builders.push_back(pick);
    tr.decision_order.push_back(pick);
    auto d = ws.run(inst.g1(), static_cast<NodeIndex>(pick));
    std::vector<std::size_t> silenced;
    for (std::size_t j = 0; j < n; ++j) {
      if (decided[j] || !d[j].is_finite() || d[j] > tr.r_radii[j]) continue;
      silenced.push_back(j);
    }
    for (std::size_t j : silenced) {
      decided[j] = 1;
      tr.suppressed[j] = pick;
      tr.decision_order.push_back(j);
    }
  }
  return out;
}

/// Sequential best-response order matching the construction's decisions.
inline std::vector<std::size_t> algorithm_order(const EquilibriumTrace& trace) { return trace.decision_order; }

enum class PlayerRole { FullWiring, Builder, FreeRider, Abstain };

inline const char* to_string(PlayerRole r) {
  switch (r) {
    case PlayerRole::FullWiring: return "full-wiring";
    case PlayerRole::Builder: return "builder";
    case PlayerRole::FreeRider: return "free-rider";
    case PlayerRole::Abstain: return "abstain";
  }
  return "?";
}

struct PlayerStatus {
  PlayerRole role = PlayerRole::Abstain;
  std::optional<std::size_t> via;  // player whose edges a free rider uses
};

/// Role of every player in a star equilibrium. Players priced out by an
/// infinite r-radius are reported as Abstain.
inline std::vector<PlayerStatus> free_rider_report(const EquilibriumTrace& trace) {
  std::vector<PlayerStatus> out(trace.r_radii.size());
  for (std::size_t i : trace.s_low) out[i] = {PlayerRole::FullWiring, std::nullopt};
  for (std::size_t i : trace.s_h_inf) out[i] = {PlayerRole::Abstain, std::nullopt};
  for (auto [i, via] : trace.near_low_cost) out[i] = {PlayerRole::FreeRider, via};
  for (std::size_t i : trace.builders) out[i] = {PlayerRole::Builder, std::nullopt};
  for (auto [i, via] : trace.suppressed) out[i] = {PlayerRole::FreeRider, via};
  return out;
}

}  // namespace indg
