#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "indg/dominating_set.hpp"
#include "indg/game.hpp"

namespace indg {

/// Shortcuts taken by a best-response search, in the order they fired.
enum class PruningRule {
  Lemma1Cap,      // |W| <= |I_i|
  Lemma2LowCost,  // c < b(1) - b(2): wire every dependency
  Lemma3DomCap,   // high cost: |W| <= minimum dominating set of G2
  Lemma4Empty,    // c > b(1) + (|I_i| - 1) b(2): empty action
  Cor2StarPair,   // star G2: compare only {} and {hub}
};

inline const char* to_string(PruningRule r) {
  switch (r) {
    case PruningRule::Lemma1Cap: return "Lemma1Cap";
    case PruningRule::Lemma2LowCost: return "Lemma2LowCost";
    case PruningRule::Lemma3DomCap: return "Lemma3DomCap";
    case PruningRule::Lemma4Empty: return "Lemma4Empty";
    case PruningRule::Cor2StarPair: return "Cor2StarPair";
  }
  return "?";
}

struct BestResponseResult {
  Action action;
  double utility = 0.0;
  std::vector<PruningRule> pruning_trace;
};

struct SearchBudget {
  std::uint64_t max_candidates = std::uint64_t{1} << 20;
  std::size_t exact_dominating_set_cap = kDefaultExactDominatingSetCap;
};

namespace detail {

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

/// Number of subsets of an m-set with at most `cap` elements, saturating.
inline std::uint64_t count_subsets_up_to(std::size_t m, std::size_t cap) {
  std::uint64_t total = 0;
  long double binom = 1.0L;
  std::uint64_t exact = 1;
  for (std::size_t k = 0; k <= std::min(cap, m); ++k) {
    if (k > 0) {
      binom = binom * static_cast<long double>(m - k + 1) / static_cast<long double>(k);
      if (binom > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
      exact = static_cast<std::uint64_t>(binom + 0.5L);
    }
    total = saturating_add(total, exact);
  }
  return total;
}

}  // namespace detail

/// Visits every subset of {0..m-1} with at most `cap` elements: smaller sets
/// first, equal sizes in lexicographic order. Stops early if `visit` returns false.
template <class Visit>
void for_each_action(std::size_t m, std::size_t cap, Visit&& visit) {
  cap = std::min(cap, m);
  Action a;
  for (std::size_t k = 0; k <= cap; ++k) {
    a.resize(k);
    for (std::size_t t = 0; t < k; ++t) a[t] = static_cast<NodeIndex>(t);
    while (true) {
      if (!visit(static_cast<const Action&>(a))) return;
      // next k-combination
      std::size_t t = k;
      while (t > 0 && a[t - 1] == m - k + t - 1) --t;
      if (t == 0) break;
      ++a[t - 1];
      for (std::size_t u = t; u < k; ++u) a[u] = a[u - 1] + 1;
    }
  }
}

/// Full dependency set of player i as an action.
inline Action dependency_action(const GameInstance& inst, std::size_t i) {
  return inst.player(i).dependencies;
}

inline Action full_action(std::size_t m) {
  Action a(m);
  for (std::size_t y = 0; y < m; ++y) a[y] = static_cast<NodeIndex>(y);
  return a;
}

/// Exhaustive best response against the other players' actions in `eval`.
///
/// Lemma-based shortcuts are applied first: a low-cost player (strictly)
/// wires all dependencies, a player above the Lemma 4 threshold stays empty,
/// and the search is capped at |I_i| edges, further at the minimum dominating
/// set size of G2 for a high-cost player who depends on all of V2. Ties go to
/// the first action in for_each_action order.
inline BestResponseResult brute_force_best_response(UtilityEvaluator& eval, std::size_t i,
                                                    const SearchBudget& budget = {}) {
  const GameInstance& inst = eval.instance();
  const Player& p = inst.player(i);
  const double b1 = p.benefit.at(1), b2 = p.benefit.at(2), c = p.edge_cost;
  const std::size_t deps = p.dependencies.size();
  BestResponseResult out;

  if (strictly_improves(b1 - b2, c)) {
    out.action = p.dependencies;
    out.utility = eval.utility(i, out.action);
    out.pruning_trace.push_back(PruningRule::Lemma2LowCost);
    return out;
  }
  double lemma4_threshold = b1 + (deps == 0 ? -b2 : static_cast<double>(deps - 1) * b2);
  if (strictly_improves(c, lemma4_threshold)) {
    out.utility = eval.utility(i, out.action);
    out.pruning_trace.push_back(PruningRule::Lemma4Empty);
    return out;
  }

  std::size_t cap = deps;
  out.pruning_trace.push_back(PruningRule::Lemma1Cap);
  // The dominating-set cap needs a minimum dominating set inside I_i, which
  // full dependency guarantees.
  if (classify(p) == CostClass::HighCost && deps == inst.m() &&
      inst.m() <= budget.exact_dominating_set_cap) {
    auto dom = min_dominating_set(inst.g2(), DominatingSetMode::Exact, budget.exact_dominating_set_cap);
    if (dom.nodes.size() < cap) {
      cap = dom.nodes.size();
      out.pruning_trace.push_back(PruningRule::Lemma3DomCap);
    }
  }

  std::uint64_t candidates = detail::count_subsets_up_to(inst.m(), cap);
  if (candidates > budget.max_candidates)
    throw CapacityError("best response for player " + std::to_string(i) + " needs " +
                        (candidates == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                                 : std::to_string(candidates)) +
                        " candidates (m = " + std::to_string(inst.m()) + ", size cap = " + std::to_string(cap) +
                        "), budget is " + std::to_string(budget.max_candidates));

  bool first = true;
  for_each_action(inst.m(), cap, [&](const Action& a) {
    double u = eval.utility(i, a);
    if (first || strictly_improves(u, out.utility)) {
      out.action = a;
      out.utility = u;
      first = false;
    }
    return true;
  });
  return out;
}

inline BestResponseResult brute_force_best_response(const GameInstance& inst, const StrategyProfile& profile,
                                                    std::size_t i, const SearchBudget& budget = {}) {
  inst.check_player(i);
  UtilityEvaluator eval(inst, profile);
  return brute_force_best_response(eval, i, budget);
}

/// Every maximum-utility action over all 2^m subsets, with no pruning.
struct ArgmaxSet {
  double utility = 0.0;
  std::vector<Action> actions;
};

inline ArgmaxSet exhaustive_argmax(UtilityEvaluator& eval, std::size_t i, const SearchBudget& budget = {}) {
  const std::size_t m = eval.instance().m();
  if (m >= 63 || (std::uint64_t{1} << m) > budget.max_candidates)
    throw CapacityError("exhaustive argmax over 2^" + std::to_string(m) + " actions exceeds budget");
  std::vector<std::pair<double, Action>> all;
  for_each_action(m, m, [&](const Action& a) {
    all.emplace_back(eval.utility(i, a), a);
    return true;
  });
  ArgmaxSet out;
  out.utility = all.front().first;
  for (auto& [u, a] : all) out.utility = std::max(out.utility, u);
  for (auto& [u, a] : all)
    if (!strictly_improves(out.utility, u)) out.actions.push_back(std::move(a));
  return out;
}

namespace detail {

inline void require_star_player(const GameInstance& inst, std::size_t i, NodeIndex hub) {
  if (hub >= inst.m()) throw ArgumentError("hub y" + std::to_string(hub) + " is outside V2");
  if (inst.m() > 1 && inst.g2().degree(hub) != inst.m() - 1)
    throw ArgumentError("y" + std::to_string(hub) + " is not adjacent to every other node of G2");
  if (inst.player(i).dependencies.size() != inst.m())
    throw ArgumentError("player " + std::to_string(i) + " does not depend on every node of G2");
}

}  // namespace detail

/// Best response when G2 has hub `hub` and player i depends on all of V2.
/// Low-cost players wire everything; high-cost players pick the better of
/// {} and {hub}, preferring {} on ties.
inline BestResponseResult star_best_response(UtilityEvaluator& eval, std::size_t i, NodeIndex hub) {
  const GameInstance& inst = eval.instance();
  inst.check_player(i);
  detail::require_star_player(inst, i, hub);
  BestResponseResult out;
  if (classify(inst.player(i)) == CostClass::LowCost) {
    out.action = full_action(inst.m());
    out.utility = eval.utility(i, out.action);
    out.pruning_trace.push_back(PruningRule::Lemma2LowCost);
    return out;
  }
  out.pruning_trace.push_back(PruningRule::Cor2StarPair);
  double empty = eval.utility(i, {});
  Action hub_only{hub};
  double wired = eval.utility(i, hub_only);
  if (strictly_improves(wired, empty)) {
    out.action = std::move(hub_only);
    out.utility = wired;
  } else {
    out.utility = empty;
  }
  return out;
}

inline BestResponseResult star_best_response(const GameInstance& inst, const StrategyProfile& profile,
                                             std::size_t i, NodeIndex hub) {
  inst.check_player(i);
  UtilityEvaluator eval(inst, profile);
  return star_best_response(eval, i, hub);
}

enum class NashMode { BruteForce, StarRestricted };

struct NashCheck {
  bool is_equilibrium = true;
  std::optional<std::size_t> deviator;
  double current_utility = 0.0;                  // deviator's utility in the profile
  std::optional<BestResponseResult> deviation;  // a strictly better action
};

namespace detail {

inline NodeIndex require_star_instance(const GameInstance& inst) {
  auto hub = find_hub(inst.g2());
  if (!hub) throw ArgumentError("G2 has no hub node (no node adjacent to all others)");
  if (!inst.dependency_complete()) throw ArgumentError("dependency network is not complete bipartite");
  return *hub;
}

}  // namespace detail

/// True iff no player can strictly improve. BruteForce searches each player's
/// action space; StarRestricted relies on the two-candidate structure of star
/// instances and scales to large graphs. `eval` must be built from `profile`.
inline NashCheck is_nash_equilibrium(UtilityEvaluator& eval, const StrategyProfile& profile, NashMode mode,
                                     const SearchBudget& budget = {}) {
  const GameInstance& inst = eval.instance();
  inst.validate(profile);
  std::optional<NodeIndex> hub;
  if (mode == NashMode::StarRestricted) hub = detail::require_star_instance(inst);
  NashCheck out;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    double current = eval.utility(i, profile.actions[i]);
    auto br = mode == NashMode::BruteForce ? brute_force_best_response(eval, i, budget)
                                           : star_best_response(eval, i, *hub);
    if (strictly_improves(br.utility, current)) {
      out.is_equilibrium = false;
      out.deviator = i;
      out.current_utility = current;
      out.deviation = std::move(br);
      return out;
    }
  }
  return out;
}

inline NashCheck is_nash_equilibrium(const GameInstance& inst, const StrategyProfile& profile, NashMode mode,
                                     const SearchBudget& budget = {}) {
  UtilityEvaluator eval(inst, profile);
  return is_nash_equilibrium(eval, profile, mode, budget);
}

struct DynamicsResult {
  StrategyProfile profile;
  bool converged = false;
  std::size_t rounds = 0;  // rounds executed, including the final quiet one
};

/// Sequential best-response dynamics in a fixed order. A player switches only
/// when its best response strictly improves on its current action. Stops after
/// a round without changes or after `max_rounds`.
inline DynamicsResult sequential_brd(const GameInstance& inst, StrategyProfile start,
                                     const std::vector<std::size_t>& order, std::size_t max_rounds,
                                     NashMode mode, const SearchBudget& budget = {}) {
  inst.validate(start);
  for (std::size_t i : order) inst.check_player(i);
  std::optional<NodeIndex> hub;
  if (mode == NashMode::StarRestricted) hub = detail::require_star_instance(inst);

  DynamicsResult out{std::move(start), false, 0};
  auto eval = std::make_unique<UtilityEvaluator>(inst, out.profile);
  while (out.rounds < max_rounds) {
    ++out.rounds;
    bool changed = false;
    for (std::size_t i : order) {
      double current = eval->utility(i, out.profile.actions[i]);
      auto br = mode == NashMode::BruteForce ? brute_force_best_response(*eval, i, budget)
                                             : star_best_response(*eval, i, *hub);
      if (strictly_improves(br.utility, current)) {
        out.profile.actions[i] = std::move(br.action);
        eval = std::make_unique<UtilityEvaluator>(inst, out.profile);
        changed = true;
      }
    }
    if (!changed) {
      out.converged = true;
      break;
    }
  }
  return out;
}

namespace detail {

// G1 nodes (by combined index < n) on the paths of the shortest-path DAG from
// `source`, restricted to paths that end in `targets`.
inline std::vector<char> g1_nodes_on_shortest_paths(const Graph& g, std::span<const Hops> dist,
                                                    std::span<const NodeIndex> order,
                                                    const std::vector<char>& is_target, std::size_t n) {
  std::vector<char> on(g.node_count(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeIndex v = *it;
    if (is_target[v]) on[v] = 1;
    if (!on[v]) {
      for (NodeIndex w : g.neighbors(v))
        if (dist[w].is_finite() && dist[w].value() == dist[v].value() + 1 && on[w]) {
          on[v] = 1;
          break;
        }
    }
  }
  std::vector<char> g1(n, 0);
  for (std::size_t v = 0; v < n; ++v) g1[v] = on[v];
  return g1;
}

using NodeSet = std::vector<NodeIndex>;

// Distinct G1-node sets of shortest paths from source to target, keeping only
// inclusion-minimal ones.
inline std::vector<NodeSet> shortest_path_g1_sets(const Graph& g, std::span<const Hops> dist, NodeIndex target,
                                                  std::size_t n, std::uint64_t& budget) {
  std::set<NodeSet> found;
  NodeSet stack;
  // Walk predecessors from target back to the source (distance 0).
  auto walk = [&](auto&& self, NodeIndex v) -> void {
    if (v < n) stack.push_back(v);
    if (dist[v].value() == 0) {
      if (budget == 0) throw CapacityError("shortest-path enumeration exceeded its path budget");
      --budget;
      NodeSet s = stack;
      std::sort(s.begin(), s.end());
      found.insert(std::move(s));
    } else {
      for (NodeIndex w : g.neighbors(v))
        if (dist[w].is_finite() && dist[w].value() + 1 == dist[v].value()) self(self, w);
    }
    if (v < n) stack.pop_back();
  };
  walk(walk, target);
  std::vector<NodeSet> minimal;
  for (const auto& s : found) {
    bool dominated = false;
    for (const auto& t : found)
      if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(s);
  }
  return minimal;
}

}  // namespace detail

struct DisjointPathOptions {
  /// Require every shortest path of one player to avoid every shortest path
  /// of the other, instead of asking for one disjoint selection.
  bool all_paths = false;
  std::uint64_t path_budget = 100000;
};

/// Whether shortest paths from x_i to I_i and from x_j to I_j can be chosen
/// with disjoint G1 node sets (homes included) in the combined graph of
/// `profile`. Unreachable dependencies have no path and are ignored.
inline bool check_disjoint_shortest_paths(const GameInstance& inst, const StrategyProfile& profile, std::size_t i,
                                          std::size_t j, const DisjointPathOptions& options = {}) {
  inst.check_player(i);
  inst.check_player(j);
  if (i == j) throw ArgumentError("disjoint path check needs two distinct players");
  Graph g = combine(inst, profile);
  const std::size_t n = inst.n();

  struct Reach {
    std::vector<Hops> dist;
    std::vector<NodeIndex> order;
    std::vector<NodeIndex> targets;
    std::vector<char> union_g1;
  };
  auto explore = [&](std::size_t p) {
    BfsWorkspace ws;
    Reach s;
    auto d = ws.run(g, inst.left(static_cast<NodeIndex>(p)));
    s.dist.assign(d.begin(), d.end());
    s.order.assign(ws.visit_order().begin(), ws.visit_order().end());
    std::vector<char> is_target(g.node_count(), 0);
    for (NodeIndex y : inst.player(p).dependencies)
      if (s.dist[inst.right(y)].is_finite()) {
        is_target[inst.right(y)] = 1;
        s.targets.push_back(inst.right(y));
      }
    s.union_g1 = detail::g1_nodes_on_shortest_paths(g, s.dist, s.order, is_target, n);
    return s;
  };
  Reach a = explore(i), b = explore(j);
  if (a.targets.empty() || b.targets.empty()) return true;

  bool overlap = false;
  for (std::size_t v = 0; v < n; ++v) overlap |= a.union_g1[v] && b.union_g1[v];
  if (!overlap || options.all_paths) return !overlap;

  // Search for one path per target with disjoint G1 footprints.
  std::uint64_t budget = options.path_budget;
  struct Choice {
    int owner;
    std::vector<detail::NodeSet> options;
  };
  std::vector<Choice> choices;
  for (NodeIndex t : a.targets) choices.push_back({0, detail::shortest_path_g1_sets(g, a.dist, t, n, budget)});
  for (NodeIndex t : b.targets) choices.push_back({1, detail::shortest_path_g1_sets(g, b.dist, t, n, budget)});
  std::sort(choices.begin(), choices.end(),
            [](const Choice& x, const Choice& y) { return x.options.size() < y.options.size(); });

  std::vector<std::array<int, 2>> used(n, {0, 0});
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == choices.size()) return true;
    const int me = choices[k].owner, other = 1 - me;
    for (const auto& opt : choices[k].options) {
      bool clash = false;
      for (NodeIndex v : opt) clash |= used[v][other] > 0;
      if (clash) continue;
      for (NodeIndex v : opt) ++used[v][me];
      if (self(self, k + 1)) return true;
      for (NodeIndex v : opt) --used[v][me];
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace indg
