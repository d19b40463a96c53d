#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indg/graph.hpp"

namespace indg {

/// Relative tolerance for utility comparisons.
inline constexpr double kRelativeTolerance = 1e-9;

inline double tolerance_for(double magnitude) {
  return kRelativeTolerance * std::max(1.0, std::abs(magnitude));
}

/// `candidate` beats `incumbent` by more than the tolerance.
inline bool strictly_improves(double candidate, double incumbent) {
  return candidate > incumbent + tolerance_for(incumbent);
}

/// `lhs <= rhs` up to the tolerance.
inline bool at_most(double lhs, double rhs) { return lhs <= rhs + tolerance_for(lhs); }

/// Nonincreasing benefit table b(1..K) with an implicit zero tail.
class BenefitFunction {
 public:
  BenefitFunction() = default;

  explicit BenefitFunction(std::vector<double> table) : table_(std::move(table)) {
    if (table_.empty()) throw ArgumentError("benefit table needs at least one entry");
    for (std::size_t d = 0; d < table_.size(); ++d) {
      if (!std::isfinite(table_[d]) || table_[d] < 0.0)
        throw ArgumentError("benefit b(" + std::to_string(d + 1) + ") must be finite and nonnegative");
      if (d > 0 && table_[d] > table_[d - 1])
        throw ArgumentError("benefit table must be nonincreasing: b(" + std::to_string(d + 1) +
                            ") > b(" + std::to_string(d) + ")");
    }
  }

  std::size_t horizon() const noexcept { return table_.size(); }
  std::span<const double> table() const noexcept { return table_; }

  /// b(d) for d >= 1. Zero beyond the horizon and for unreachable targets.
  double at(std::size_t d) const {
    if (d == 0) throw ArgumentError("benefit is defined for distances >= 1");
    return d <= table_.size() ? table_[d - 1] : 0.0;
  }

  double operator()(Hops d) const { return d.is_finite() ? at(d.value()) : 0.0; }

  friend bool operator==(const BenefitFunction&, const BenefitFunction&) = default;

 private:
  std::vector<double> table_;
};

/// Benefit table and edge cost of one player; the home node is implied by position.
struct PlayerSpec {
  BenefitFunction benefit;
  double edge_cost = 1.0;
};

struct Player {
  NodeIndex home = 0;                    // x_i in G1
  BenefitFunction benefit;
  double edge_cost = 1.0;
  std::vector<NodeIndex> dependencies;  // I_i, sorted indices into G2
};

enum class CostClass { HighCost, LowCost };

inline const char* to_string(CostClass c) { return c == CostClass::HighCost ? "high" : "low"; }

/// Interconnection edges of one player, stored as sorted G2 node indices.
using Action = std::vector<NodeIndex>;

struct StrategyProfile {
  std::vector<Action> actions;

  static StrategyProfile empty(std::size_t players) { return {std::vector<Action>(players)}; }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& a : actions) total += a.size();
    return total;
  }

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

/// Two fixed networks, a bipartite dependency relation and one player per G1 node.
class GameInstance {
 public:
  GameInstance(Graph g1, Graph g2, const std::vector<std::pair<NodeIndex, NodeIndex>>& dependency_edges,
               std::vector<PlayerSpec> specs)
      : g1_(std::move(g1)), g2_(std::move(g2)) {
    if (specs.size() != g1_.node_count())
      throw ArgumentError("expected one player per G1 node: " + std::to_string(g1_.node_count()) +
                          " nodes, " + std::to_string(specs.size()) + " players");
    players_.resize(specs.size());
    for (NodeIndex i = 0; i < specs.size(); ++i) {
      if (!(specs[i].edge_cost > 0.0) || !std::isfinite(specs[i].edge_cost))
        throw ArgumentError("player " + std::to_string(i) + ": edge cost must be positive");
      players_[i].home = i;
      players_[i].benefit = std::move(specs[i].benefit);
      players_[i].edge_cost = specs[i].edge_cost;
    }
    for (auto [x, y] : dependency_edges) {
      if (x >= g1_.node_count() || y >= g2_.node_count())
        throw ArgumentError("dependency (" + std::to_string(x) + "," + std::to_string(y) +
                            ") is outside V1 x V2");
      players_[x].dependencies.push_back(y);
    }
    for (auto& p : players_) {
      std::sort(p.dependencies.begin(), p.dependencies.end());
      if (std::adjacent_find(p.dependencies.begin(), p.dependencies.end()) != p.dependencies.end())
        throw ArgumentError("player " + std::to_string(p.home) + " has a duplicate dependency");
    }
  }

  /// Instance with E_I = V1 x V2.
  static GameInstance complete(Graph g1, Graph g2, std::vector<PlayerSpec> specs) {
    std::vector<std::pair<NodeIndex, NodeIndex>> deps;
    deps.reserve(g1.node_count() * g2.node_count());
    for (NodeIndex x = 0; x < g1.node_count(); ++x)
      for (NodeIndex y = 0; y < g2.node_count(); ++y) deps.emplace_back(x, y);
    return GameInstance(std::move(g1), std::move(g2), deps, std::move(specs));
  }

  const Graph& g1() const noexcept { return g1_; }
  const Graph& g2() const noexcept { return g2_; }
  std::span<const Player> players() const noexcept { return players_; }
  const Player& player(std::size_t i) const {
    check_player(i);
    return players_[i];
  }

  std::size_t n() const noexcept { return g1_.node_count(); }
  std::size_t m() const noexcept { return g2_.node_count(); }

  /// Index of a G1 node in the combined graph.
  NodeIndex left(NodeIndex x) const noexcept { return x; }
  /// Index of a G2 node in the combined graph.
  NodeIndex right(NodeIndex y) const noexcept { return static_cast<NodeIndex>(n() + y); }

  PartitionedNode locate(NodeIndex combined) const {
    if (combined < n()) return {Side::Left, combined};
    if (combined < n() + m()) return {Side::Right, static_cast<NodeIndex>(combined - n())};
    throw ArgumentError("combined node index out of range");
  }

  bool dependency_complete() const {
    return std::all_of(players_.begin(), players_.end(),
                       [&](const Player& p) { return p.dependencies.size() == m(); });
  }

  std::vector<std::pair<NodeIndex, NodeIndex>> dependency_edges() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    for (const auto& p : players_)
      for (NodeIndex y : p.dependencies) out.emplace_back(p.home, y);
    return out;
  }

  void check_player(std::size_t i) const {
    if (i >= players_.size())
      throw ArgumentError("player " + std::to_string(i) + " does not exist (n = " +
                          std::to_string(players_.size()) + ")");
  }

  /// Throws unless every action is a sorted, duplicate-free set of G2 nodes.
  void validate(const StrategyProfile& profile) const {
    if (profile.actions.size() != n())
      throw ArgumentError("profile has " + std::to_string(profile.actions.size()) +
                          " actions for " + std::to_string(n()) + " players");
    for (std::size_t i = 0; i < n(); ++i) validate_action(profile.actions[i], i);
  }

  void validate_action(const Action& a, std::size_t i) const {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] >= m())
        throw ArgumentError("player " + std::to_string(i) + ": edge to y" + std::to_string(a[k]) +
                            " is outside V2");
      if (k > 0 && a[k] <= a[k - 1])
        throw ArgumentError("player " + std::to_string(i) + ": action must be sorted and duplicate-free");
    }
  }

 private:
  Graph g1_;
  Graph g2_;
  std::vector<Player> players_;
};

/// Combined graph on V1 then V2 with E1, E2 and every interconnection edge.
inline Graph combine(const GameInstance& inst, const StrategyProfile& profile) {
  inst.validate(profile);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(inst.g1().edge_count() + inst.g2().edge_count() + profile.edge_count());
  for (auto [u, v] : inst.g1().edges()) edges.emplace_back(inst.left(u), inst.left(v));
  for (auto [u, v] : inst.g2().edges()) edges.emplace_back(inst.right(u), inst.right(v));
  for (NodeIndex i = 0; i < inst.n(); ++i)
    for (NodeIndex y : profile.actions[i]) edges.emplace_back(inst.left(i), inst.right(y));
  return Graph(inst.n() + inst.m(), edges);
}

/// Evaluates utilities of alternative actions against a fixed profile.
///
/// Holds the combined graph of `profile`; evaluating player i's candidate
/// action replaces x_i's interconnection edges without rebuilding the graph.
class UtilityEvaluator {
 public:
  UtilityEvaluator(const GameInstance& inst, const StrategyProfile& profile)
      : inst_(&inst), combined_(combine(inst, profile)) {}

  const Graph& combined() const noexcept { return combined_; }
  const GameInstance& instance() const noexcept { return *inst_; }

  /// Distances in the combined graph from x_i after swapping in `action`.
  std::span<const Hops> distances(std::size_t i, const Action& action) {
    inst_->check_player(i);
    inst_->validate_action(action, i);
    override_.clear();
    for (NodeIndex v : inst_->g1().neighbors(static_cast<NodeIndex>(i))) override_.push_back(v);
    for (NodeIndex y : action) override_.push_back(inst_->right(y));
    return ws_.run(combined_, inst_->left(static_cast<NodeIndex>(i)),
                   std::span<const NodeIndex>(override_));
  }

  /// Benefit part of the utility under `action`, without the edge cost.
  double benefit(std::size_t i, const Action& action) {
    auto d = distances(i, action);
    const Player& p = inst_->player(i);
    double total = 0.0;
    for (NodeIndex y : p.dependencies) total += p.benefit(d[inst_->right(y)]);
    return total;
  }

  double utility(std::size_t i, const Action& action) {
    double b = benefit(i, action);
    return b - inst_->player(i).edge_cost * static_cast<double>(action.size());
  }

 private:
  const GameInstance* inst_;
  Graph combined_;
  BfsWorkspace ws_;
  std::vector<NodeIndex> override_;
};

/// Sum over dependencies of b_i(d_G(x_i, y)) minus c_i |W_i|.
inline double player_utility(const GameInstance& inst, const StrategyProfile& profile, std::size_t i) {
  inst.check_player(i);
  UtilityEvaluator eval(inst, profile);
  return eval.utility(i, profile.actions[i]);
}

/// Per-player utilities from one combined graph.
inline std::vector<double> player_utilities(const GameInstance& inst, const StrategyProfile& profile) {
  UtilityEvaluator eval(inst, profile);
  std::vector<double> out(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) out[i] = eval.utility(i, profile.actions[i]);
  return out;
}

inline double social_welfare(const GameInstance& inst, const StrategyProfile& profile) {
  double total = 0.0;
  for (double u : player_utilities(inst, profile)) total += u;
  return total;
}

/// Low cost iff b(1) - b(2) >= c; the boundary counts as low cost.
inline CostClass classify(const Player& p) {
  double gap = p.benefit.at(1) - p.benefit.at(2);
  return at_most(p.edge_cost, gap) ? CostClass::LowCost : CostClass::HighCost;
}

namespace detail {

// b(1) - c + (m - 1) b(2): utility of a single hub edge when the hub
// dominates G2 and nobody else helps.
inline double hub_edge_value(const Player& p, std::size_t m) {
  return p.benefit.at(1) - p.edge_cost + static_cast<double>(m - 1) * p.benefit.at(2);
}

// Largest k >= 0 with lhs <= rhs(k). rhs must be nonincreasing in k and vanish
// beyond the horizon, so a positive lhs bounds the scan.
template <class Rhs>
Hops max_radius(double lhs, std::size_t horizon, Rhs rhs) {
  if (at_most(lhs, 0.0)) return Hops::infinite();
  std::uint32_t k = 0;
  if (!at_most(lhs, rhs(0))) return Hops(0);
  while (k <= horizon && at_most(lhs, rhs(k + 1))) ++k;
  return Hops(k);
}

}  // namespace detail

/// L-radius: largest L with b(1) - c + (m-1) b(2) <= m b(L+1).
/// Infinite when the left side is not positive.
inline Hops l_radius(const Player& p, std::size_t m) {
  if (m < 1) throw ArgumentError("l_radius needs m >= 1");
  double lhs = detail::hub_edge_value(p, m);
  return detail::max_radius(lhs, p.benefit.horizon(), [&](std::uint32_t k) {
    return static_cast<double>(m) * p.benefit.at(k + 1);
  });
}

/// r-radius: largest r with b(1) - c + (m-1) b(2) <= b(r+1) + (m-1) b(r+2).
/// Infinite when the left side is not positive.
inline Hops r_radius(const Player& p, std::size_t m) {
  if (m < 1) throw ArgumentError("r_radius needs m >= 1");
  double lhs = detail::hub_edge_value(p, m);
  return detail::max_radius(lhs, p.benefit.horizon(), [&](std::uint32_t k) {
    return p.benefit.at(k + 1) + static_cast<double>(m - 1) * p.benefit.at(k + 2);
  });
}

/// R-radius: smallest R > 0 with b(1) - c > b(R+1). Empty (undefined) unless
/// b(1) - c > 0. The zero tail guarantees a finite answer otherwise.
inline std::optional<Hops> big_r_radius(const Player& p) {
  double margin = p.benefit.at(1) - p.edge_cost;
  if (!strictly_improves(margin, 0.0)) return std::nullopt;
  for (std::uint32_t r = 1;; ++r)
    if (strictly_improves(margin, p.benefit.at(r + 1))) return Hops(r);
}

/// G1 homes of high-cost players within distance radii[i] of x_i.
inline std::vector<NodeIndex> r_neighborhood(const GameInstance& inst, std::size_t i,
                                             std::span<const Hops> radii) {
  inst.check_player(i);
  if (radii.size() != inst.n()) throw ArgumentError("need one radius per player");
  auto d = bfs_distances(inst.g1(), inst.player(i).home);
  std::vector<NodeIndex> out;
  for (const Player& q : inst.players()) {
    if (classify(q) != CostClass::HighCost) continue;
    Hops dq = d[q.home];
    if (dq.is_finite() && (!radii[i].is_finite() || dq <= radii[i])) out.push_back(q.home);
  }
  return out;
}

}  // namespace indg
