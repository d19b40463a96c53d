#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "indg/best_response.hpp"
#include "indg/game.hpp"

namespace indg {

/// Limit on the joint profile space, as the exponent sum n * m.
inline constexpr std::size_t kDefaultJointBudget = 16;

struct WelfareOptimum {
  StrategyProfile profile;
  double welfare = 0.0;
};

enum class PoaStatus { Finite, Infinite, Undefined, NoEquilibrium };

inline const char* to_string(PoaStatus s) {
  switch (s) {
    case PoaStatus::Finite: return "finite";
    case PoaStatus::Infinite: return "INFINITE";
    case PoaStatus::Undefined: return "UNDEFINED";
    case PoaStatus::NoEquilibrium: return "NO_EQUILIBRIUM";
  }
  return "?";
}

struct PoaResult {
  double optimal_welfare = 0.0;
  double min_equilibrium_welfare = 0.0;  // meaningless when equilibrium_count == 0
  PoaStatus status = PoaStatus::Undefined;
  double poa = std::numeric_limits<double>::quiet_NaN();  // set when status == Finite
  std::size_t equilibrium_count = 0;
  StrategyProfile optimum;
  std::vector<StrategyProfile> worst_equilibria;
};

namespace detail {

inline void require_joint_budget(const GameInstance& inst, std::size_t budget) {
  if (inst.n() * inst.m() > budget)
    throw CapacityError("joint profile space 2^" + std::to_string(inst.n() * inst.m()) + " exceeds budget 2^" +
                        std::to_string(budget));
}

/// Calls visit(profile) for every joint profile: mixed-radix order with
/// player 0 most significant, each player's actions in for_each_action order.
template <class Visit>
void for_each_profile(const GameInstance& inst, Visit&& visit) {
  std::vector<Action> actions;
  for_each_action(inst.m(), inst.m(), [&](const Action& a) {
    actions.push_back(a);
    return true;
  });
  const std::size_t n = inst.n();
  std::vector<std::size_t> digit(n, 0);
  StrategyProfile profile = StrategyProfile::empty(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) profile.actions[i] = actions[digit[i]];
    visit(static_cast<const StrategyProfile&>(profile));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < actions.size()) break;
      digit[pos] = 0;
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace detail

/// Welfare-maximizing joint profile; ties go to the first in enumeration order.
inline WelfareOptimum socially_optimal(const GameInstance& inst, std::size_t budget = kDefaultJointBudget) {
  detail::require_joint_budget(inst, budget);
  WelfareOptimum best;
  bool first = true;
  detail::for_each_profile(inst, [&](const StrategyProfile& p) {
    double w = social_welfare(inst, p);
    if (first || strictly_improves(w, best.welfare)) {
      best = {p, w};
      first = false;
    }
  });
  return best;
}

/// Every joint profile that is a pure Nash equilibrium, in enumeration order.
inline std::vector<StrategyProfile> enumerate_equilibria(const GameInstance& inst,
                                                         std::size_t budget = kDefaultJointBudget) {
  detail::require_joint_budget(inst, budget);
  std::vector<StrategyProfile> out;
  detail::for_each_profile(inst, [&](const StrategyProfile& p) {
    if (is_nash_equilibrium(inst, p, NashMode::BruteForce).is_equilibrium) out.push_back(p);
  });
  return out;
}

/// Optimal welfare over the worst equilibrium welfare.
inline PoaResult price_of_anarchy(const GameInstance& inst, std::size_t budget = kDefaultJointBudget) {
  PoaResult out;
  auto opt = socially_optimal(inst, budget);
  out.optimal_welfare = opt.welfare;
  out.optimum = std::move(opt.profile);
  auto eqs = enumerate_equilibria(inst, budget);
  out.equilibrium_count = eqs.size();
  if (eqs.empty()) {
    out.status = PoaStatus::NoEquilibrium;
    return out;
  }
  std::vector<double> w;
  for (const auto& e : eqs) w.push_back(social_welfare(inst, e));
  double worst = w.front();
  for (double x : w) worst = std::min(worst, x);
  out.min_equilibrium_welfare = worst;
  for (std::size_t k = 0; k < eqs.size(); ++k)
    if (!strictly_improves(w[k], worst)) out.worst_equilibria.push_back(eqs[k]);

  double tol = tolerance_for(out.optimal_welfare);
  if (out.optimal_welfare <= tol) {
    out.status = PoaStatus::Undefined;
  } else if (worst <= tolerance_for(worst)) {
    out.status = PoaStatus::Infinite;
    out.poa = std::numeric_limits<double>::infinity();
  } else {
    out.status = PoaStatus::Finite;
    out.poa = out.optimal_welfare / worst;
  }
  return out;
}

}  // namespace indg
