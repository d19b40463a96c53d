#pragma once

#include <random>
#include <string>
#include <vector>

#include "indg/indg.hpp"

namespace fixtures {

using indg::Graph;
using indg::NodeIndex;
using Edges = std::vector<std::pair<NodeIndex, NodeIndex>>;

inline Graph path(std::size_t n) {
  Edges e;
  for (NodeIndex v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph(n, e);
}

inline Graph cycle(std::size_t n) {
  Edges e;
  for (NodeIndex v = 0; v < n; ++v) e.emplace_back(v, static_cast<NodeIndex>((v + 1) % n));
  return Graph(n, e);
}

inline Graph star(std::size_t n, NodeIndex center = 0) {
  Edges e;
  for (NodeIndex v = 0; v < n; ++v)
    if (v != center) e.emplace_back(center, v);
  return Graph(n, e);
}

inline Graph complete(std::size_t n) {
  Edges e;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph edgeless(std::size_t n) { return Graph(n); }

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Edges e;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

/// Graph on n nodes whose edges are the set bits of `mask` over the pairs (u<v) in order.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Edges e;
  std::size_t bit = 0;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1u) e.emplace_back(u, v);
  return Graph(n, e);
}

/// Nonincreasing table of length `len` with entries in [0, top].
inline std::vector<double> random_benefits(std::size_t len, double top, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, top);
  std::vector<double> t(len);
  for (double& x : t) x = u(rng);
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

/// Nine-player instance with the seven-node star G2 and Table-style benefits.
inline indg::GameInstance example2() {
  Edges e1{{7, 0}, {7, 6}, {6, 2}, {2, 4}, {2, 5}, {2, 1}, {5, 3}, {1, 8}};
  std::vector<std::vector<double>> tables{{1.5, 1.3, 1.2, 1.1, 0.2}, {1.2, 0.8, 0.5, 0.2, 0},
                                          {1.1, 0.9, 0.1, 0, 0},      {0.9, 0.8, 0.7, 0.5, 0.2},
                                          {1.2, 1.1, 0.9, 0.2, 0.1},  {1.3, 1, 0.5, 0.4, 0.3},
                                          {3, 1, 0.5, 0.5, 0.4},      {1.2, 0.8, 0.7, 0.5, 0.4},
                                          {1.2, 1.1, 1.1, 1, 0.2}};
  std::vector<indg::PlayerSpec> specs;
  for (auto& t : tables) specs.push_back({indg::BenefitFunction(t), 1.0});
  return indg::GameInstance::complete(Graph(9, e1), star(7), std::move(specs));
}

/// Path G1 with six nodes; players 0 and 5 depend on all of G2, where y0 is
/// adjacent to y2, y3, y4 and y1, y5 are isolated.
inline indg::GameInstance example1(double cost = 3.0, std::vector<double> b = {5, 4, 3, 1}) {
  Edges e2{{0, 2}, {0, 3}, {0, 4}};
  Edges deps;
  for (NodeIndex y = 0; y < 6; ++y) {
    deps.emplace_back(0, y);
    deps.emplace_back(5, y);
  }
  std::vector<indg::PlayerSpec> specs(6, {indg::BenefitFunction(b), cost});
  return indg::GameInstance(path(6), Graph(6, e2), deps, std::move(specs));
}

/// Star G1 and G2; identical players whose only profitable move is shared.
inline indg::GameInstance poa_instance(std::size_t n = 3, std::size_t m = 2) {
  double tail = 1.0 / static_cast<double>(m - 1);
  std::vector<indg::PlayerSpec> specs(n, {indg::BenefitFunction({1.0, tail, tail}), 2.1});
  return indg::GameInstance::complete(star(n), star(m), std::move(specs));
}

/// Independent utility: BFS over a freshly combined graph per dependency.
inline double reference_utility(const indg::GameInstance& inst, const indg::StrategyProfile& profile,
                                std::size_t i) {
  Graph g = indg::combine(inst, profile);
  auto dm = indg::bfs_distances(g, static_cast<NodeIndex>(i));
  const auto& p = inst.player(i);
  double total = 0.0;
  for (NodeIndex y : p.dependencies) {
    indg::Hops d = dm[static_cast<NodeIndex>(inst.n() + y)];
    if (d.is_finite() && d.value() <= p.benefit.horizon()) total += p.benefit.table()[d.value() - 1];
  }
  return total - p.edge_cost * static_cast<double>(profile.actions[i].size());
}

inline std::string sample(const std::string& name) { return std::string(INDG_SAMPLES_DIR) + "/" + name; }

}  // namespace fixtures
