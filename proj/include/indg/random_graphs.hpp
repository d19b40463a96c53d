#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "indg/graph.hpp"

namespace indg {

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream `stream` of `seed` (for example one per trial).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

/// Barabasi-Albert growth from a complete graph on `init_nodes` nodes. Each
/// new node attaches to `edges_per_node` distinct existing nodes drawn with
/// probability proportional to degree; duplicate draws are redrawn. While
/// there are no more than `edges_per_node` existing nodes, the new node
/// connects to all of them.
inline Graph preferential_attachment(std::size_t n, std::size_t init_nodes, std::size_t edges_per_node,
                                     std::uint64_t seed) {
  if (init_nodes < 1) throw ArgumentError("preferential attachment needs at least one initial node");
  if (edges_per_node < 1) throw ArgumentError("preferential attachment needs edges_per_node >= 1");
  if (n < init_nodes)
    throw ArgumentError("n = " + std::to_string(n) + " is smaller than init_nodes = " + std::to_string(init_nodes));
  Rng rng = make_rng(seed);
  GraphBuilder b(n);
  std::vector<NodeIndex> ends;  // every edge endpoint once, so draws follow degree
  auto link = [&](NodeIndex u, NodeIndex v) {
    b.add_edge(u, v);
    ends.push_back(u);
    ends.push_back(v);
  };
  for (NodeIndex u = 0; u < init_nodes; ++u)
    for (NodeIndex v = u + 1; v < init_nodes; ++v) link(u, v);

  std::vector<NodeIndex> targets;
  for (NodeIndex t = static_cast<NodeIndex>(init_nodes); t < n; ++t) {
    targets.clear();
    if (t <= edges_per_node || ends.empty()) {
      for (NodeIndex v = 0; v < t; ++v) targets.push_back(v);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
      while (targets.size() < edges_per_node) {
        NodeIndex v = ends[pick(rng)];
        if (std::find(targets.begin(), targets.end(), v) == targets.end()) targets.push_back(v);
      }
    }
    for (NodeIndex v : targets) link(t, v);
  }
  return b.build();
}

/// G(n, p): every pair independently with probability p.
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("edge probability must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n);
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v)
      if (coin(rng)) b.add_edge(u, v);
  return b.build();
}

/// n uniform points in [0, side]^2, joined when at most `radius` apart.
inline Graph geometric_random(std::size_t n, double side, double radius, std::uint64_t seed) {
  if (!(side > 0.0)) throw ArgumentError("side must be positive");
  if (!(radius > 0.0)) throw ArgumentError("radius must be positive");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = coord(rng);
    y[i] = coord(rng);
  }
  const double r2 = radius * radius;
  GraphBuilder b(n);
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v) {
      double dx = x[u] - x[v], dy = y[u] - y[v];
      if (dx * dx + dy * dy <= r2) b.add_edge(u, v);
    }
  return b.build();
}

/// `g` plus every missing edge between `hub` and the other nodes.
inline Graph add_hub(const Graph& g, NodeIndex hub) {
  if (hub >= g.node_count())
    throw ArgumentError("hub " + std::to_string(hub) + " is outside 0.." + std::to_string(g.node_count()));
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (auto [u, v] : g.edges())
    if (u != hub && v != hub) edges.emplace_back(u, v);
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    if (v != hub) edges.emplace_back(hub, v);
  return Graph(g.node_count(), edges);
}

/// n i.i.d. draws from Uniform[low, high].
inline std::vector<double> sample_costs(std::size_t n, double low, double high, std::uint64_t seed) {
  if (!(low > 0.0 && low < high)) throw ArgumentError("cost range needs 0 < low < high");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> draw(low, high);
  std::vector<double> out(n);
  for (double& c : out) c = draw(rng);
  return out;
}

inline std::vector<double> constant_costs(std::size_t n, double c) {
  if (!(c > 0.0)) throw ArgumentError("edge cost must be positive");
  return std::vector<double>(n, c);
}

}  // namespace indg
