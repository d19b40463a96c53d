#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "indg/error.hpp"

namespace indg {

using NodeIndex = std::uint32_t;

/// Which side of an interconnected pair a node belongs to.
enum class Side : std::uint8_t { Left, Right };

/// A node of G1 (Left) or G2 (Right) addressed by its index within that graph.
struct PartitionedNode {
  Side side;
  NodeIndex index;

  friend bool operator==(const PartitionedNode&, const PartitionedNode&) = default;
};

/// A hop count that may be infinite. Used for distances, diameters and radii.
class Hops {
 public:
  constexpr Hops() noexcept = default;
  constexpr explicit Hops(std::uint32_t value) : value_(value) {
    if (value == kInfinite) throw ArgumentError("hop count out of range");
  }

  static constexpr Hops infinite() noexcept {
    Hops h;
    h.value_ = kInfinite;
    return h;
  }

  constexpr bool is_finite() const noexcept { return value_ != kInfinite; }

  constexpr std::uint32_t value() const {
    if (!is_finite()) throw ArgumentError("infinite hop count has no finite value");
    return value_;
  }

  friend constexpr bool operator==(Hops, Hops) = default;
  friend constexpr auto operator<=>(Hops a, Hops b) { return a.value_ <=> b.value_; }

  friend std::ostream& operator<<(std::ostream& os, Hops h) {
    if (h.is_finite()) return os << h.value_;
    return os << "inf";
  }

  std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

 private:
  static constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value_ = 0;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending. Construction rejects self-loops,
/// duplicate edges and out-of-range endpoints.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t node_count) : offsets_(node_count + 1, 0) {}

  Graph(std::size_t node_count, std::span<const std::pair<NodeIndex, NodeIndex>> edges)
      : offsets_(node_count + 1, 0) {
    for (auto [u, v] : edges) {
      if (u >= node_count || v >= node_count)
        throw ArgumentError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") references a node outside 0.." + std::to_string(node_count));
      if (u == v) throw ArgumentError("self-loop at node " + std::to_string(u));
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];
    neighbors_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges) {
      neighbors_[fill[u]++] = v;
      neighbors_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < node_count; ++i) {
      auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
      auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
      std::sort(first, last);
      if (auto dup = std::adjacent_find(first, last); dup != last)
        throw ArgumentError("duplicate edge (" + std::to_string(i) + "," + std::to_string(*dup) +
                            ")");
    }
  }

  Graph(std::size_t node_count, const std::vector<std::pair<NodeIndex, NodeIndex>>& edges)
      : Graph(node_count, std::span<const std::pair<NodeIndex, NodeIndex>>(edges)) {}

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  bool contains(NodeIndex v) const noexcept { return v < node_count(); }

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    check(v);
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(NodeIndex v) const {
    check(v);
    return offsets_[v + 1] - offsets_[v];
  }

  bool has_edge(NodeIndex u, NodeIndex v) const {
    auto nb = neighbors(u);
    check(v);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    out.reserve(edge_count());
    for (NodeIndex u = 0; u < node_count(); ++u)
      for (NodeIndex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  void check(NodeIndex v) const {
    if (v >= node_count()) [[unlikely]]
      out_of_range(v, node_count());
  }

  [[noreturn, gnu::cold, gnu::noinline]] static void out_of_range(NodeIndex v, std::size_t n) {
    throw ArgumentError("node " + std::to_string(v) + " is not in a graph of " + std::to_string(n) + " nodes");
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> neighbors_;
};

/// Accumulates edges, silently dropping duplicates, then freezes into a Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t node_count) : adjacency_(node_count) {}

  std::size_t node_count() const noexcept { return adjacency_.size(); }

  /// Returns false when the edge was already present.
  bool add_edge(NodeIndex u, NodeIndex v) {
    if (u >= adjacency_.size() || v >= adjacency_.size())
      throw ArgumentError("edge endpoint out of range");
    if (u == v) throw ArgumentError("self-loop at node " + std::to_string(u));
    auto& nu = adjacency_[u];
    if (std::find(nu.begin(), nu.end(), v) != nu.end()) return false;
    nu.push_back(v);
    adjacency_[v].push_back(u);
    ++edges_;
    return true;
  }

  bool has_edge(NodeIndex u, NodeIndex v) const {
    const auto& nu = adjacency_.at(u);
    return std::find(nu.begin(), nu.end(), v) != nu.end();
  }

  std::size_t edge_count() const noexcept { return edges_; }

  Graph build() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    edges.reserve(edges_);
    for (NodeIndex u = 0; u < adjacency_.size(); ++u)
      for (NodeIndex v : adjacency_[u])
        if (u < v) edges.emplace_back(u, v);
    return Graph(adjacency_.size(), edges);
  }

 private:
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::size_t edges_ = 0;
};

/// Shortest-path distances from one source.
struct DistanceMap {
  NodeIndex source = 0;
  std::vector<Hops> dist;

  Hops operator[](NodeIndex v) const { return dist.at(v); }
};

/// Reusable scratch space for repeated BFS runs over graphs of similar size.
class BfsWorkspace {
 public:
  /// BFS from `source`. When `source_neighbors` is given it replaces the
  /// source's adjacency list. Edges incident to the source are only ever
  /// traversed out of it, so this equals BFS on the graph with the source's
  /// edges swapped for the override set.
  std::span<const Hops> run(const Graph& g, NodeIndex source,
                            std::optional<std::span<const NodeIndex>> source_neighbors = {}) {
    g.check(source);
    dist_.assign(g.node_count(), Hops::infinite());
    queue_.clear();
    queue_.reserve(g.node_count());
    dist_[source] = Hops(0);
    queue_.push_back(source);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      NodeIndex u = queue_[head];
      Hops next(dist_[u].value() + 1);
      auto nb = (u == source && source_neighbors) ? *source_neighbors : g.neighbors(u);
      for (NodeIndex v : nb) {
        if (!dist_[v].is_finite()) {
          dist_[v] = next;
          queue_.push_back(v);
        }
      }
    }
    return dist_;
  }

  /// Nodes in the order the last run reached them.
  std::span<const NodeIndex> visit_order() const noexcept { return queue_; }

 private:
  std::vector<Hops> dist_;
  std::vector<NodeIndex> queue_;
};

inline DistanceMap bfs_distances(const Graph& g, NodeIndex source) {
  BfsWorkspace ws;
  auto d = ws.run(g, source);
  return {source, {d.begin(), d.end()}};
}

/// Largest finite pairwise distance, or infinite if some pair is disconnected.
inline Hops diameter(const Graph& g) {
  if (g.node_count() < 2) throw ArgumentError("diameter needs at least 2 nodes");
  BfsWorkspace ws;
  std::uint32_t best = 0;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    auto d = ws.run(g, s);
    if (ws.visit_order().size() != g.node_count()) return Hops::infinite();
    best = std::max(best, d[ws.visit_order().back()].value());
  }
  return Hops(best);
}

/// Lowest-index node adjacent to every other node, if any.
inline std::optional<NodeIndex> find_hub(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return std::nullopt;
  for (NodeIndex v = 0; v < n; ++v)
    if (g.degree(v) == n - 1) return v;
  return std::nullopt;
}

}  // namespace indg
