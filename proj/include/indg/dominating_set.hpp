#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "indg/graph.hpp"

namespace indg {

enum class DominatingSetMode { Exact, Greedy };

struct DominatingSetResult {
  std::vector<NodeIndex> nodes;  // sorted ascending
  bool optimal = false;          // false: greedy upper bound only
};

inline constexpr std::size_t kDefaultExactDominatingSetCap = 30;

/// True when every node is in `set` or adjacent to a member of it.
inline bool is_dominating_set(const Graph& g, const std::vector<NodeIndex>& set) {
  std::vector<char> covered(g.node_count(), 0);
  for (NodeIndex v : set) {
    covered.at(v) = 1;
    for (NodeIndex w : g.neighbors(v)) covered[w] = 1;
  }
  for (char c : covered)
    if (!c) return false;
  return true;
}

namespace detail {

using Mask = std::uint64_t;

inline std::vector<Mask> closed_neighborhoods(const Graph& g) {
  std::vector<Mask> closed(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    closed[v] = Mask{1} << v;
    for (NodeIndex w : g.neighbors(v)) closed[v] |= Mask{1} << w;
  }
  return closed;
}

inline std::vector<NodeIndex> mask_to_nodes(Mask m) {
  std::vector<NodeIndex> out;
  while (m) {
    out.push_back(static_cast<NodeIndex>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// Branch on the lowest-index undominated node: some member of its closed
// neighborhood must be chosen. Candidates are tried in ascending index so the
// first optimum found is the deterministic one.
class DominatingSetSearch {
 public:
  explicit DominatingSetSearch(const Graph& g)
      : closed_(closed_neighborhoods(g)),
        full_(g.node_count() == 64 ? ~Mask{0} : (Mask{1} << g.node_count()) - 1) {
    for (Mask c : closed_) max_cover_ = std::max(max_cover_, std::popcount(c));
    best_ = full_;
    best_size_ = std::popcount(full_);
  }

  Mask solve() {
    recurse(0, 0, 0);
    return best_;
  }

 private:
  void recurse(Mask chosen, Mask covered, int size) {
    if (covered == full_) {
      if (size < best_size_) {
        best_size_ = size;
        best_ = chosen;
      }
      return;
    }
    int uncovered = std::popcount(full_ & ~covered);
    int lower = size + (uncovered + max_cover_ - 1) / max_cover_;
    if (lower >= best_size_) return;
    auto pivot = static_cast<NodeIndex>(std::countr_zero(full_ & ~covered));
    Mask options = closed_[pivot];
    while (options) {
      auto v = static_cast<NodeIndex>(std::countr_zero(options));
      options &= options - 1;
      recurse(chosen | (Mask{1} << v), covered | closed_[v], size + 1);
    }
  }

  std::vector<Mask> closed_;
  Mask full_;
  int max_cover_ = 1;
  Mask best_;
  int best_size_;
};

}  // namespace detail

/// Minimum dominating set by branch and bound, or the max-coverage greedy
/// upper bound. Exact mode refuses graphs above `exact_cap` nodes.
inline DominatingSetResult min_dominating_set(const Graph& g, DominatingSetMode mode,
                                              std::size_t exact_cap = kDefaultExactDominatingSetCap) {
  const std::size_t n = g.node_count();
  if (n == 0) return {{}, true};

  if (mode == DominatingSetMode::Exact) {
    if (n > exact_cap || n > 64)
      throw CapacityError("exact dominating set limited to " +
                          std::to_string(std::min<std::size_t>(exact_cap, 64)) + " nodes, graph has " +
                          std::to_string(n));
    detail::DominatingSetSearch search(g);
    return {detail::mask_to_nodes(search.solve()), true};
  }

  std::vector<char> covered(n, 0);
  std::vector<char> chosen(n, 0);
  std::size_t remaining = n;
  while (remaining > 0) {
    NodeIndex best = 0;
    std::size_t best_gain = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      std::size_t gain = covered[v] ? 0 : 1;
      for (NodeIndex w : g.neighbors(v)) gain += covered[w] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    chosen[best] = 1;
    if (!covered[best]) covered[best] = 1, --remaining;
    for (NodeIndex w : g.neighbors(best))
      if (!covered[w]) covered[w] = 1, --remaining;
  }
  DominatingSetResult out;
  for (NodeIndex v = 0; v < n; ++v)
    if (chosen[v]) out.nodes.push_back(v);
  return out;
}

}  // namespace indg
