#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

/// Length of a shortest directed cycle, or infinity for acyclic graphs.
class Girth {
 public:
  static constexpr Girth infinite() noexcept { return Girth(); }
  static constexpr Girth finite(std::size_t length) noexcept { return Girth(length); }

  [[nodiscard]] constexpr bool is_finite() const noexcept { return length_ != kInfinite; }
  /// Only meaningful when is_finite().
  [[nodiscard]] constexpr std::size_t length() const noexcept { return length_; }

  friend constexpr bool operator==(Girth, Girth) = default;
  friend constexpr auto operator<=>(Girth, Girth) = default;

 private:
  static constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();
  constexpr Girth() noexcept = default;
  constexpr explicit Girth(std::size_t length) noexcept : length_(length) {}
  std::size_t length_ = kInfinite;
};

struct Condensation {
  /// Strong components, each sorted, numbered by their smallest node.
  std::vector<std::vector<Node>> components;
  std::vector<std::size_t> component_of;
  /// Arcs between distinct components, sorted and unique.
  std::vector<std::pair<std::size_t, std::size_t>> dag_arcs;
  /// 0 for final components, otherwise 1 + the largest successor height.
  std::vector<std::size_t> heights;
  std::vector<std::size_t> final_components;
  std::vector<Girth> girths;

  [[nodiscard]] std::size_t height() const {
    return heights.empty() ? 0 : *std::max_element(heights.begin(), heights.end());
  }
  [[nodiscard]] bool is_final(std::size_t c) const { return heights[c] == 0; }
};

namespace detail {

// Iterative Tarjan; returns the component index of every node in the order
// components were closed (reverse topological).
inline std::vector<std::size_t> tarjan_components(const Digraph& g, std::size_t& count) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<Node> stack;
  std::vector<std::pair<Node, std::size_t>> frames;
  std::size_t next_index = 0;
  count = 0;
  for (Node root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto succ = g.out(v);
      if (pos < succ.size()) {
        const Node w = succ[pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Node w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      const Node done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return comp;
}

// Distances to `target` along arcs, restricted to nodes >= floor.
inline std::vector<std::size_t> distances_to(const Digraph& reversed, Node target, Node floor) {
  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(reversed.size(), kFar);
  std::deque<Node> queue{target};
  dist[target] = 0;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    for (Node u : reversed.out(v))
      if (u >= floor && dist[u] == kFar) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

}  // namespace detail

inline bool is_strongly_connected(const Digraph& g) {
  std::size_t count = 0;
  detail::tarjan_components(g, count);
  return count == 1;
}

/// Shortest directed cycle by a reverse BFS from every node, O(n * |A|).
inline Girth girth(const Digraph& g) {
  const Digraph rev = g.reversed();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Node v = 0; v < g.size(); ++v) {
    const auto dist = detail::distances_to(rev, v, 0);
    for (Node w : g.out(v))
      if (dist[w] != std::numeric_limits<std::size_t>::max()) best = std::min(best, dist[w] + 1);
  }
  return best == std::numeric_limits<std::size_t>::max() ? Girth::infinite() : Girth::finite(best);
}

/// Lexicographically smallest shortest cycle, listed from its smallest node.
/// Empty when the graph is acyclic.
inline std::vector<Node> shortest_cycle(const Digraph& g) {
  const Girth gir = girth(g);
  if (!gir.is_finite()) return {};
  const Digraph rev = g.reversed();
  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();
  for (Node s = 0; s < g.size(); ++s) {
    const auto dist = detail::distances_to(rev, s, s);
    std::size_t through = kFar;
    for (Node w : g.out(s))
      if (w >= s && dist[w] != kFar) through = std::min(through, dist[w] + 1);
    if (through != gir.length()) continue;
    std::vector<Node> cyc{s};
    Node cur = s;
    for (std::size_t remaining = gir.length(); remaining > 1; --remaining) {
      for (Node w : g.out(cur))
        if (w > s && dist[w] == remaining - 1) {
          cur = w;
          break;
        }
      cyc.push_back(cur);
    }
    return cyc;
  }
  return {};
}

inline Condensation condense(const Digraph& g) {
  const std::size_t n = g.size();
  std::size_t count = 0;
  const auto raw = detail::tarjan_components(g, count);

  // Renumber by smallest contained node.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> relabel(count, kUnset);
  std::size_t next = 0;
  for (Node v = 0; v < n; ++v)
    if (relabel[raw[v]] == kUnset) relabel[raw[v]] = next++;

  Condensation c;
  c.components.assign(count, {});
  c.component_of.resize(n);
  for (Node v = 0; v < n; ++v) {
    c.component_of[v] = relabel[raw[v]];
    c.components[c.component_of[v]].push_back(v);
  }
  for (Node v = 0; v < n; ++v)
    for (Node w : g.out(v))
      if (c.component_of[v] != c.component_of[w]) c.dag_arcs.emplace_back(c.component_of[v], c.component_of[w]);
  std::sort(c.dag_arcs.begin(), c.dag_arcs.end());
  c.dag_arcs.erase(std::unique(c.dag_arcs.begin(), c.dag_arcs.end()), c.dag_arcs.end());

  // Tarjan closes sinks first, so raw index order is a reverse topological order.
  std::vector<std::vector<std::size_t>> succ(count);
  for (auto [a, b] : c.dag_arcs) succ[a].push_back(b);
  std::vector<std::size_t> by_raw(count);
  for (std::size_t r = 0; r < count; ++r) by_raw[r] = relabel[r];
  c.heights.assign(count, 0);
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t comp = by_raw[r];
    for (std::size_t s : succ[comp]) c.heights[comp] = std::max(c.heights[comp], c.heights[s] + 1);
  }
  for (std::size_t i = 0; i < count; ++i)
    if (c.heights[i] == 0) c.final_components.push_back(i);
  c.girths.reserve(count);
  for (const auto& nodes : c.components) c.girths.push_back(girth(g.induced(nodes)));
  return c;
}

/// Union of the final strong components.
inline std::vector<Node> limit_nodes(const Condensation& c) {
  std::vector<Node> out;
  for (std::size_t i : c.final_components) out.insert(out.end(), c.components[i].begin(), c.components[i].end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Sum of the girths of the final strong components; nullopt when one of them
/// is acyclic (possible only with a zero out-degree node).
inline std::optional<std::size_t> total_final_girth(const Digraph& g) {
  const Condensation c = condense(g);
  std::size_t total = 0;
  for (std::size_t i : c.final_components) {
    if (!c.girths[i].is_finite()) return std::nullopt;
    total += c.girths[i].length();
  }
  return total;
}

}  // namespace graphic_sums
