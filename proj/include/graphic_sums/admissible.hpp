#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

/// A choice of one out-neighbor per node: sigma[v] is in out(v).
class AdmissibleMap {
 public:
  AdmissibleMap(const Digraph& g, std::vector<Node> sigma) : sigma_(std::move(sigma)) {
    if (sigma_.size() != g.size()) throw graph_error("admissible map has wrong length");
    for (Node v = 0; v < g.size(); ++v)
      if (!g.has_arc(v, sigma_[v]))
        throw graph_error("map sends node " + std::to_string(v + 1) + " outside its out-neighborhood");
  }

  [[nodiscard]] Node operator()(Node v) const { return sigma_[v]; }
  [[nodiscard]] const std::vector<Node>& values() const noexcept { return sigma_; }
  [[nodiscard]] std::size_t size() const noexcept { return sigma_.size(); }

  [[nodiscard]] bool is_bijective() const {
    std::vector<bool> hit(sigma_.size(), false);
    for (Node w : sigma_) {
      if (hit[w]) return false;
      hit[w] = true;
    }
    return true;
  }

  friend bool operator==(const AdmissibleMap&, const AdmissibleMap&) = default;

 private:
  std::vector<Node> sigma_;
};

/// |F| = product of out-degrees, exact.
inline boost::multiprecision::cpp_int admissible_map_count(const Digraph& g) {
  boost::multiprecision::cpp_int total = 1;
  for (Node v = 0; v < g.size(); ++v) total *= g.out_degree(v);
  return total;
}

/// Lexicographic walk over the product of out-neighborhoods, stopping after
/// `limit` maps. Empty when some node has out-degree 0.
class AdmissibleMapEnumerator {
 public:
  AdmissibleMapEnumerator(const Digraph& g, std::size_t limit)
      : g_(&g), limit_(limit), digits_(g.size(), 0), done_(g.min_out_degree() == 0 || limit == 0) {}

  std::optional<AdmissibleMap> next() {
    if (done_) return std::nullopt;
    std::vector<Node> sigma(g_->size());
    for (Node v = 0; v < g_->size(); ++v) sigma[v] = g_->out(v)[digits_[v]];
    AdmissibleMap current(*g_, std::move(sigma));
    if (++emitted_ >= limit_) done_ = true;
    advance();
    return current;
  }

 private:
  void advance() {
    // Last node varies fastest.
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < g_->out_degree(i)) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

  const Digraph* g_;
  std::size_t limit_;
  std::size_t emitted_ = 0;
  std::vector<std::size_t> digits_;
  bool done_;
};

inline std::vector<AdmissibleMap> enumerate_admissible(const Digraph& g, std::size_t limit) {
  std::vector<AdmissibleMap> out;
  AdmissibleMapEnumerator it(g, limit);
  while (auto m = it.next()) out.push_back(std::move(*m));
  return out;
}

inline Digraph functional_subgraph(const Digraph& g, const AdmissibleMap& sigma) {
  if (sigma.size() != g.size()) throw graph_error("admissible map has wrong length");
  std::vector<std::vector<Node>> out(g.size());
  for (Node v = 0; v < g.size(); ++v) {
    if (!g.has_arc(v, sigma(v))) throw graph_error("map is not admissible for this graph");
    out[v] = {sigma(v)};
  }
  return Digraph(std::move(out));
}

/// Nodes lying on cycles of a self-map, sorted. These form the final strong
/// components of its functional graph.
inline std::vector<Node> cycle_nodes(const std::vector<Node>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<int> state(n, 0);  // 0 unseen, 1 on current walk, 2 finished
  std::vector<bool> on_cycle(n, false);
  for (Node start = 0; start < n; ++start) {
    std::vector<Node> walk;
    Node v = start;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = sigma[v];
    }
    if (state[v] == 1) {
      Node w = v;
      do {
        on_cycle[w] = true;
        w = sigma[w];
      } while (w != v);
    }
    for (Node u : walk) state[u] = 2;
  }
  std::vector<Node> out;
  for (Node v = 0; v < n; ++v)
    if (on_cycle[v]) out.push_back(v);
  return out;
}

struct SdrResult {
  bool has_sdr = false;
  /// Bijective admissible map when has_sdr.
  std::vector<Node> bijection;
  /// Otherwise a set U whose joint out-neighborhood is smaller than U.
  std::vector<Node> hall_violator;
  std::vector<Node> violator_neighborhood;
};

/// Maximum bipartite matching between tails and heads of arcs (augmenting
/// paths, tails in ascending order, neighbors ascending).
inline SdrResult has_sdr(const Digraph& g) {
  const std::size_t n = g.size();
  constexpr Node kFree = std::numeric_limits<Node>::max();
  std::vector<Node> head_owner(n, kFree), tail_match(n, kFree);

  std::vector<bool> seen;
  auto augment = [&](auto&& self, Node u) -> bool {
    for (Node w : g.out(u)) {
      if (seen[w]) continue;
      seen[w] = true;
      if (head_owner[w] == kFree || self(self, head_owner[w])) {
        head_owner[w] = u;
        tail_match[u] = w;
        return true;
      }
    }
    return false;
  };

  std::optional<Node> unmatched;
  for (Node u = 0; u < n; ++u) {
    seen.assign(n, false);
    if (!augment(augment, u) && !unmatched) unmatched = u;
  }

  SdrResult r;
  if (!unmatched) {
    r.has_sdr = true;
    r.bijection = tail_match;
    return r;
  }
  // Alternating search from an unmatched tail: the reachable tails U have all
  // their heads reachable and matched, so |N(U)| = |U| - 1.
  std::vector<bool> tail_seen(n, false), head_seen(n, false);
  std::deque<Node> queue{*unmatched};
  tail_seen[*unmatched] = true;
  while (!queue.empty()) {
    const Node u = queue.front();
    queue.pop_front();
    for (Node w : g.out(u)) {
      if (head_seen[w]) continue;
      head_seen[w] = true;
      const Node owner = head_owner[w];
      if (owner != kFree && !tail_seen[owner]) {
        tail_seen[owner] = true;
        queue.push_back(owner);
      }
    }
  }
  for (Node v = 0; v < n; ++v) {
    if (tail_seen[v]) r.hall_violator.push_back(v);
    if (head_seen[v]) r.violator_neighborhood.push_back(v);
  }
  return r;
}

struct CycleCoverResult {
  /// Nodes covered by vertex-disjoint cycles of the chosen map, sorted.
  std::vector<Node> covered;
  /// image[i] = sigma0(covered[i]); a permutation of `covered`.
  std::vector<Node> image;
  [[nodiscard]] std::size_t size() const noexcept { return covered.size(); }
};

namespace detail {

// Minimum-cost perfect assignment (Hungarian method, O(n^3)). Returns the
// column assigned to each row.
inline std::vector<std::size_t> solve_assignment(const std::vector<std::vector<long long>>& cost, long long& total) {
  const std::size_t n = cost.size();
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      long long delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    row_to_col[p[j] - 1] = j - 1;
    total += cost[p[j] - 1][j - 1];
  }
  return row_to_col;
}

}  // namespace detail

/// Largest number of nodes coverable by vertex-disjoint cycles of one
/// admissible map. Solved as an assignment: arc u->v costs -1, the skip u->u
/// (when u has no loop) costs 0. An optimal perfect assignment restricted to
/// its arc entries is a permutation of the covered set. Among optima the
/// lexicographically smallest assignment is reported.
inline CycleCoverResult max_cycle_cover(const Digraph& g) {
  require_positive_out_degree(g);
  const std::size_t n = g.size();
  const long long forbidden = static_cast<long long>(n) + 1;
  std::vector<std::vector<long long>> cost(n, std::vector<long long>(n, forbidden));
  for (Node u = 0; u < n; ++u) {
    cost[u][u] = 0;
    for (Node w : g.out(u)) cost[u][w] = -1;
  }
  long long best = 0;
  detail::solve_assignment(cost, best);

  for (Node u = 0; u < n; ++u) {
    const std::vector<long long> row = cost[u];
    for (Node w = 0; w < n; ++w) {
      if (row[w] == forbidden) continue;
      auto& r = cost[u];
      std::fill(r.begin(), r.end(), forbidden);
      r[w] = row[w];
      long long total = 0;
      detail::solve_assignment(cost, total);
      if (total == best) break;
      r = row;
    }
  }
  long long total = 0;
  const auto assignment = detail::solve_assignment(cost, total);

  CycleCoverResult result;
  for (Node u = 0; u < n; ++u)
    if (cost[u][assignment[u]] == -1) {
      result.covered.push_back(u);
      result.image.push_back(assignment[u]);
    }
  return result;
}

}  // namespace graphic_sums
