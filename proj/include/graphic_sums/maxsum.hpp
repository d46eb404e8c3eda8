#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphic_sums/connectivity.hpp"
#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

using Rational = boost::multiprecision::cpp_rational;

/// Layering of one strongly connected piece: layers[0] is a shortest cycle,
/// layers[j] the nodes whose shortest path to the cycle has j arcs.
struct WitnessLayers {
  std::vector<Node> cycle;
  std::vector<std::vector<Node>> layers;
  /// Admissible choice stepping each node one layer down (around the cycle
  /// on layer 0). Indexed by global node; only the piece's nodes are set.
  std::vector<Node> successor;
};

struct ComponentGirth {
  std::vector<Node> nodes;
  std::size_t girth = 0;
};

struct MaxSumResult {
  std::size_t value = 0;
  std::vector<ComponentGirth> per_component;
  std::vector<WitnessLayers> witness_layers;
};

namespace detail {

// Layers inside the piece `nodes` (sorted) of g. Backward BFS from the
// lexicographically smallest shortest cycle; ties go to the smallest label.
inline WitnessLayers layer_piece(const Digraph& g, std::span<const Node> nodes) {
  const Digraph piece = g.induced(nodes);
  const auto local_cycle = shortest_cycle(piece);
  WitnessLayers w;
  w.successor.assign(g.size(), std::numeric_limits<Node>::max());
  std::vector<std::size_t> depth(piece.size(), std::numeric_limits<std::size_t>::max());
  std::vector<Node> current;
  for (std::size_t i = 0; i < local_cycle.size(); ++i) {
    const Node v = local_cycle[i];
    depth[v] = 0;
    current.push_back(v);
    w.cycle.push_back(nodes[v]);
    w.successor[nodes[v]] = nodes[local_cycle[(i + 1) % local_cycle.size()]];
  }
  std::sort(current.begin(), current.end());
  const Digraph rev = piece.reversed();
  std::size_t level = 0;
  while (!current.empty()) {
    std::vector<Node> global;
    for (Node v : current) global.push_back(nodes[v]);
    w.layers.push_back(std::move(global));
    std::vector<Node> next;
    for (Node v : current)
      for (Node u : rev.out(v))
        if (depth[u] == std::numeric_limits<std::size_t>::max()) {
          depth[u] = level + 1;
          next.push_back(u);
        }
    std::sort(next.begin(), next.end());
    for (Node u : next)
      for (Node t : piece.out(u))
        if (depth[t] == level) {
          w.successor[nodes[u]] = nodes[t];
          break;
        }
    current = std::move(next);
    ++level;
  }
  return w;
}

}  // namespace detail

/// Infimum of the max-sum: the sum of girths of the final strong components.
/// Witness layers are built for each final component.
inline MaxSumResult max_sum_glb(const Digraph& g) {
  require_positive_out_degree(g);
  const Condensation c = condense(g);
  MaxSumResult r;
  for (std::size_t i : c.final_components) {
    // Out-degree > 0 keeps every final component cyclic.
    const std::size_t len = c.girths[i].length();
    r.value += len;
    r.per_component.push_back({c.components[i], len});
    r.witness_layers.push_back(detail::layer_piece(g, c.components[i]));
  }
  return r;
}

/// x_v = eps^j on layer j. For strongly connected g the max-sum at this point
/// equals girth + (n - girth) * eps.
inline std::vector<Rational> epsilon_witness_exact(const Digraph& g, const Rational& eps) {
  if (!(eps > 0 && eps < 1)) throw graph_error("epsilon must lie in (0, 1)");
  if (!is_strongly_connected(g)) throw graph_error("epsilon witness needs a strongly connected graph");
  std::vector<Node> all(g.size());
  std::iota(all.begin(), all.end(), Node{0});
  const WitnessLayers w = detail::layer_piece(g, all);
  std::vector<Rational> x(g.size());
  Rational power = 1;
  for (const auto& layer : w.layers) {
    for (Node v : layer) x[v] = power;
    power *= eps;
  }
  return x;
}

inline NodeVector epsilon_witness(const Digraph& g, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw graph_error("epsilon must lie in (0, 1)");
  if (!is_strongly_connected(g)) throw graph_error("epsilon witness needs a strongly connected graph");
  std::vector<Node> all(g.size());
  std::iota(all.begin(), all.end(), Node{0});
  const WitnessLayers w = detail::layer_piece(g, all);
  std::vector<double> x(g.size());
  double power = 1.0;
  for (const auto& layer : w.layers) {
    for (Node v : layer) x[v] = power;
    power *= eps;
  }
  return NodeVector(std::move(x));
}

/// Max-sum evaluated in exact rational arithmetic.
inline Rational eval_max_sum_exact(const Digraph& g, const std::vector<Rational>& x) {
  require_positive_out_degree(g);
  if (x.size() != g.size()) throw graph_error("vector length does not match node count");
  Rational total = 0;
  for (Node v = 0; v < g.size(); ++v) {
    Rational hi = x[g.out(v)[0]];
    for (Node w : g.out(v)) hi = std::max(hi, x[w]);
    total += x[v] / hi;
  }
  return total;
}

/// Closed form for the circulant graph of pattern J: with offsets j - 1 mod n,
/// there are gcd(n, offsets) cosets, each a strong component of girth t, the
/// fewest offsets (with repetition) summing to 0 mod n. t is found by BFS
/// over Z_n.
inline std::size_t cyclic_max_glb(std::size_t n, std::span<const long long> pattern) {
  if (n < 1) throw graph_error("cyclic max-sum needs n >= 1");
  if (pattern.empty()) throw graph_error("cyclic max-sum needs a nonempty pattern set");
  const auto m = static_cast<long long>(n);
  std::vector<std::size_t> offsets;
  std::size_t cosets = n;
  for (long long j : pattern) {
    const auto d = static_cast<std::size_t>(((j - 1) % m + m) % m);
    offsets.push_back(d);
    cosets = std::gcd(cosets, d);
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, kFar);
  std::deque<std::size_t> queue;
  std::size_t t = kFar;
  for (std::size_t d : offsets) {
    if (d == 0) t = 1;
    if (dist[d] == kFar) {
      dist[d] = 1;
      queue.push_back(d);
    }
  }
  while (t == kFar && !queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t d : offsets) {
      const std::size_t r = (s + d) % n;
      if (r == 0) {
        t = dist[s] + 1;
        break;
      }
      if (dist[r] == kFar) {
        dist[r] = dist[s] + 1;
        queue.push_back(r);
      }
    }
  }
  return t * cosets;
}

inline std::size_t cyclic_max_glb(std::size_t n, std::initializer_list<long long> pattern) {
  const std::vector<long long> j(pattern);
  return cyclic_max_glb(n, std::span<const long long>(j));
}

}  // namespace graphic_sums
