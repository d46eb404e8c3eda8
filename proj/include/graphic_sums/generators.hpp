#pragma once

#include <span>
#include <vector>

#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

/// Directed cycle 1 -> 2 -> ... -> n -> 1 (a single loop when n = 1).
inline Digraph cycle_graph(std::size_t n) {
  if (n < 1) throw graph_error("cycle needs n >= 1");
  std::vector<std::vector<Node>> out(n);
  for (Node v = 0; v < n; ++v) out[v] = {(v + 1) % n};
  return Digraph(std::move(out));
}

/// Circulant digraph for the pattern set J: node i points to (i + j - 1) mod n
/// for each j in J, with residues written in 1..n. J = {2, 3} gives the
/// denominators x_{i+1} + x_{i+2} of the classical cyclic sum.
inline Digraph circulant(std::size_t n, std::span<const long long> pattern) {
  if (n < 1) throw graph_error("circulant needs n >= 1");
  if (pattern.empty()) throw graph_error("circulant needs a nonempty pattern set");
  const auto m = static_cast<long long>(n);
  std::vector<std::vector<Node>> out(n);
  for (Node v = 0; v < n; ++v)
    for (long long j : pattern) {
      const long long r = ((static_cast<long long>(v) + j - 1) % m + m) % m;
      out[v].push_back(static_cast<Node>(r));
    }
  return Digraph(std::move(out));
}

inline Digraph circulant(std::size_t n, std::initializer_list<long long> pattern) {
  const std::vector<long long> j(pattern);
  return circulant(n, std::span<const long long>(j));
}

/// Graph without an SDR maximizing the min-sum bound: with k = floor((n+1)/2),
/// nodes 1..k all point to the (k-1)-set {n-k+2, .., n}; the rest point to
/// every node. The target set is empty for n = 2, so n >= 3 is required.
inline Digraph extremal_no_sdr_graph(std::size_t n) {
  if (n < 3) throw graph_error("no-SDR extremal graph needs n >= 3 (its target set is empty for n = 2)");
  const std::size_t k = (n + 1) / 2;
  std::vector<Node> phi;
  for (Node w = n - k + 1; w < n; ++w) phi.push_back(w);
  std::vector<Node> all(n);
  for (Node w = 0; w < n; ++w) all[w] = w;
  std::vector<std::vector<Node>> out(n);
  for (Node v = 0; v < n; ++v) out[v] = v < k ? phi : all;
  return Digraph(std::move(out));
}

/// Path 1 -> 2 -> .. -> k fanning out to {k+1..n}, each of which returns to 1.
inline Digraph gamma_k_family(std::size_t n, std::size_t k) {
  if (n < 2 || k < 1 || k > n - 1) throw graph_error("gamma_k family needs 1 <= k <= n-1");
  std::vector<std::vector<Node>> out(n);
  for (Node v = 0; v + 1 < k; ++v) out[v] = {v + 1};
  for (Node w = k; w < n; ++w) out[k - 1].push_back(w);
  for (Node v = k; v < n; ++v) out[v] = {0};
  return Digraph(std::move(out));
}

/// Chain 1 -> 2 -> .. -> n with loops at both ends. Every strong component is
/// a singleton and only the two ends carry loops.
inline Digraph looped_chain(std::size_t n) {
  if (n < 1) throw graph_error("chain needs n >= 1");
  std::vector<std::vector<Node>> out(n);
  for (Node v = 0; v + 1 < n; ++v) out[v].push_back(v + 1);
  out[0].push_back(0);
  out[n - 1].push_back(n - 1);
  return Digraph(std::move(out));
}

}  // namespace graphic_sums
