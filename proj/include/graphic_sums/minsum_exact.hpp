#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "graphic_sums/admissible.hpp"
#include "graphic_sums/connectivity.hpp"
#include "graphic_sums/digraph.hpp"
#include "graphic_sums/parallel.hpp"

namespace graphic_sums {

inline constexpr std::size_t kDefaultArrangementCap = 8;
inline constexpr std::size_t kMaxArrangementCap = 10;

/// Raised when n exceeds the arrangement enumeration cap.
class arrangement_cap_error : public graph_error {
 public:
  using graph_error::graph_error;
};

/// Raised when a chamber problem does not converge, or when the exact scan
/// contradicts a bound it must satisfy.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered set partition B_1 > B_2 > ... > B_k of the nodes.
class PreferentialArrangement {
 public:
  explicit PreferentialArrangement(std::vector<std::vector<Node>> blocks) : blocks_(std::move(blocks)) {
    std::size_t n = 0;
    for (auto& b : blocks_) {
      if (b.empty()) throw graph_error("arrangement blocks must be nonempty");
      std::sort(b.begin(), b.end());
      n += b.size();
    }
    if (blocks_.empty()) throw graph_error("arrangement needs at least one block");
    alpha_.assign(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t j = 0; j < blocks_.size(); ++j)
      for (Node v : blocks_[j]) {
        if (v >= n || alpha_[v] != std::numeric_limits<std::size_t>::max())
          throw graph_error("arrangement blocks must partition the nodes");
        alpha_[v] = j;
      }
  }

  /// From block positions: alpha[v] = j puts v in B_{j+1}.
  static PreferentialArrangement from_alpha(std::span<const std::size_t> alpha) {
    const std::size_t k = alpha.empty() ? 0 : *std::max_element(alpha.begin(), alpha.end()) + 1;
    std::vector<std::vector<Node>> blocks(k);
    for (Node v = 0; v < alpha.size(); ++v) blocks[alpha[v]].push_back(v);
    return PreferentialArrangement(std::move(blocks));
  }

  /// Parses ballot notation with 1-based labels, e.g. "(1)>(3,4)>(2)".
  static PreferentialArrangement parse(std::string_view text) {
    std::vector<std::vector<Node>> blocks;
    std::size_t i = 0;
    auto fail = [&] { throw graph_error("malformed ballot \"" + std::string(text) + "\""); };
    while (i < text.size()) {
      if (text[i] != '(') fail();
      ++i;
      std::vector<Node> block;
      while (true) {
        std::size_t value = 0;
        std::size_t digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          value = value * 10 + static_cast<std::size_t>(text[i] - '0');
          ++i;
          ++digits;
        }
        if (digits == 0 || value == 0) fail();
        block.push_back(value - 1);
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        fail();
      }
      blocks.push_back(std::move(block));
      if (i < text.size()) {
        if (text[i] != '>') fail();
        ++i;
        if (i == text.size()) fail();
      }
    }
    return PreferentialArrangement(std::move(blocks));
  }

  [[nodiscard]] std::size_t size() const noexcept { return alpha_.size(); }
  [[nodiscard]] std::size_t block_count() const noexcept { return blocks_.size(); }
  [[nodiscard]] const std::vector<std::vector<Node>>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] const std::vector<std::size_t>& alpha() const noexcept { return alpha_; }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (j > 0) out += '>';
      out += '(';
      for (std::size_t i = 0; i < blocks_[j].size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(blocks_[j][i] + 1);
      }
      out += ')';
    }
    return out;
  }

  friend bool operator==(const PreferentialArrangement&, const PreferentialArrangement&) = default;

 private:
  std::vector<std::vector<Node>> blocks_;
  std::vector<std::size_t> alpha_;
};

namespace detail {

using BlockCode = std::array<std::uint8_t, kMaxArrangementCap>;

inline void check_cap(std::size_t n, std::size_t cap) {
  if (cap > kMaxArrangementCap)
    throw arrangement_cap_error("arrangement cap cannot exceed " + std::to_string(kMaxArrangementCap));
  if (n < 1) throw graph_error("arrangements need n >= 1");
  if (n > cap)
    throw arrangement_cap_error("n = " + std::to_string(n) + " exceeds the arrangement cap " + std::to_string(cap));
}

// Set partitions as restricted growth strings, lexicographic.
inline std::vector<BlockCode> set_partitions(std::size_t n) {
  std::vector<BlockCode> out;
  BlockCode rgs{};
  auto rec = [&](auto&& self, std::size_t i, std::uint8_t blocks) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::uint8_t b = 0; b <= blocks && b < kMaxArrangementCap; ++b) {
      rgs[i] = b;
      self(self, i + 1, b == blocks ? static_cast<std::uint8_t>(blocks + 1) : blocks);
    }
  };
  rgs[0] = 0;
  if (n == 1) return {rgs};
  rec(rec, 1, 1);
  return out;
}

inline std::size_t block_count(const BlockCode& rgs, std::size_t n) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) k = std::max<std::size_t>(k, rgs[i] + 1u);
  return k;
}

// Every ordering of the blocks of one partition, block orders lexicographic.
// fn receives alpha (position of each node's block) and k.
template <class Fn>
void for_each_ordering(const BlockCode& rgs, std::size_t n, Fn&& fn) {
  const std::size_t k = block_count(rgs, n);
  std::array<std::uint8_t, kMaxArrangementCap> order{};
  for (std::size_t j = 0; j < k; ++j) order[j] = static_cast<std::uint8_t>(j);
  BlockCode alpha{};
  do {
    std::array<std::uint8_t, kMaxArrangementCap> position{};
    for (std::size_t pos = 0; pos < k; ++pos) position[order[pos]] = static_cast<std::uint8_t>(pos);
    for (std::size_t v = 0; v < n; ++v) alpha[v] = position[rgs[v]];
    fn(alpha, k);
  } while (std::next_permutation(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)));
}

}  // namespace detail

/// Every preferential arrangement of n nodes, grouped by set partition and
/// then by block order.
inline std::vector<PreferentialArrangement> enumerate_arrangements(std::size_t n,
                                                                   std::size_t cap = kDefaultArrangementCap) {
  detail::check_cap(n, cap);
  std::vector<PreferentialArrangement> out;
  for (const auto& rgs : detail::set_partitions(n))
    detail::for_each_ordering(rgs, n, [&](const detail::BlockCode& alpha, std::size_t) {
      std::vector<std::size_t> a(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(n));
      out.push_back(PreferentialArrangement::from_alpha(a));
    });
  return out;
}

/// Number of arrangements produced by the enumeration, without storing them.
inline std::size_t count_arrangements(std::size_t n, std::size_t cap = kDefaultArrangementCap) {
  detail::check_cap(n, cap);
  std::size_t total = 0;
  for (const auto& rgs : detail::set_partitions(n))
    detail::for_each_ordering(rgs, n, [&](const detail::BlockCode&, std::size_t) { ++total; });
  return total;
}

struct ReducedArc {
  std::size_t source = 0;
  std::size_t target = 0;
  Node origin = 0;
};

/// One node per block, one arc alpha(v) -> beta(v) per original node v, where
/// beta(v) is the lowest-ranked block meeting out(v). Block indices are
/// 0-based positions in the arrangement.
struct ReducedMultigraph {
  std::size_t k = 0;
  std::vector<std::size_t> alpha;
  std::vector<std::size_t> beta;
  std::vector<ReducedArc> arcs;
};

inline ReducedMultigraph reduce(const Digraph& g, const PreferentialArrangement& a) {
  require_positive_out_degree(g);
  if (a.size() != g.size()) throw graph_error("arrangement size does not match node count");
  ReducedMultigraph r;
  r.k = a.block_count();
  r.alpha = a.alpha();
  r.beta.resize(g.size());
  for (Node v = 0; v < g.size(); ++v) {
    std::size_t lowest = 0;
    for (Node w : g.out(v)) lowest = std::max(lowest, r.alpha[w]);
    r.beta[v] = lowest;
    r.arcs.push_back({r.alpha[v], lowest, v});
  }
  return r;
}

enum class ArrangementStatus {
  solved,
  discarded_zero_indegree,
  discarded_arc_outside_cycles,
  discarded_order_violation,
  solver_failed,
};

inline std::string_view to_string(ArrangementStatus s) {
  switch (s) {
    case ArrangementStatus::solved: return "solved";
    case ArrangementStatus::discarded_zero_indegree: return "discarded_zero_indegree";
    case ArrangementStatus::discarded_arc_outside_cycles: return "discarded_arc_outside_cycles";
    case ArrangementStatus::discarded_order_violation: return "discarded_order_violation";
    case ArrangementStatus::solver_failed: return "solver_failed";
  }
  return "?";
}

struct ArrangementSolve {
  ArrangementStatus status = ArrangementStatus::solved;
  /// Positive block values, largest normalized to 1 (set when a solve ran).
  std::vector<double> y;
  double value = std::numeric_limits<double>::quiet_NaN();
  double gradient_norm = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations = 0;
  /// Original nodes whose reduced arc lies on no directed cycle.
  std::vector<Node> acyclic_arcs;
};

struct SolverSettings {
  double tol = 1e-11;
  std::size_t max_iterations = 10000;
};

namespace detail {

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxArrangementCap, kMaxArrangementCap>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxArrangementCap, 1>;
using Values = std::array<double, kMaxArrangementCap>;

// Reduced multigraph in flat form: arc i runs src[i] -> dst[i].
struct ChamberArcs {
  std::size_t k = 0;
  std::size_t m = 0;
  std::array<std::uint8_t, kMaxArrangementCap> src{};
  std::array<std::uint8_t, kMaxArrangementCap> dst{};
};

// Bitmask of arcs lying on no directed cycle, and whether some block has no
// incoming arc.
inline ArrangementStatus structure_status(const ChamberArcs& c, std::uint32_t* acyclic_mask = nullptr) {
  std::uint32_t hit = 0;
  std::array<std::uint32_t, kMaxArrangementCap> reach{};
  for (std::size_t i = 0; i < c.m; ++i) {
    hit |= 1u << c.dst[i];
    reach[c.src[i]] |= 1u << c.dst[i];
  }
  for (std::size_t mid = 0; mid < c.k; ++mid)
    for (std::size_t i = 0; i < c.k; ++i)
      if (reach[i] >> mid & 1u) reach[i] |= reach[mid];
  std::uint32_t acyclic = 0;
  for (std::size_t i = 0; i < c.m; ++i)
    if (c.src[i] != c.dst[i] && !(reach[c.dst[i]] >> c.src[i] & 1u)) acyclic |= 1u << i;
  if (acyclic_mask) *acyclic_mask = acyclic;
  if (hit != (c.k == 32 ? ~0u : (1u << c.k) - 1u)) return ArrangementStatus::discarded_zero_indegree;
  if (acyclic) return ArrangementStatus::discarded_arc_outside_cycles;
  return ArrangementStatus::solved;
}

// Weakly connected components of the reduced multigraph, labelled by first
// appearance in block order.
inline std::size_t weak_components(const ChamberArcs& c, std::array<std::uint8_t, kMaxArrangementCap>& comp) {
  std::array<std::uint8_t, kMaxArrangementCap> parent{};
  for (std::size_t j = 0; j < c.k; ++j) parent[j] = static_cast<std::uint8_t>(j);
  auto find = [&](std::uint8_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < c.m; ++i) {
    const auto a = find(c.src[i]);
    const auto b = find(c.dst[i]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::array<int, kMaxArrangementCap> label;
  label.fill(-1);
  std::size_t count = 0;
  for (std::size_t j = 0; j < c.k; ++j) {
    const auto root = find(static_cast<std::uint8_t>(j));
    if (label[root] < 0) label[root] = static_cast<int>(count++);
    comp[j] = static_cast<std::uint8_t>(label[root]);
  }
  return count;
}

inline double objective(const ChamberArcs& c, const Values& u) {
  double f = 0.0;
  for (std::size_t i = 0; i < c.m; ++i) f += std::exp(u[c.src[i]] - u[c.dst[i]]);
  return f;
}

inline double gradient(const ChamberArcs& c, const Values& u, Values& g) {
  g.fill(0.0);
  for (std::size_t i = 0; i < c.m; ++i) {
    if (c.src[i] == c.dst[i]) continue;
    const double w = std::exp(u[c.src[i]] - u[c.dst[i]]);
    g[c.src[i]] += w;
    g[c.dst[i]] -= w;
  }
  double norm = 0.0;
  for (std::size_t j = 0; j < c.k; ++j) norm = std::max(norm, std::abs(g[j]));
  return norm;
}

struct ChamberSolution {
  bool converged = false;
  Values u{};
  double value = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
};

// Damped Newton on F(u) = sum_arcs exp(u_src - u_dst) with one pinned block
// per weak component. Falls back to a gradient step when the reduced Hessian
// is not positive definite.
inline ChamberSolution solve_chamber(const ChamberArcs& c, const SolverSettings& settings) {
  ChamberSolution s;
  std::array<std::uint8_t, kMaxArrangementCap> comp{};
  const std::size_t ncomp = weak_components(c, comp);
  std::array<bool, kMaxArrangementCap> pinned{};
  std::array<bool, kMaxArrangementCap> seen{};
  for (std::size_t j = 0; j < c.k; ++j)
    if (!seen[comp[j]]) {
      seen[comp[j]] = true;
      pinned[j] = true;
    }
  (void)ncomp;
  std::array<std::size_t, kMaxArrangementCap> free_idx{};
  std::size_t nf = 0;
  for (std::size_t j = 0; j < c.k; ++j)
    if (!pinned[j]) free_idx[nf++] = j;

  Values g{};
  double f = objective(c, s.u);
  double gnorm = gradient(c, s.u, g);
  SmallMatrix h(nf, nf);
  SmallVector rhs(nf);
  std::array<std::size_t, kMaxArrangementCap> local{};
  for (std::size_t i = 0; i < nf; ++i) local[free_idx[i]] = i;

  while (s.iterations < settings.max_iterations) {
    if (gnorm <= settings.tol || nf == 0) {
      s.converged = true;
      break;
    }
    ++s.iterations;
    h.setZero();
    for (std::size_t i = 0; i < c.m; ++i) {
      const std::size_t a = c.src[i];
      const std::size_t b = c.dst[i];
      if (a == b) continue;
      const double w = std::exp(s.u[a] - s.u[b]);
      if (!pinned[a]) h(local[a], local[a]) += w;
      if (!pinned[b]) h(local[b], local[b]) += w;
      if (!pinned[a] && !pinned[b]) {
        h(local[a], local[b]) -= w;
        h(local[b], local[a]) -= w;
      }
    }
    for (std::size_t i = 0; i < nf; ++i) rhs(i) = -g[free_idx[i]];
    SmallVector step(nf);
    Eigen::LDLT<SmallMatrix> ldlt(h);
    bool newton = ldlt.info() == Eigen::Success && ldlt.isPositive();
    if (newton) {
      step = ldlt.solve(rhs);
      newton = step.allFinite() && step.dot(rhs) > 0.0;
    }
    if (!newton) step = rhs;
    const double slope = -step.dot(rhs);

    double t = 1.0;
    bool accepted = false;
    Values trial{};
    Values trial_g{};
    for (int attempt = 0; attempt < 80; ++attempt) {
      trial = s.u;
      for (std::size_t i = 0; i < nf; ++i) trial[free_idx[i]] += t * step(i);
      const double ft = objective(c, trial);
      if (std::isfinite(ft) && ft <= f + 1e-4 * t * slope) {
        accepted = true;
      } else if (std::isfinite(ft) && newton && t == 1.0) {
        // Near the optimum the decrease drops below rounding; take the full
        // step if it shrinks the gradient.
        accepted = gradient(c, trial, trial_g) < gnorm;
      }
      if (accepted) {
        s.u = trial;
        f = ft;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    gnorm = gradient(c, s.u, g);
  }
  s.value = objective(c, s.u);
  s.gradient_norm = gnorm;
  return s;
}

// Strict ordering y_1 > ... > y_k with ratio margin 1 + order_tol, allowing
// each weak component to be rescaled independently (the chamber objective is
// invariant under that). Shifts u in place when feasible.
inline bool order_feasible(const ChamberArcs& c, Values& u, double order_tol) {
  std::array<std::uint8_t, kMaxArrangementCap> comp{};
  const std::size_t ncomp = weak_components(c, comp);
  const double margin = std::log1p(order_tol);
  // Difference constraints shift[b] <= shift[a] + w for consecutive blocks
  // j (component a) and j+1 (component b).
  struct Edge {
    std::size_t from, to;
    double w;
  };
  std::array<Edge, kMaxArrangementCap> edges{};
  std::size_t ne = 0;
  for (std::size_t j = 0; j + 1 < c.k; ++j) {
    const double gap = u[j] - u[j + 1] - margin;
    if (comp[j] == comp[j + 1]) {
      if (gap < 0.0) return false;
      continue;
    }
    edges[ne++] = {comp[j], comp[j + 1], gap};
  }
  std::array<double, kMaxArrangementCap> shift{};
  for (std::size_t round = 0; round <= ncomp; ++round) {
    bool changed = false;
    for (std::size_t e = 0; e < ne; ++e) {
      const double cand = shift[edges[e].from] + edges[e].w;
      if (cand < shift[edges[e].to]) {
        shift[edges[e].to] = cand;
        changed = true;
      }
    }
    if (!changed) break;
    if (round == ncomp) return false;
  }
  for (std::size_t j = 0; j < c.k; ++j) u[j] += shift[comp[j]];
  for (std::size_t j = 0; j + 1 < c.k; ++j)
    if (u[j] - u[j + 1] < margin * (1.0 - 1e-9)) return false;
  return true;
}

inline ChamberArcs flatten(const ReducedMultigraph& r) {
  if (r.k > kMaxArrangementCap || r.arcs.size() > kMaxArrangementCap)
    throw arrangement_cap_error("reduced multigraph larger than the arrangement cap");
  ChamberArcs c;
  c.k = r.k;
  c.m = r.arcs.size();
  for (std::size_t i = 0; i < c.m; ++i) {
    c.src[i] = static_cast<std::uint8_t>(r.arcs[i].source);
    c.dst[i] = static_cast<std::uint8_t>(r.arcs[i].target);
  }
  return c;
}

inline std::vector<double> normalized_y(const Values& u, std::size_t k) {
  const double top = *std::max_element(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<double> y(k);
  for (std::size_t j = 0; j < k; ++j) y[j] = std::exp(u[j] - top);
  return y;
}

}  // namespace detail

/// Filters the chamber (no block without incoming arc, every arc on a cycle)
/// and minimizes sum_v y_alpha(v) / y_beta(v) over y > 0 in log coordinates.
/// Does not check the block order; see apply_order_filter.
inline ArrangementSolve solve_arrangement(const ReducedMultigraph& r, const SolverSettings& settings = {}) {
  const auto c = detail::flatten(r);
  ArrangementSolve out;
  std::uint32_t acyclic = 0;
  out.status = detail::structure_status(c, &acyclic);
  for (std::size_t i = 0; i < c.m; ++i)
    if (acyclic >> i & 1u) out.acyclic_arcs.push_back(r.arcs[i].origin);
  if (out.status != ArrangementStatus::solved) return out;
  const auto sol = detail::solve_chamber(c, settings);
  out.value = sol.value;
  out.gradient_norm = sol.gradient_norm;
  out.iterations = sol.iterations;
  out.y = detail::normalized_y(sol.u, c.k);
  if (!sol.converged) out.status = ArrangementStatus::solver_failed;
  return out;
}

/// Requires y_1 > ... > y_k (ratio margin 1 + order_tol) after rescaling weak
/// components of the reduced multigraph independently. Marks the solve as an
/// order violation otherwise; on success y is replaced by the ordered
/// representative.
inline void apply_order_filter(const ReducedMultigraph& r, ArrangementSolve& s, double order_tol = 1e-7) {
  if (s.status != ArrangementStatus::solved) return;
  const auto c = detail::flatten(r);
  detail::Values u{};
  for (std::size_t j = 0; j < c.k; ++j) u[j] = std::log(s.y[j]);
  if (!detail::order_feasible(c, u, order_tol)) {
    s.status = ArrangementStatus::discarded_order_violation;
    return;
  }
  s.y = detail::normalized_y(u, c.k);
}

/// Chamber value recomputed from the arc labels xi_v = y_alpha(v) / y_beta(v).
inline double xi_value(const ReducedMultigraph& r, std::span<const double> y) {
  double total = 0.0;
  for (const auto& arc : r.arcs) total += y[arc.source] / y[arc.target];
  return total;
}

struct MinSumOptions {
  SolverSettings solver{};
  double order_tol = 1e-7;
  std::size_t cap = kDefaultArrangementCap;
  /// 0 selects worker_count().
  std::size_t threads = 0;
};

struct ArrangementAudit {
  std::size_t total = 0;
  std::size_t zero_indegree = 0;
  std::size_t arc_outside_cycles = 0;
  std::size_t order_violation = 0;
  std::size_t accepted = 0;
  /// Accepted arrangements within 10 * tol of the minimum, in enumeration order.
  std::vector<PreferentialArrangement> ties;
  std::vector<double> tie_values;
};

struct MinSumResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  PreferentialArrangement best_arrangement{{{0}}};
  std::vector<double> best_y;
  NodeVector minimizer_x;
  ArrangementAudit audit;
};

namespace detail {

struct Candidate {
  double value;
  std::size_t ordinal;
  BlockCode alpha;
  Values u;
};

struct BatchOutcome {
  std::size_t total = 0, zero_indegree = 0, arc_outside_cycles = 0, order_violation = 0, accepted = 0;
  std::vector<Candidate> near_best;
  double best = std::numeric_limits<double>::infinity();
  std::optional<std::string> failure;
};

inline void scan_partition(const Digraph& g, const BlockCode& rgs, const MinSumOptions& opt, BatchOutcome& out) {
  const std::size_t n = g.size();
  const double window = 10.0 * opt.solver.tol;
  std::size_t ordinal = 0;
  for_each_ordering(rgs, n, [&](const BlockCode& alpha, std::size_t k) {
    ++out.total;
    const std::size_t here = ordinal++;
    ChamberArcs c;
    c.k = k;
    c.m = n;
    for (Node v = 0; v < n; ++v) {
      std::uint8_t lowest = 0;
      for (Node w : g.out(v)) lowest = std::max(lowest, alpha[w]);
      c.src[v] = alpha[v];
      c.dst[v] = lowest;
    }
    switch (structure_status(c)) {
      case ArrangementStatus::discarded_zero_indegree: ++out.zero_indegree; return;
      case ArrangementStatus::discarded_arc_outside_cycles: ++out.arc_outside_cycles; return;
      default: break;
    }
    auto sol = solve_chamber(c, opt.solver);
    if (!sol.converged) {
      if (!out.failure) {
        std::vector<std::size_t> a(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(n));
        out.failure = PreferentialArrangement::from_alpha(a).to_string() +
                      " (gradient norm " + std::to_string(sol.gradient_norm) + ")";
      }
      return;
    }
    if (!order_feasible(c, sol.u, opt.order_tol)) {
      ++out.order_violation;
      return;
    }
    ++out.accepted;
    if (sol.value > out.best + window) return;
    if (sol.value < out.best) {
      out.best = sol.value;
      std::erase_if(out.near_best, [&](const Candidate& x) { return x.value > out.best + window; });
    }
    out.near_best.push_back({sol.value, here, alpha, sol.u});
  });
}

}  // namespace detail

/// Runs the chamber scan over every arrangement: filter, solve, keep the
/// strictly ordered solutions, minimize. Exact whenever the infimum of the
/// min-sum is attained (always the case for strongly connected graphs).
inline MinSumResult scan_arrangements(const Digraph& g, const MinSumOptions& opt = {}) {
  require_positive_out_degree(g);
  const std::size_t n = g.size();
  detail::check_cap(n, opt.cap);
  const auto partitions = detail::set_partitions(n);
  std::vector<detail::BatchOutcome> batches(partitions.size());
  parallel_for(partitions.size(), worker_count(opt.threads),
               [&](std::size_t i) { detail::scan_partition(g, partitions[i], opt, batches[i]); });

  MinSumResult r;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : batches) {
    if (b.failure) throw solver_error("chamber solve did not converge for " + *b.failure);
    r.audit.total += b.total;
    r.audit.zero_indegree += b.zero_indegree;
    r.audit.arc_outside_cycles += b.arc_outside_cycles;
    r.audit.order_violation += b.order_violation;
    r.audit.accepted += b.accepted;
    best = std::min(best, b.best);
  }
  if (r.audit.accepted == 0) throw solver_error("no arrangement survived the filters");
  r.value = best;
  const double window = 10.0 * opt.solver.tol;
  bool have_best = false;
  for (const auto& b : batches)
    for (const auto& cand : b.near_best) {
      if (cand.value > best + window) continue;
      std::vector<std::size_t> a(cand.alpha.begin(), cand.alpha.begin() + static_cast<std::ptrdiff_t>(n));
      auto arrangement = PreferentialArrangement::from_alpha(a);
      if (!have_best) {
        have_best = true;
        r.best_arrangement = arrangement;
        r.best_y = detail::normalized_y(cand.u, arrangement.block_count());
        std::vector<double> x(n);
        for (Node v = 0; v < n; ++v) x[v] = r.best_y[a[v]];
        r.minimizer_x = NodeVector(std::move(x));
      }
      r.audit.ties.push_back(std::move(arrangement));
      r.audit.tie_values.push_back(cand.value);
    }
  return r;
}

/// Exact infimum of the min-sum for a strongly connected graph. Checked
/// against the cycle-cover lower bound and the all-ones upper bound n.
inline MinSumResult min_sum_glb(const Digraph& g, const MinSumOptions& opt = {}) {
  require_positive_out_degree(g);
  if (!is_strongly_connected(g))
    throw graph_error("min_sum_glb needs a strongly connected graph; use strong_reduction_minsum");
  MinSumResult r = scan_arrangements(g, opt);
  const double n = static_cast<double>(g.size());
  const double slack = 1e-8 * n;
  if (r.value > n + slack) throw solver_error("chamber scan exceeded the upper bound n");
  const double cover = static_cast<double>(max_cycle_cover(g).size());
  if (r.value < cover - slack) throw solver_error("chamber scan fell below the cycle-cover lower bound");
  return r;
}

struct ComponentMinSum {
  std::vector<Node> nodes;
  double value = 0.0;
  /// Chamber scan of the component; absent for a loopless single node, which
  /// contributes no term.
  std::optional<MinSumResult> detail;
};

struct StrongReductionMinSum {
  double value = 0.0;
  std::vector<ComponentMinSum> components;
};

/// Min-sum infimum of any graph with positive out-degrees: the sum over all
/// strong components of the infimum for the component's induced subgraph.
inline StrongReductionMinSum strong_reduction_minsum(const Digraph& g, const MinSumOptions& opt = {}) {
  require_positive_out_degree(g);
  const Condensation c = condense(g);
  StrongReductionMinSum r;
  for (const auto& nodes : c.components) {
    ComponentMinSum part;
    part.nodes = nodes;
    const Digraph sub = g.induced(nodes);
    if (sub.min_out_degree() > 0) {
      part.detail = min_sum_glb(sub, opt);
      part.value = part.detail->value;
    }
    r.value += part.value;
    r.components.push_back(std::move(part));
  }
  return r;
}

/// Max-sum infimum as the sum of girths of the final components, each
/// computed on its own induced subgraph.
inline std::size_t strong_reduction_maxsum(const Digraph& g) {
  require_positive_out_degree(g);
  const Condensation c = condense(g);
  std::size_t total = 0;
  for (std::size_t i : c.final_components) {
    const Girth gi = girth(g.induced(c.components[i]));
    if (!gi.is_finite()) throw graph_error("final component without a cycle");
    total += gi.length();
  }
  return total;
}

}  // namespace graphic_sums
