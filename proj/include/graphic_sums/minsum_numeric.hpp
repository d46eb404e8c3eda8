#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <boost/random/sobol.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "graphic_sums/digraph.hpp"
#include "graphic_sums/parallel.hpp"
#include "graphic_sums/sum_eval.hpp"

namespace graphic_sums {

/// Multi-start simplex search settings. The search runs in log coordinates
/// with x_1 = 1; every other coordinate is clamped to [-box, box].
struct OracleConfig {
  std::size_t restarts = 64;
  std::uint64_t seed = 20210601;
  std::size_t max_evals = 20000;
  double box = std::log(1e3);
  double tol = 1e-10;
  /// 0 selects worker_count().
  std::size_t threads = 0;
};

struct OracleResult {
  double value = std::numeric_limits<double>::infinity();
  NodeVector argmin;
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
};

namespace detail {

struct OracleProblem {
  const Digraph* g;
  MeanKind kind;
  double box;
  std::size_t evals = 0;
  std::vector<double> x;
  std::vector<double> buf;

  double operator()(const gsl_vector* z) {
    ++evals;
    x[0] = 1.0;
    for (std::size_t i = 1; i < x.size(); ++i) x[i] = std::exp(std::clamp(gsl_vector_get(z, i - 1), -box, box));
    double total = 0.0;
    for (Node v = 0; v < g->size(); ++v) {
      buf.clear();
      for (Node w : g->out(v)) buf.push_back(x[w]);
      total += x[v] / kind.apply(buf);
    }
    return total;
  }
};

inline double oracle_trampoline(const gsl_vector* z, void* params) {
  return (*static_cast<OracleProblem*>(params))(z);
}

// One restart: simplex descent from `start`, then repeated restarts from the
// best point with a shrinking initial simplex to escape stalls at kinks.
inline std::pair<double, std::vector<double>> descend(const Digraph& g, const MeanKind& kind,
                                                      const OracleConfig& cfg, const std::vector<double>& start,
                                                      std::size_t& evaluations) {
  const std::size_t d = start.size();
  OracleProblem problem{&g, kind, cfg.box, 0, std::vector<double>(g.size()), {}};
  gsl_multimin_function fn{&oracle_trampoline, d, &problem};
  gsl_vector* z = gsl_vector_alloc(d);
  gsl_vector* step = gsl_vector_alloc(d);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d);
  for (std::size_t i = 0; i < d; ++i) gsl_vector_set(z, i, start[i]);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_z = start;
  double scale = std::max(0.5, cfg.box / 4.0);
  for (int round = 0; round < 12 && problem.evals < cfg.max_evals; ++round) {
    gsl_vector_set_all(step, scale);
    gsl_multimin_fminimizer_set(s, &fn, z, step);
    while (problem.evals < cfg.max_evals) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), cfg.tol) == GSL_SUCCESS) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(s);
    const bool improved = value < best - cfg.tol;
    if (value < best) {
      best = value;
      for (std::size_t i = 0; i < d; ++i) best_z[i] = std::clamp(gsl_vector_get(s->x, i), -cfg.box, cfg.box);
    }
    for (std::size_t i = 0; i < d; ++i) gsl_vector_set(z, i, best_z[i]);
    if (!improved && round > 0) scale *= 0.25;
    if (scale < 1e-6) break;
  }
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(z);
  evaluations = problem.evals;
  return {best, best_z};
}

// Scrambled Sobol points in [-box, box]^d; the Cranley-Patterson shift comes
// from the seed.
inline std::vector<std::vector<double>> start_points(std::size_t d, std::size_t count, const OracleConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(d);
  for (double& s : shift) s = unit(rng);
  boost::random::sobol qrng(d);
  const double span = static_cast<double>(qrng.max() - qrng.min()) + 1.0;
  std::vector<std::vector<double>> out(count, std::vector<double>(d));
  for (auto& p : out)
    for (std::size_t i = 0; i < d; ++i) {
      double u = static_cast<double>(qrng() - qrng.min()) / span + shift[i];
      u -= std::floor(u);
      p[i] = cfg.box * (2.0 * u - 1.0);
    }
  return out;
}

inline NodeVector from_log(const std::vector<double>& z, double box) {
  std::vector<double> x(z.size() + 1, 1.0);
  for (std::size_t i = 0; i < z.size(); ++i) x[i + 1] = std::exp(std::clamp(z[i], -box, box));
  return NodeVector(std::move(x));
}

}  // namespace detail

/// Best value of the graphic sum found by multi-start simplex descent. An upper
/// bound on the infimum; reproducible for a fixed seed at any worker count.
inline OracleResult oracle_min(const Digraph& g, const MeanKind& kind, const OracleConfig& cfg = {}) {
  require_positive_out_degree(g);
  if (cfg.restarts < 1) throw graph_error("oracle needs at least one restart");
  if (!(cfg.box > 0.0)) throw graph_error("oracle box must be positive");
  gsl_set_error_handler_off();
  const std::size_t d = g.size() - 1;
  OracleResult r;
  if (d == 0) {
    r.argmin = NodeVector({1.0});
    r.value = eval_sum(g, kind, r.argmin);
    r.evaluations = 1;
    return r;
  }
  const auto starts = detail::start_points(d, cfg.restarts, cfg);
  std::vector<std::pair<double, std::vector<double>>> found(cfg.restarts);
  std::vector<std::size_t> evals(cfg.restarts, 0);
  parallel_for(cfg.restarts, worker_count(cfg.threads),
               [&](std::size_t i) { found[i] = detail::descend(g, kind, cfg, starts[i], evals[i]); });
  for (std::size_t i = 0; i < cfg.restarts; ++i) {
    r.evaluations += evals[i];
    if (found[i].first < r.value) {
      r.value = found[i].first;
      r.best_restart = i;
    }
  }
  r.argmin = detail::from_log(found[r.best_restart].second, cfg.box);
  return r;
}

/// Minimum over the lattice of `levels` points per coordinate spanning
/// [-half_width, half_width] in log coordinates (x_1 = 1). Odd `levels`
/// include the all-ones point.
inline double grid_oracle(const Digraph& g, const MeanKind& kind, std::size_t levels,
                          double half_width = std::log(10.0)) {
  require_positive_out_degree(g);
  if (g.size() > 4) throw graph_error("grid oracle is limited to n <= 4");
  if (levels < 1 || levels > 50) throw graph_error("grid oracle needs 1 <= levels <= 50");
  const std::size_t d = g.size() - 1;
  std::vector<double> ladder(levels);
  for (std::size_t i = 0; i < levels; ++i)
    ladder[i] = levels == 1 ? 1.0
                            : std::exp(-half_width + 2.0 * half_width * static_cast<double>(i) /
                                                         static_cast<double>(levels - 1));
  std::vector<std::size_t> digit(d, 0);
  std::vector<double> x(g.size(), 1.0);
  std::vector<double> buf;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i + 1] = ladder[digit[i]];
    double total = 0.0;
    for (Node v = 0; v < g.size(); ++v) {
      buf.clear();
      for (Node w : g.out(v)) buf.push_back(x[w]);
      total += x[v] / kind.apply(buf);
    }
    best = std::min(best, total);
    std::size_t i = 0;
    while (i < d && ++digit[i] == levels) digit[i++] = 0;
    if (i == d) break;
  }
  return best;
}

}  // namespace graphic_sums
