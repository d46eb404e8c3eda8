#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

/// Symmetric denominator function applied to an out-neighborhood.
class MeanKind {
 public:
  enum class Kind { max, min, power_mean, power_sum, geometric_mean };

  static MeanKind max() { return MeanKind(Kind::max, 0.0); }
  static MeanKind min() { return MeanKind(Kind::min, 0.0); }
  static MeanKind geometric_mean() { return MeanKind(Kind::geometric_mean, 0.0); }
  /// M_p; p = 0 is the geometric mean and p = +-inf are max/min.
  static MeanKind power_mean(double p) { return from_exponent(p); }
  static MeanKind power_sum(double p) {
    if (!std::isfinite(p) || p == 0.0) throw graph_error("power sum needs a finite nonzero exponent");
    return MeanKind(Kind::power_sum, p);
  }
  static MeanKind from_exponent(double p) {
    if (std::isnan(p)) throw graph_error("exponent is NaN");
    if (p == std::numeric_limits<double>::infinity()) return max();
    if (p == -std::numeric_limits<double>::infinity()) return min();
    if (p == 0.0) return geometric_mean();
    return MeanKind(Kind::power_mean, p);
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double p() const noexcept { return p_; }

  /// Exponent on the extended real line (max = +inf, min = -inf).
  [[nodiscard]] double exponent() const noexcept {
    switch (kind_) {
      case Kind::max: return std::numeric_limits<double>::infinity();
      case Kind::min: return -std::numeric_limits<double>::infinity();
      case Kind::geometric_mean: return 0.0;
      default: return p_;
    }
  }

  [[nodiscard]] std::string name() const {
    switch (kind_) {
      case Kind::max: return "max";
      case Kind::min: return "min";
      case Kind::geometric_mean: return "geometric_mean";
      case Kind::power_mean: return "power_mean(" + std::to_string(p_) + ")";
      case Kind::power_sum: return "power_sum(" + std::to_string(p_) + ")";
    }
    return "?";
  }

  /// Applies the function to positive values.
  [[nodiscard]] double apply(std::span<const double> xs) const {
    switch (kind_) {
      case Kind::max: return *std::max_element(xs.begin(), xs.end());
      case Kind::min: return *std::min_element(xs.begin(), xs.end());
      case Kind::geometric_mean: {
        double s = 0.0;
        for (double x : xs) s += std::log(x);
        return std::exp(s / static_cast<double>(xs.size()));
      }
      case Kind::power_mean: return power_sum_of(xs) * std::pow(static_cast<double>(xs.size()), -1.0 / p_);
      case Kind::power_sum: return power_sum_of(xs);
    }
    return 0.0;
  }

 private:
  MeanKind(Kind k, double p) : kind_(k), p_(p) {}

  // (sum x^p)^(1/p); anchored at the dominant entry once |p| > 64 so that the
  // powers stay in range.
  [[nodiscard]] double power_sum_of(std::span<const double> xs) const {
    if (std::abs(p_) <= 64.0) {
      double s = 0.0;
      for (double x : xs) s += std::pow(x, p_);
      return std::pow(s, 1.0 / p_);
    }
    const double anchor = p_ > 0 ? *std::max_element(xs.begin(), xs.end()) : *std::min_element(xs.begin(), xs.end());
    double s = 0.0;
    for (double x : xs) s += std::pow(x / anchor, p_);
    return anchor * std::pow(s, 1.0 / p_);
  }

  Kind kind_;
  double p_;
};

/// Sum over nodes of x_v / f(x restricted to out(v)).
inline double eval_sum(const Digraph& g, const MeanKind& kind, const NodeVector& x) {
  if (x.size() != g.size()) throw graph_error("vector length does not match node count");
  require_positive_out_degree(g);
  std::vector<double> buf;
  double total = 0.0;
  for (Node v = 0; v < g.size(); ++v) {
    buf.clear();
    for (Node w : g.out(v)) buf.push_back(x[w]);
    total += x[v] / kind.apply(buf);
  }
  return total;
}

/// Cyclic sum with pattern J evaluated directly from modular indices:
/// term i is x_i / f(x_{i+j-1} : j in J). Repeated residues count once.
inline double eval_cyclic(std::size_t n, std::span<const long long> pattern, const MeanKind& kind, const NodeVector& x) {
  if (n < 1) throw graph_error("cyclic sum needs n >= 1");
  if (pattern.empty()) throw graph_error("cyclic sum needs a nonempty pattern set");
  if (x.size() != n) throw graph_error("vector length does not match n");
  const auto m = static_cast<long long>(n);
  std::vector<long long> offsets;
  for (long long j : pattern) offsets.push_back(((j - 1) % m + m) % m);
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  std::vector<double> buf(offsets.size());
  double total = 0.0;
  for (long long i = 0; i < m; ++i) {
    for (std::size_t t = 0; t < offsets.size(); ++t) buf[t] = x[static_cast<Node>((i + offsets[t]) % m)];
    total += x[static_cast<Node>(i)] / kind.apply(buf);
  }
  return total;
}

inline double eval_cyclic(std::size_t n, std::initializer_list<long long> pattern, const MeanKind& kind,
                          const NodeVector& x) {
  const std::vector<long long> j(pattern);
  return eval_cyclic(n, std::span<const long long>(j), kind, x);
}

/// The max-sum at x, paired with the reciprocal form
/// sum_v min(y | out(v)) / y_v at y = 1/x. The two agree identically.
inline std::pair<double, double> reciprocity_check(const Digraph& g, const NodeVector& x) {
  const double direct = eval_sum(g, MeanKind::max(), x);
  std::vector<double> y(x.size());
  for (Node v = 0; v < x.size(); ++v) y[v] = 1.0 / x[v];
  double dual = 0.0;
  for (Node v = 0; v < g.size(); ++v) {
    double lo = std::numeric_limits<double>::infinity();
    for (Node w : g.out(v)) lo = std::min(lo, y[w]);
    dual += lo / y[v];
  }
  return {direct, dual};
}

}  // namespace graphic_sums
