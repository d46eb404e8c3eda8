#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphic_sums/connectivity.hpp"
#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

enum class BoundKind { lower, upper, exact, conditional };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::exact: return "exact";
    case BoundKind::conditional: return "conditional";
  }
  return "?";
}

struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::lower;
  double value = 0.0;
  std::string provenance;
  std::optional<nlohmann::ordered_json> witness;
};

/// Named bounds for one quantity. Adding an entry checks that no lower (or
/// exact) value exceeds an upper (or exact) one; conditional entries are
/// never compared.
class BoundReport {
 public:
  static constexpr double kTolerance = 1e-12;

  BoundReport& add(BoundEntry e) {
    for (const auto& other : entries_) check_pair(e, other);
    entries_.push_back(std::move(e));
    return *this;
  }
  BoundReport& add(std::string name, BoundKind kind, double value, std::string provenance,
                   std::optional<nlohmann::ordered_json> witness = std::nullopt) {
    return add(BoundEntry{std::move(name), kind, value, std::move(provenance), std::move(witness)});
  }

  [[nodiscard]] const std::vector<BoundEntry>& entries() const noexcept { return entries_; }

  [[nodiscard]] const BoundEntry* find(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

  [[nodiscard]] nlohmann::ordered_json to_json() const {
    auto out = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
      nlohmann::ordered_json j;
      j["name"] = e.name;
      j["kind"] = to_string(e.kind);
      j["value"] = e.value;
      j["provenance"] = e.provenance;
      j["witness"] = e.witness ? *e.witness : nlohmann::ordered_json(nullptr);
      out.push_back(std::move(j));
    }
    return out;
  }

 private:
  static bool is_low(BoundKind k) { return k == BoundKind::lower || k == BoundKind::exact; }
  static bool is_high(BoundKind k) { return k == BoundKind::upper || k == BoundKind::exact; }

  static void check_pair(const BoundEntry& a, const BoundEntry& b) {
    const double scale = std::max({1.0, std::abs(a.value), std::abs(b.value)});
    if (is_low(a.kind) && is_high(b.kind) && a.value > b.value + kTolerance * scale)
      throw std::logic_error("bound \"" + a.name + "\" exceeds \"" + b.name + "\"");
    if (is_low(b.kind) && is_high(a.kind) && b.value > a.value + kTolerance * scale)
      throw std::logic_error("bound \"" + b.name + "\" exceeds \"" + a.name + "\"");
  }

  std::vector<BoundEntry> entries_;
};

struct DeltaValue {
  std::size_t k = 0;
  double delta = 0.0;
  /// n - delta: the largest min-sum infimum among graphs without an SDR.
  double complement = 0.0;
};

/// Delta_{2k-1} = Delta_{2k} = 2k - 1 - 2 sqrt(k(k-1)); n is paired with
/// k = floor((n + 1) / 2).
inline DeltaValue delta_n(std::size_t n) {
  if (n < 2) throw graph_error("delta_n needs n >= 2");
  const std::size_t k = (n + 1) / 2;
  const double kk = static_cast<double>(k);
  const double delta = 2.0 * kk - 1.0 - 2.0 * std::sqrt(kk * (kk - 1.0));
  return {k, delta, static_cast<double>(n) - delta};
}

/// e ln(n + 1 - ln(n + 1)): strict lower bound for the smallest min-sum
/// infimum over graphs on n nodes.
inline double min_minsum_lower_bound(std::size_t n) {
  if (n < 2) throw graph_error("lower bound needs n >= 2");
  const double m = static_cast<double>(n) + 1.0;
  return std::exp(1.0) * std::log(m - std::log(m));
}

/// (k + 1)(n - k)^(1/(k+1)), the min-sum value of the layered family.
inline double gamma_k_value(std::size_t n, std::size_t k) {
  if (k < 1 || k + 1 > n) throw graph_error("gamma_k_value needs 1 <= k <= n - 1");
  const double kk = static_cast<double>(k);
  return (kk + 1.0) * std::pow(static_cast<double>(n - k), 1.0 / (kk + 1.0));
}

struct GammaScan {
  std::size_t k = 0;
  double value = 0.0;
};

/// Integer scan of gamma_k_value over k = 1..n-1. The value is unimodal in k,
/// so the scan stops once it has risen past the minimum for a while.
inline GammaScan min_over_k_gamma_value(std::size_t n) {
  if (n < 2) throw graph_error("gamma scan needs n >= 2");
  GammaScan best{1, gamma_k_value(n, 1)};
  for (std::size_t k = 2; k + 1 <= n; ++k) {
    const double v = gamma_k_value(n, k);
    if (v < best.value) best = {k, v};
    else if (k > 2 * best.k + 8) break;
  }
  return best;
}

/// Smallest t >= 2 with arcs >= (n - t)(n - t + 1)/2 + n, which bounds the
/// girth of a strongly connected graph; none when no t <= n qualifies.
inline std::optional<std::size_t> bghs_girth_bound(std::size_t n, std::size_t arcs) {
  if (n < 2) throw graph_error("girth bound needs n >= 2");
  for (std::size_t t = 2; t <= n; ++t) {
    const std::size_t m = n - t;
    if (arcs >= m * (m + 1) / 2 + n) return t;
  }
  return std::nullopt;
}

struct ConditionalGirth {
  /// ceil(n / k), girth bound for strongly connected graphs.
  std::size_t strongly_connected = 0;
  /// 2n / k, bound on the max-sum infimum in general.
  double general = 0.0;
};

/// Bounds that hold if the Caccetta-Haggkvist conjecture does, for minimum
/// out-degree k.
inline ConditionalGirth ch_conditional_bound(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw graph_error("conditional bound needs 1 <= k <= n");
  return {(n + k - 1) / k, 2.0 * static_cast<double>(n) / static_cast<double>(k)};
}

/// g*(G) <= m_p <= n for every power mean, and m_p <= |V(lim G)| for p >= 0.
inline BoundReport sandwich_bounds(const Digraph& g, double p) {
  require_positive_out_degree(g);
  const auto gstar = total_final_girth(g);
  BoundReport r;
  r.add("total final girth", BoundKind::lower, static_cast<double>(*gstar), "girth-of-final-components");
  r.add("node count", BoundKind::upper, static_cast<double>(g.size()), "all-ones-vector");
  if (p >= 0.0) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    const auto lim = limit_nodes(condense(g));
    for (Node v : lim) nodes.push_back(v + 1);
    r.add("limit graph node count", BoundKind::upper, static_cast<double>(lim.size()), "limit-graph-collapse",
          nlohmann::ordered_json{{"nodes", nodes}});
  }
  return r;
}

}  // namespace graphic_sums
