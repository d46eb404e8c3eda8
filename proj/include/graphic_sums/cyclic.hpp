#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

#include "graphic_sums/digraph.hpp"
#include "graphic_sums/maxsum.hpp"

namespace graphic_sums {

/// Pattern set J of a cyclic sum: term i has denominator built from
/// x_{i+j-1}, j in J.
class CyclicPattern {
 public:
  explicit CyclicPattern(std::vector<long long> j) : j_(std::move(j)) {
    if (j_.empty()) throw graph_error("pattern set must be nonempty");
    std::sort(j_.begin(), j_.end());
    j_.erase(std::unique(j_.begin(), j_.end()), j_.end());
    for (long long v : j_) {
      if (v == 1) contains_one_ = true;
      else s_ = std::gcd(s_, std::llabs(v - 1));
      r_ = std::max(r_, std::llabs(v - 1));
    }
  }
  CyclicPattern(std::initializer_list<long long> j) : CyclicPattern(std::vector<long long>(j)) {}

  /// J = {first, ..., last}.
  static CyclicPattern interval(long long first, long long last) {
    if (last < first) throw graph_error("empty pattern interval");
    std::vector<long long> j;
    for (long long v = first; v <= last; ++v) j.push_back(v);
    return CyclicPattern(std::move(j));
  }

  [[nodiscard]] std::span<const long long> values() const noexcept { return j_; }
  [[nodiscard]] bool contains_one() const noexcept { return contains_one_; }
  /// gcd of j - 1 over j != 1; 0 when J = {1}.
  [[nodiscard]] long long s() const noexcept { return s_; }
  /// max |j - 1| over J.
  [[nodiscard]] long long r() const noexcept { return r_; }

 private:
  std::vector<long long> j_;
  bool contains_one_ = false;
  long long s_ = 0;
  long long r_ = 0;
};

/// Exact max-sum infimum of the cyclic sum: gcd(n, s) when 1 is in J (every
/// coset of the subgroup generated by the offsets carries a loop); otherwise
/// the coset count times the shortest offset combination summing to 0 mod n.
inline std::size_t cyclic_glb_formula(std::size_t n, const CyclicPattern& pat) {
  if (n < 1) throw graph_error("cyclic formula needs n >= 1");
  if (pat.contains_one()) return std::gcd(n, static_cast<std::size_t>(pat.s()));
  return cyclic_max_glb(n, pat.values());
}

/// floor((n + k - 1) / k), the max-sum infimum for J = [2, k + 1].
inline std::size_t diananda_floor(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw graph_error("floor formula needs n, k >= 1");
  return (n + k - 1) / k;
}

/// m(n, J) - n / r(J), which stays bounded as n grows when 1 is not in J.
inline double asymptotic_ratio(std::size_t n, const CyclicPattern& pat) {
  if (pat.contains_one()) throw graph_error("asymptotic deviation needs 1 outside the pattern set");
  if (n < 2) throw graph_error("asymptotic deviation needs n >= 2");
  return static_cast<double>(cyclic_glb_formula(n, pat)) - static_cast<double>(n) / static_cast<double>(pat.r());
}

}  // namespace graphic_sums
