#include <gtest/gtest.h>

#include <cmath>

#include "graphic_sums/bounds.hpp"
#include "graphic_sums/cyclic.hpp"
#include "graphic_sums/generators.hpp"
#include "graphic_sums/maxsum.hpp"
#include "graphic_sums/minsum_exact.hpp"

using namespace graphic_sums;

TEST(DeltaN, ValuesAndPairing) {
  EXPECT_NEAR(delta_n(3).delta, 3.0 - 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(delta_n(4).delta, 3.0 - 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(delta_n(6).delta, 5.0 - 2.0 * std::sqrt(6.0), 1e-15);
  EXPECT_EQ(delta_n(4).k, 2u);
  for (std::size_t k = 2; k <= 200; ++k) EXPECT_EQ(delta_n(2 * k - 1).delta, delta_n(2 * k).delta);
  EXPECT_NEAR(delta_n(4).complement, 1.0 + 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_THROW(delta_n(1), graph_error);
}

TEST(LowerBound, Values) {
  EXPECT_NEAR(min_minsum_lower_bound(2021), std::exp(1.0) * std::log(2022.0 - std::log(2022.0)), 1e-12);
  EXPECT_GT(min_minsum_lower_bound(2021), 20.0);
  EXPECT_LT(min_minsum_lower_bound(2), 2.0);
  EXPECT_NEAR(min_minsum_lower_bound(10), std::exp(1.0) * std::log(11.0 - std::log(11.0)), 1e-12);
}

TEST(GammaK, ValuesAndScan) {
  EXPECT_NEAR(gamma_k_value(3, 1), 2.0 * std::sqrt(2.0), 1e-15);
  for (std::size_t n = 2; n <= 30; ++n) EXPECT_DOUBLE_EQ(gamma_k_value(n, n - 1), static_cast<double>(n));
  EXPECT_THROW(gamma_k_value(3, 3), graph_error);

  const GammaScan s = min_over_k_gamma_value(2021);
  EXPECT_EQ(s.k, 7u);
  EXPECT_NEAR(s.value, 8.0 * std::pow(2014.0, 1.0 / 8.0), 1e-12);
  EXPECT_LT(s.value, 21.0);
  EXPECT_EQ(min_over_k_gamma_value(3).k, 1u);
  const double r = min_over_k_gamma_value(1000000).value / (std::exp(1.0) * std::log(1e6));
  EXPECT_GT(r, 0.98);
  EXPECT_LT(r, 1.02);
}

TEST(GammaK, ScanMatchesFullScan) {
  for (std::size_t n = 2; n <= 3000; n += (n < 100 ? 1 : 37)) {
    double best = INFINITY;
    for (std::size_t k = 1; k + 1 <= n; ++k) best = std::min(best, gamma_k_value(n, k));
    EXPECT_EQ(min_over_k_gamma_value(n).value, best) << n;
  }
}

TEST(GammaK, BracketAndMonotone) {
  double prev = 0.0;
  for (std::size_t n = 2; n <= 1000; ++n) {
    const double v = min_over_k_gamma_value(n).value;
    if (n <= 200) {
      EXPECT_LT(min_minsum_lower_bound(n), v);
      EXPECT_LT(v, std::exp(1.0) * std::log(n + 1.0) + 1.0);
    }
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(GirthBounds, ArcCount) {
  // Smallest t with (n - t)(n - t + 1)/2 + n <= arcs.
  for (std::size_t n = 2; n <= 40; ++n) EXPECT_EQ(bghs_girth_bound(n, n * (n - 1)), 2u);
  EXPECT_EQ(bghs_girth_bound(40, 100), 30u);
  EXPECT_EQ(bghs_girth_bound(40, 480), 11u);
  EXPECT_EQ(bghs_girth_bound(40, 505), 10u);
  EXPECT_EQ(bghs_girth_bound(5, 4), std::nullopt);
}

TEST(GirthBounds, Conditional) {
  EXPECT_EQ(ch_conditional_bound(40, 12).strongly_connected, 4u);
  EXPECT_EQ(ch_conditional_bound(7, 3).strongly_connected, 3u);
  EXPECT_EQ(ch_conditional_bound(9, 1).strongly_connected, 9u);
  EXPECT_DOUBLE_EQ(ch_conditional_bound(40, 12).general, 80.0 / 12.0);
  EXPECT_THROW(ch_conditional_bound(4, 0), graph_error);
}

TEST(Sandwich, Examples) {
  const BoundReport c5 = sandwich_bounds(cycle_graph(5), 1.0);
  for (const auto& e : c5.entries()) EXPECT_EQ(e.value, 5.0);

  const BoundReport loops = sandwich_bounds(Digraph::from_one_based({{1, 2}, {2}}), INFINITY);
  EXPECT_EQ(loops.find("total final girth")->value, 1.0);
  EXPECT_EQ(loops.find("limit graph node count")->value, 1.0);

  const BoundReport nosdr = sandwich_bounds(extremal_no_sdr_graph(4), -INFINITY);
  EXPECT_EQ(nosdr.find("limit graph node count"), nullptr);
  EXPECT_LE(nosdr.find("total final girth")->value, 1.0 + 2.0 * std::sqrt(2.0));
  EXPECT_GE(nosdr.find("node count")->value, 1.0 + 2.0 * std::sqrt(2.0));
}

TEST(BoundReport, RejectsInconsistentEntries) {
  BoundReport r;
  r.add("lo", BoundKind::lower, 3.0, "a");
  r.add("guess", BoundKind::conditional, 1.0, "b");
  EXPECT_THROW(r.add("hi", BoundKind::upper, 2.0, "c"), std::logic_error);
  EXPECT_THROW(r.add("ex", BoundKind::exact, 2.5, "c"), std::logic_error);
  EXPECT_NO_THROW(r.add("hi", BoundKind::upper, 3.0, "c"));
  const auto j = r.to_json();
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[1]["kind"], "conditional");
  EXPECT_TRUE(j[0]["witness"].is_null());
}

TEST(CyclicPattern, DerivedFields) {
  const CyclicPattern p{4, 1, 7, 4};
  EXPECT_EQ(std::vector<long long>(p.values().begin(), p.values().end()), (std::vector<long long>{1, 4, 7}));
  EXPECT_TRUE(p.contains_one());
  EXPECT_EQ(p.s(), 3);
  EXPECT_EQ(p.r(), 6);
  EXPECT_EQ(CyclicPattern{1}.s(), 0);
  EXPECT_THROW(CyclicPattern(std::vector<long long>{}), graph_error);
}

TEST(CyclicFormula, Examples) {
  EXPECT_EQ(cyclic_glb_formula(9, {1, 4}), 3u);
  EXPECT_EQ(cyclic_glb_formula(10, {1, 4}), 1u);
  EXPECT_EQ(cyclic_glb_formula(7, {2, 3, 4}), 3u);
  EXPECT_EQ(diananda_floor(7, 3), 3u);
  EXPECT_EQ(diananda_floor(3, 3), 1u);
  EXPECT_EQ(max_sum_glb(circulant(3, {2, 4})).value, 1u);
  EXPECT_EQ(diananda_floor(11, 1), 11u);
}

TEST(CyclicFormula, MatchesCondensationExhaustively) {
  for (std::size_t n = 1; n <= 30; ++n)
    for (unsigned mask = 1; mask < 64; ++mask) {
      std::vector<long long> j;
      for (long long b = 0; b < 6; ++b)
        if (mask >> b & 1u) j.push_back(b + 1);
      ASSERT_EQ(cyclic_glb_formula(n, CyclicPattern(j)), max_sum_glb(circulant(n, std::span<const long long>(j))).value)
          << "n=" << n << " mask=" << mask;
    }
}

TEST(CyclicFormula, FloorMatchesIntervalPatterns) {
  for (std::size_t n = 1; n <= 30; ++n)
    for (std::size_t k = 1; k <= 6; ++k)
      EXPECT_EQ(diananda_floor(n, k), cyclic_glb_formula(n, CyclicPattern::interval(2, static_cast<long long>(k) + 1)));
}

TEST(Asymptotic, DeviationStaysBounded) {
  EXPECT_DOUBLE_EQ(asymptotic_ratio(17, {2}), 0.0);
  double worst = 0.0;
  for (std::size_t n = 10; n <= 60; ++n) worst = std::max(worst, std::abs(asymptotic_ratio(n, {2, 4})));
  EXPECT_LE(worst, 2.0);
  worst = 0.0;
  for (std::size_t n = 10; n <= 400; ++n) worst = std::max(worst, std::abs(asymptotic_ratio(n, {2, 3, 4})));
  EXPECT_LE(worst, 1.0);
  // A single offset gives a union of cycles, so m = n and the deviation from
  // n / r grows linearly, so the O(1) form does not hold for every pattern.
  for (std::size_t n = 10; n <= 400; ++n) EXPECT_DOUBLE_EQ(asymptotic_ratio(n, {5}), 0.75 * static_cast<double>(n));
  EXPECT_THROW(asymptotic_ratio(10, {1, 3}), graph_error);
}
