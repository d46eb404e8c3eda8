#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "graphic_sums/admissible.hpp"
#include "graphic_sums/bounds.hpp"
#include "graphic_sums/generators.hpp"
#include "graphic_sums/maxsum.hpp"
#include "graphic_sums/minsum_exact.hpp"
#include "graphic_sums/sum_eval.hpp"
#include "support/oracles.hpp"

using namespace graphic_sums;

namespace {

Digraph example_graph() { return Digraph::from_one_based({{2}, {3, 4}, {2, 4}, {1}}); }

// S = x1/min(x1,x2) + x2/x3 + x3/x2
Digraph tied_graph() { return Digraph::from_one_based({{1, 2}, {3}, {2}}); }

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

TEST(Arrangement, BallotRoundTrip) {
  const auto a = PreferentialArrangement::parse("(1)>(3,4)>(2)");
  EXPECT_EQ(a.block_count(), 3u);
  EXPECT_EQ(a.alpha(), (std::vector<std::size_t>{0, 2, 1, 1}));
  EXPECT_EQ(a.to_string(), "(1)>(3,4)>(2)");
  EXPECT_EQ(PreferentialArrangement::parse("(4,3)>(2,1)").to_string(), "(3,4)>(1,2)");
  for (const char* bad : {"", "(1", "(1)>", "(0)", "(1)(2)", "(1,)", "(1)>(1)", "(1)>(3)"})
    EXPECT_THROW(PreferentialArrangement::parse(bad), graph_error) << bad;
}

TEST(Arrangement, CountsFollowRecurrence) {
  const auto expected = oracle::fubini(8);
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(count_arrangements(n), expected[n]) << n;
  EXPECT_EQ(expected[3], 13);
}

TEST(Arrangement, EnumerationIsExhaustiveAndDistinct) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = enumerate_arrangements(n);
    std::set<std::string> seen;
    for (const auto& a : all) {
      EXPECT_EQ(a.size(), n);
      EXPECT_EQ(PreferentialArrangement::parse(a.to_string()), a);
      seen.insert(a.to_string());
    }
    EXPECT_EQ(seen.size(), all.size());
    EXPECT_EQ(all.size(), count_arrangements(n));
  }
  EXPECT_EQ(enumerate_arrangements(2)[0].to_string(), "(1,2)");
}

TEST(Arrangement, CapIsEnforced) {
  EXPECT_THROW(count_arrangements(9), arrangement_cap_error);
  EXPECT_THROW(count_arrangements(3, 11), arrangement_cap_error);
  EXPECT_NO_THROW(count_arrangements(3, 10));
  EXPECT_THROW(min_sum_glb(cycle_graph(9)), arrangement_cap_error);
}

TEST(Reduce, FirstExampleTable) {
  // The printed table gives beta(4) = 1; the accompanying sum and figure use
  // y1/y2 for node 4, i.e. beta(4) = 2, which is what the definition gives.
  const auto r = reduce(example_graph(), PreferentialArrangement::parse("(4)>(1)>(2)>(3)"));
  EXPECT_EQ(one_based(r.alpha), (std::vector<std::size_t>{2, 3, 4, 1}));
  EXPECT_EQ(one_based(r.beta), (std::vector<std::size_t>{3, 4, 3, 2}));
  const ArrangementSolve s = solve_arrangement(r);
  EXPECT_NE(s.status, ArrangementStatus::solved);
  EXPECT_EQ(s.acyclic_arcs, (std::vector<Node>{0, 3}));
}

TEST(Reduce, SecondExampleTable) {
  const auto r = reduce(example_graph(), PreferentialArrangement::parse("(1)>(3,4)>(2)"));
  EXPECT_EQ(one_based(r.alpha), (std::vector<std::size_t>{1, 3, 2, 2}));
  EXPECT_EQ(one_based(r.beta), (std::vector<std::size_t>{3, 2, 3, 1}));
  const ArrangementSolve s = solve_arrangement(r);
  EXPECT_EQ(s.status, ArrangementStatus::solved);
  EXPECT_TRUE(s.acyclic_arcs.empty());
}

TEST(SolveArrangement, SingleBlockAndTwoCycle) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const Digraph g = circulant(n, {1, 2});
    const auto r = reduce(g, enumerate_arrangements(n).front());
    const auto s = solve_arrangement(r);
    EXPECT_EQ(s.status, ArrangementStatus::solved);
    EXPECT_NEAR(s.value, static_cast<double>(n), 1e-12);
  }
  const auto r = reduce(cycle_graph(2), PreferentialArrangement::parse("(1)>(2)"));
  const auto s = solve_arrangement(r);
  ASSERT_EQ(s.status, ArrangementStatus::solved);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
  EXPECT_NEAR(s.y[0], s.y[1], 1e-9);
}

TEST(SolveArrangement, ResidualAndXiFormulation) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> size(2, 5);
  std::size_t solved = 0;
  for (int i = 0; i < 60; ++i) {
    const Digraph g = oracle::random_strong_graph(rng, size(rng), 0.4);
    for (const auto& a : enumerate_arrangements(g.size())) {
      const auto r = reduce(g, a);
      const auto s = solve_arrangement(r);
      if (s.status != ArrangementStatus::solved) continue;
      ++solved;
      EXPECT_LE(s.gradient_norm, 1e-11);
      EXPECT_NEAR(xi_value(r, s.y), s.value, 1e-10 * s.value);
      // Around every cycle of the reduced graph the labels multiply to 1,
      // in particular along 2-cycles a->b->a.
      for (const auto& e : r.arcs)
        for (const auto& f : r.arcs)
          if (e.source == f.target && e.target == f.source)
            EXPECT_NEAR(s.y[e.source] / s.y[e.target] * (s.y[f.source] / s.y[f.target]), 1.0, 1e-10);
    }
  }
  EXPECT_GT(solved, 100u);
}

TEST(MinSum, Examples) {
  // Permutation with cycle type (2,3).
  EXPECT_NEAR(strong_reduction_minsum(Digraph::from_one_based({{2}, {1}, {4}, {5}, {3}})).value, 5.0, 1e-9);
  EXPECT_THROW(min_sum_glb(Digraph::from_one_based({{2}, {1}, {4}, {5}, {3}})), graph_error);
  EXPECT_NEAR(min_sum_glb(extremal_no_sdr_graph(4)).value, 1.0 + 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(min_sum_glb(cycle_graph(6)).value, 6.0, 1e-9);
  EXPECT_NEAR(min_sum_glb(example_graph()).value, 4.0, 1e-9);
  EXPECT_THROW(min_sum_glb(tied_graph()), graph_error);
}

TEST(MinSum, TwoParameterMinimizersGiveTiedChambers) {
  const MinSumResult r = scan_arrangements(tied_graph());
  EXPECT_NEAR(r.value, 3.0, 1e-9);
  ASSERT_EQ(r.audit.ties.size(), 2u);
  EXPECT_EQ(r.audit.ties[0].to_string(), "(1,2,3)");
  EXPECT_EQ(r.audit.ties[1].to_string(), "(2,3)>(1)");
  EXPECT_EQ(r.best_arrangement.to_string(), "(1,2,3)");
  EXPECT_NEAR(strong_reduction_minsum(tied_graph()).value, 3.0, 1e-9);
  // Any x1 = a <= b = x2 = x3 attains 3.
  EXPECT_NEAR(eval_sum(tied_graph(), MeanKind::min(), NodeVector({0.3, 1.0, 1.0})), 3.0, 1e-12);
}

TEST(MinSum, AuditCountsAddUp) {
  const MinSumResult r = min_sum_glb(example_graph());
  const auto& a = r.audit;
  EXPECT_EQ(a.total, 75u);
  EXPECT_EQ(a.zero_indegree + a.arc_outside_cycles + a.order_violation + a.accepted, a.total);
  EXPECT_GE(a.ties.size(), 1u);
}

TEST(MinSum, ScaleInvarianceAndMinimizer) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int i = 0; i < 80; ++i) {
    const Digraph g = oracle::random_strong_graph(rng, size(rng), 0.35);
    const MinSumResult r = min_sum_glb(g);
    const double at = eval_sum(g, MeanKind::min(), r.minimizer_x);
    EXPECT_NEAR(at, r.value, 1e-9);
    EXPECT_NEAR(eval_sum(g, MeanKind::min(), r.minimizer_x.scaled(17.5)), at, 1e-9);
    EXPECT_GE(r.value, static_cast<double>(max_sum_glb(g).value) - 1e-9);
    EXPECT_GE(r.value, static_cast<double>(max_cycle_cover(g).size()) - 1e-9);
    EXPECT_LE(r.value, static_cast<double>(g.size()) + 1e-9);
    EXPECT_DOUBLE_EQ(*std::max_element(r.best_y.begin(), r.best_y.end()), 1.0);
  }
}

TEST(MinSum, ValuesNeverBeatRandomPoints) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> logx(-4.0, 4.0);
  for (int i = 0; i < 40; ++i) {
    const Digraph g = oracle::random_strong_graph(rng, 5, 0.35);
    const double m = min_sum_glb(g).value;
    for (int t = 0; t < 200; ++t) {
      std::vector<double> x(5);
      for (double& v : x) v = std::exp(logx(rng));
      EXPECT_GE(eval_sum(g, MeanKind::min(), NodeVector(x)), m - 1e-9);
    }
  }
}

TEST(MinSum, CirculantsGiveN) {
  for (std::size_t n = 1; n <= 7; ++n)
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<long long> j;
      for (long long b = 0; b < 4; ++b)
        if (mask >> b & 1u) j.push_back(b + 1);
      const Digraph g = circulant(n, std::span<const long long>(j));
      const double v = is_strongly_connected(g) ? min_sum_glb(g).value : strong_reduction_minsum(g).value;
      EXPECT_NEAR(v, static_cast<double>(n), 1e-8) << "n=" << n << " mask=" << mask;
    }
}

TEST(MinSum, SdrDichotomyUpToThreeNodes) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Digraph& g : oracle::strong_graphs_labelled(n)) {
      const bool at_n = std::abs(min_sum_glb(g).value - static_cast<double>(n)) <= 1e-8;
      EXPECT_EQ(at_n, oracle::has_sdr_brute(g));
    }
}

TEST(MinSum, NoSdrExtremalValues) {
  for (std::size_t n = 3; n <= 6; ++n)
    EXPECT_NEAR(min_sum_glb(extremal_no_sdr_graph(n)).value, delta_n(n).complement, 1e-8) << n;
}

TEST(MinSum, LayeredFamilyStaysBelowItsFormula) {
  for (std::size_t n = 2; n <= 7; ++n)
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      const double v = min_sum_glb(gamma_k_family(n, k)).value;
      EXPECT_LE(v, gamma_k_value(n, k) + 1e-8) << n << "," << k;
    }
}

TEST(MinSum, SmallestOverPositiveDegreeGraphsIsTwo) {
  for (std::size_t n = 2; n <= 8; ++n) {
    EXPECT_NEAR(strong_reduction_minsum(looped_chain(n)).value, 2.0, 1e-9);
    EXPECT_EQ(strong_reduction_maxsum(looped_chain(n)), 1u);
  }
}

TEST(StrongReduction, Examples) {
  const Digraph c2c3 = Digraph::from_one_based({{2}, {1}, {4}, {5}, {3}});
  EXPECT_NEAR(strong_reduction_minsum(c2c3).value, 5.0, 1e-9);
  EXPECT_NEAR(strong_reduction_minsum(Digraph::from_one_based({{1, 2}, {2}})).value, 2.0, 1e-9);
  EXPECT_NEAR(strong_reduction_minsum(example_graph()).value, min_sum_glb(example_graph()).value, 1e-12);
  EXPECT_EQ(strong_reduction_maxsum(circulant(6, {1, 3})), 2u);
  EXPECT_EQ(strong_reduction_maxsum(cycle_graph(5)), 5u);
  EXPECT_EQ(strong_reduction_maxsum(Digraph::from_one_based({{1, 2}, {2}})), 1u);
}

TEST(StrongReduction, MatchesWholeGraphScanWhenAttained) {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<std::size_t> size(2, 6);
  for (int i = 0; i < 60; ++i) {
    const Digraph g = oracle::random_graph(rng, size(rng), 0.3);
    const double reduced = strong_reduction_minsum(g).value;
    EXPECT_EQ(strong_reduction_maxsum(g), max_sum_glb(g).value);
    // The chamber scan can only see attained values, which are upper bounds.
    try {
      EXPECT_GE(scan_arrangements(g).value, reduced - 1e-9);
    } catch (const solver_error&) {
    }
  }
}

TEST(MinSum, DeterministicAcrossWorkerCounts) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 5; ++i) {
    const Digraph g = oracle::random_strong_graph(rng, 6, 0.4);
    MinSumOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const MinSumResult a = min_sum_glb(g, one);
    const MinSumResult b = min_sum_glb(g, many);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.best_arrangement, b.best_arrangement);
    EXPECT_EQ(a.best_y, b.best_y);
    EXPECT_EQ(a.audit.ties, b.audit.ties);
  }
}
