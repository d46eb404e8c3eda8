#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphic_sums/generators.hpp"
#include "graphic_sums/maxsum.hpp"
#include "graphic_sums/minsum_exact.hpp"
#include "graphic_sums/minsum_numeric.hpp"
#include "support/oracles.hpp"

using namespace graphic_sums;

namespace {

Digraph example_graph() { return Digraph::from_one_based({{2}, {3, 4}, {2, 4}, {1}}); }

}  // namespace

TEST(Oracle, CycleMinSum) {
  EXPECT_NEAR(oracle_min(cycle_graph(3), MeanKind::min()).value, 3.0, 1e-4);
}

TEST(Oracle, NoSdrExtremal) {
  const OracleResult r = oracle_min(extremal_no_sdr_graph(4), MeanKind::min());
  EXPECT_NEAR(r.value, 1.0 + 2.0 * std::sqrt(2.0), 1e-3);
  EXPECT_NEAR(eval_sum(extremal_no_sdr_graph(4), MeanKind::min(), r.argmin), r.value, 1e-12);
  EXPECT_EQ(r.argmin[0], 1.0);
}

TEST(Oracle, MaxSumWithLoopApproachesOne) {
  // The infimum is approached as the rest of the graph shrinks, so the box
  // must be wide enough to hold tiny ratios.
  const Digraph g = Digraph::from_one_based({{1, 2}, {3}, {1}});
  OracleConfig cfg;
  cfg.box = std::log(1e9);
  const double v = oracle_min(g, MeanKind::max(), cfg).value;
  EXPECT_GE(v, 1.0);
  EXPECT_NEAR(v, 1.0, 1e-3);
}

TEST(Oracle, DeterministicForSeedAndWorkers) {
  OracleConfig a;
  a.threads = 1;
  a.restarts = 12;
  OracleConfig b = a;
  b.threads = 3;
  const OracleResult r1 = oracle_min(example_graph(), MeanKind::min(), a);
  const OracleResult r2 = oracle_min(example_graph(), MeanKind::min(), b);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.best_restart, r2.best_restart);
  EXPECT_EQ(std::vector<double>(r1.argmin.values().begin(), r1.argmin.values().end()),
            std::vector<double>(r2.argmin.values().begin(), r2.argmin.values().end()));
  OracleConfig c = a;
  c.seed = a.seed + 1;
  EXPECT_NEAR(oracle_min(example_graph(), MeanKind::min(), c).value, r1.value, 1e-6);
}

TEST(Oracle, RejectsBadConfig) {
  OracleConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(oracle_min(cycle_graph(3), MeanKind::min(), cfg), graph_error);
  cfg.restarts = 1;
  cfg.box = 0.0;
  EXPECT_THROW(oracle_min(cycle_graph(3), MeanKind::min(), cfg), graph_error);
}

TEST(Oracle, UpperBoundsExactMinSum) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> size(2, 5);
  OracleConfig cfg;
  cfg.restarts = 24;
  for (int i = 0; i < 12; ++i) {
    const Digraph g = oracle::random_strong_graph(rng, size(rng), 0.35);
    const double exact = min_sum_glb(g).value;
    const double o = oracle_min(g, MeanKind::min(), cfg).value;
    EXPECT_GE(o, exact - 1e-9);
    EXPECT_LE(o, exact + 1e-3);
  }
}

TEST(Grid, Examples) {
  EXPECT_NEAR(grid_oracle(cycle_graph(2), MeanKind::min(), 21), 2.0, 1e-12);
  const double grid = grid_oracle(example_graph(), MeanKind::min(), 25);
  EXPECT_NEAR(grid, oracle_min(example_graph(), MeanKind::min()).value, 1e-2);
  const Digraph k3 = Digraph::from_one_based({{2, 3}, {1, 3}, {1, 2}});
  const double coarse = grid_oracle(k3, MeanKind::max(), 5, std::log(1e3));
  const double fine = grid_oracle(k3, MeanKind::max(), 41, std::log(1e3));
  EXPECT_GE(fine, 2.0);
  EXPECT_LE(fine, coarse);
  EXPECT_THROW(grid_oracle(cycle_graph(5), MeanKind::min(), 5), graph_error);
  EXPECT_THROW(grid_oracle(cycle_graph(3), MeanKind::min(), 51), graph_error);
}
