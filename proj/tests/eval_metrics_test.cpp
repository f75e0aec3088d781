#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lexent/eval/metrics.hpp"
#include "lexent/eval/ranking.hpp"
#include "lexent/eval/stats.hpp"
#include "oracles.hpp"

namespace lexent::eval {
namespace {

RankedList from_top(std::vector<int> labels) {
  std::vector<ScoredLabel> items;
  for (std::size_t i = 0; i < labels.size(); ++i) items.push_back({static_cast<double>(labels.size() - i), labels[i]});
  return RankedList(items);
}

TEST(AveragePrecision, HandValues) {
  EXPECT_DOUBLE_EQ(*ap1(from_top({1, 1, 0})), 1.0);
  EXPECT_NEAR(*ap1(from_top({1, 0, 1})), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_FALSE(ap1(from_top({0, 0})).has_value());
  EXPECT_FALSE(ap0(from_top({1})).has_value());
}

TEST(AveragePrecision, AntiRankingMirrorsAp0) {
  // A perfect anti-ranking for class 1 is a perfect bottom-up ranking for class 0.
  const auto r = from_top({0, 0, 0, 1, 1});
  EXPECT_DOUBLE_EQ(*ap0(from_top({1, 1, 0, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(*average_precision(r, 1, Direction::from_bottom), 1.0);
  EXPECT_LT(*ap1(r), 1.0);
}

TEST(AveragePrecision, TiesKeepOriginalOrder) {
  const std::vector<double> scores{0.5, 0.5, 0.5};
  const std::vector<int> labels{0, 1, 1};
  const RankedList r(scores, labels);
  EXPECT_EQ(r.items()[0].label, 0);
  EXPECT_NEAR(*ap1(r), (1.0 / 2.0 + 2.0 / 3.0) / 2.0, 1e-15);
}

// Exhaustive over every label sequence of length <= 8, both directions.
TEST(AveragePrecision, MatchesBruteForceExhaustively) {
  for (int n = 1; n <= 8; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> labels(n);
      for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1;
      const auto r = from_top(labels);
      if (mask != 0) {
        EXPECT_NEAR(*ap1(r), testing_oracles::brute_ap(labels), 1e-12);
      }
      std::vector<int> zeros_from_bottom;
      for (int i = n - 1; i >= 0; --i) zeros_from_bottom.push_back(labels[i] == 0);
      if (mask != (1 << n) - 1) {
        EXPECT_NEAR(*ap0(r), testing_oracles::brute_ap(zeros_from_bottom), 1e-12);
      }
    }
  }
}

TEST(Metrics, HandEvaluatedConfusion) {
  const auto m = metrics({50, 10, 20, 20});
  EXPECT_NEAR(m.classes.pre0, 5.0 / 7.0, 1e-12);
  EXPECT_NEAR(m.classes.pre1, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(m.classes.rec0, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(m.classes.rec1, 0.5, 1e-12);
  EXPECT_NEAR(m.classes.f0, 10.0 / 13.0, 1e-12);
  EXPECT_NEAR(m.classes.f1, 4.0 / 7.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.classes.w0, 0.6);
  EXPECT_DOUBLE_EQ(m.classes.w1, 0.4);
  EXPECT_NEAR(m.pre, 0.6952, 1e-4);
  EXPECT_NEAR(m.rec, 0.7000, 1e-4);
  EXPECT_NEAR(m.f, 0.6901, 1e-4);
  EXPECT_DOUBLE_EQ(m.acc, 70.0);
  EXPECT_TRUE(m.classes.degenerate.empty());
}

TEST(Metrics, PerfectAndDegeneratePredictors) {
  const auto perfect = metrics({7, 0, 0, 5});
  EXPECT_DOUBLE_EQ(perfect.pre, 1.0);
  EXPECT_DOUBLE_EQ(perfect.rec, 1.0);
  EXPECT_DOUBLE_EQ(perfect.f, 1.0);
  EXPECT_DOUBLE_EQ(perfect.acc, 100.0);

  const auto all_one = metrics({0, 10, 0, 10});
  EXPECT_DOUBLE_EQ(all_one.classes.rec1, 1.0);
  EXPECT_DOUBLE_EQ(all_one.classes.pre1, 0.5);
  EXPECT_DOUBLE_EQ(all_one.acc, 50.0);
  EXPECT_EQ(all_one.classes.pre0, 0.0);
  EXPECT_NE(std::find(all_one.classes.degenerate.begin(), all_one.classes.degenerate.end(), "pre0"),
            all_one.classes.degenerate.end());
  EXPECT_THROW(metrics({0, 0, 0, 0}), ParameterError);
}

TEST(Metrics, WeightedRecallEqualsAccuracy) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t off = rng() % 20;
    const ConfusionMatrix c{1 + rng() % 50, off, off, 1 + rng() % 50};
    const auto m = metrics(c);
    EXPECT_NEAR(m.rec, m.acc / 100.0, 1e-15);
    EXPECT_LE(m.wilson_low, m.acc / 100.0);
    EXPECT_GE(m.wilson_high, m.acc / 100.0);
  }
}

TEST(Wilson, ReproducesKnownIntervals) {
  const auto a = wilson_interval(0.573, 772);
  EXPECT_NEAR(a.low, 0.538, 5e-4);
  EXPECT_NEAR(a.high, 0.607, 5e-4);
  const auto b = wilson_interval(0.702, 772);
  EXPECT_NEAR(b.low, 0.669, 5e-4);
  EXPECT_NEAR(b.high, 0.733, 5e-4);
  EXPECT_NEAR(normal_critical_value(0.95), 1.959964, 1e-6);
}

TEST(Wilson, BoundaryAndMonotoneWidth) {
  EXPECT_EQ(wilson_interval(1.0, 25).high, 1.0);
  EXPECT_EQ(wilson_interval(0.0, 25).low, 0.0);
  for (double p : {0.0, 0.1, 0.5, 0.73, 1.0}) {
    double prev_width = 2.0;
    for (std::uint64_t n = 1; n <= 2000; n = n * 3 / 2 + 1) {
      const auto ci = wilson_interval(p, n);
      EXPECT_LE(ci.low, p);
      EXPECT_GE(ci.high, p);
      EXPECT_LT(ci.high - ci.low, prev_width);
      prev_width = ci.high - ci.low;
    }
  }
  EXPECT_THROW(wilson_interval(0.5, 0), ParameterError);
}

TEST(Fisher, KnownTables) {
  EXPECT_NEAR(fisher_exact(8, 10, 1, 10), 0.005477494641581329, 1e-12);
  EXPECT_DOUBLE_EQ(fisher_exact(6, 10, 6, 10), 1.0);
  EXPECT_NEAR(fisher_exact(8, 10, 1, 10), fisher_exact(1, 10, 8, 10), 1e-15);
}

TEST(Fisher, MatchesEnumerationOnSmallTables) {
  for (unsigned na = 1; na <= 8; ++na)
    for (unsigned nb = 1; nb <= 8; ++nb)
      for (unsigned a = 0; a <= na; ++a)
        for (unsigned b = 0; b <= nb; ++b)
          EXPECT_NEAR(fisher_exact(a, na, b, nb), testing_oracles::fisher_enumerate(a, na, b, nb), 1e-10);
}

TEST(Fisher, LargerGapsAtLargerSampleSizesAreSignificant) {
  // 70% vs 57% accuracy: inconclusive at n = 20, significant at n = 772.
  EXPECT_GT(fisher_exact(14, 20, 11, 20), 0.05);
  EXPECT_LT(fisher_exact(542, 772, 442, 772), 0.05);
}

}  // namespace
}  // namespace lexent::eval
