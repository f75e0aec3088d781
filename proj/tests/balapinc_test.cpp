#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lexent/balapinc.hpp"
#include "oracles.hpp"

namespace lexent {
namespace {

FeatureSet fs(std::vector<Feature> ranked) { return FeatureSet("w", std::move(ranked)); }

TEST(Rel, DefinitionBranches) {
  const auto two = fs({{1, 0.9}, {2, 0.4}});
  EXPECT_DOUBLE_EQ(rel(1, two), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(rel(2, two), 1.0 / 3.0);  // last of n -> 1/(n+1)
  EXPECT_EQ(rel(7, two), 0.0);
}

TEST(Apinc, IdentityIsOneHalf) {
  for (std::size_t n = 1; n <= 50; ++n) {
    std::vector<Feature> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back({static_cast<ColId>(i * 3), 10.0 - static_cast<double>(i) * 0.1});
    EXPECT_NEAR(apinc(fs(f), fs(f)), 0.5, 1e-12) << n;
  }
}

TEST(Apinc, DisjointAndEmpty) {
  EXPECT_EQ(apinc(fs({{1, 1.0}}), fs({{2, 1.0}})), 0.0);
  EXPECT_EQ(apinc(fs({}), fs({{2, 1.0}})), 0.0);
  EXPECT_EQ(apinc(fs({{1, 1.0}}), fs({})), 0.0);
}

TEST(Apinc, HandEvaluatedSubsetCase) {
  // Fu = [f1, f2], Fv = [f2]: r=1 contributes 0, r=2 contributes 1/2 * 1/2.
  EXPECT_DOUBLE_EQ(apinc(fs({{1, 2.0}, {2, 1.0}}), fs({{2, 1.0}})), 0.125);
}

TEST(Lin, Cases) {
  const auto a = fs({{1, 3.0}, {4, 0.5}});
  EXPECT_DOUBLE_EQ(lin(a, a), 1.0);
  EXPECT_EQ(lin(fs({{1, 1.0}}), fs({{2, 1.0}})), 0.0);
  EXPECT_DOUBLE_EQ(lin(fs({{1, 2.0}}), fs({{1, 1.0}, {2, 1.0}})), 0.75);
  EXPECT_EQ(lin(fs({}), fs({})), 0.0);
}

TEST(Balapinc, ClosedFormsAndAsymmetry) {
  const auto a = fs({{1, 3.0}, {4, 0.5}, {9, 0.1}});
  EXPECT_NEAR(balapinc(a, a), std::sqrt(0.5), 1e-12);
  EXPECT_EQ(balapinc(fs({{1, 1.0}}), fs({{2, 1.0}})), 0.0);
  const auto fu = fs({{1, 2.0}, {2, 1.0}});
  const auto fv = fs({{2, 1.0}});
  EXPECT_DOUBLE_EQ(balapinc(fu, fv), 0.25);
  // Fv is a subset of Fu: the two directions must differ.
  EXPECT_NE(balapinc(fv, fu), balapinc(fu, fv));
  EXPECT_GT(balapinc(fv, fu), balapinc(fu, fv));
}

TEST(Balapinc, RandomSetsMatchOracleAndStayInRange) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto fu = testing_oracles::random_feature_set(rng, 12, 8);
    const auto fv = testing_oracles::random_feature_set(rng, 12, 8);
    const double ap = apinc(fu, fv);
    EXPECT_NEAR(ap, testing_oracles::naive_apinc(fu, fv), 1e-12);
    const double l = lin(fu, fv);
    const double b = balapinc(fu, fv);
    EXPECT_GE(ap, 0.0);
    EXPECT_LT(ap, 1.0);
    EXPECT_GE(l, 0.0);
    EXPECT_LE(l, 1.0);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
  }
}

TEST(Balapinc, TruncationNeverGrowsSets) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = testing_oracles::random_feature_set(rng, 30, 20);
    for (std::size_t cap = 1; cap <= 25; ++cap) {
      const auto t = f.truncated(cap);
      EXPECT_LE(t.size(), f.size());
      EXPECT_LE(t.size(), cap);
    }
  }
}

TEST(Classify, BoundaryIsInclusive) {
  EXPECT_EQ(classify(0.3, {std::nullopt, 0.5}), 0);
  EXPECT_EQ(classify(0.5, {std::nullopt, 0.5}), 1);
  EXPECT_EQ(classify(0.7071, {std::nullopt, 0.7}), 1);
}

std::vector<PairScore> scored(std::initializer_list<double> s) {
  std::vector<PairScore> out;
  for (double v : s) out.push_back({"a", "b", v});
  return out;
}

TEST(TuneThreshold, SeparableScoresGiveMidpoint) {
  const std::vector<int> labels{1, 1, 0, 0};
  const auto s = scored({0.9, 0.8, 0.2, 0.1});
  const double t = tune_threshold(s, labels);
  EXPECT_DOUBLE_EQ(t, 0.5);
  const std::vector<double> raw{0.9, 0.8, 0.2, 0.1};
  EXPECT_DOUBLE_EQ(tune_threshold_scan(raw, labels).f, 1.0);
}

TEST(TuneThreshold, AgreesWithExhaustiveScan) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coarse(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 12;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = coarse(rng) / 6.0;  // coarse grid forces ties
      labels[i] = static_cast<int>(rng() % 2);
    }
    labels[0] = 0;
    labels[1] = 1;
    const auto got = tune_threshold_scan(scores, labels);
    const auto want = testing_oracles::scan_threshold(scores, labels);
    EXPECT_DOUBLE_EQ(got.f, want.second);
    EXPECT_DOUBLE_EQ(got.threshold, want.first);
  }
}

TEST(TuneThreshold, EqualScoresPickDegeneratePredictor) {
  const std::vector<double> scores{0.4, 0.4, 0.4};
  const std::vector<int> labels{1, 1, 0};
  const auto got = tune_threshold_scan(scores, labels);
  EXPECT_LT(got.threshold, 0.4);  // all predicted 1 beats all predicted 0 here
  const std::vector<int> mostly0{0, 0, 1};
  EXPECT_GT(tune_threshold_scan(scores, mostly0).threshold, 0.4);
}

TEST(TuneThreshold, InverseOrderingFallsBackToDegenerate) {
  const std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
  const std::vector<int> labels{0, 0, 1, 1};
  const auto got = tune_threshold_scan(scores, labels);
  EXPECT_LT(got.threshold, 0.1);
  EXPECT_NEAR(got.f, 1.0 / 3.0, 1e-15);
}

TEST(TuneThreshold, SingleClassRejected) {
  EXPECT_THROW(tune_threshold(scored({0.1, 0.2}), std::vector<int>{1, 1}), TrainingError);
}

}  // namespace
}  // namespace lexent
