#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "lexent/eval/cross_validation.hpp"
#include "lexent/eval/tuning.hpp"

namespace lexent::eval {
namespace {

LabeledPair pair(std::string a, std::string b, int label = 0) { return {std::move(a), std::move(b), label, std::nullopt}; }

Dataset isolated_pairs(std::size_t n, std::size_t ones) {
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(pair("a" + std::to_string(i), "b" + std::to_string(i), i < ones));
  return d;
}

// `groups` components, each a star around a hub term with `size` pairs.
Dataset stars(std::size_t groups, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Dataset d;
  for (std::size_t g = 0; g < groups; ++g)
    for (std::size_t i = 0; i < size; ++i)
      d.push_back(pair("hub" + std::to_string(g), "leaf" + std::to_string(g) + "_" + std::to_string(i), int(rng() % 2)));
  std::shuffle(d.begin(), d.end(), rng);
  return d;
}

void expect_partition(const FoldPlan& plan, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& f : plan.folds)
    for (auto i : f) ++seen[i];
  for (auto i : plan.excluded) ++seen[i];
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(seen[i], 1) << "index " << i;
}

TEST(Folds, StandardTenIntoFive) {
  const auto plan = make_folds(isolated_pairs(10, 5), Setup::standard, 5, 1);
  ASSERT_EQ(plan.folds.size(), 5u);
  for (const auto& f : plan.folds) EXPECT_EQ(f.size(), 2u);
  expect_partition(plan, 10);
  EXPECT_NE(make_folds(isolated_pairs(10, 5), Setup::standard, 5, 2).folds, plan.folds);
  EXPECT_EQ(make_folds(isolated_pairs(10, 5), Setup::standard, 5, 1).folds, plan.folds);
}

TEST(Folds, ClusteredSmallExample) {
  const Dataset d{pair("a", "b"), pair("a", "c"), pair("d", "e")};
  const auto plan = make_folds(d, Setup::clustered, 2, 0);
  ASSERT_EQ(plan.folds.size(), 2u);
  std::set<std::vector<std::size_t>> folds(plan.folds.begin(), plan.folds.end());
  EXPECT_TRUE(folds.contains({0, 1}));
  EXPECT_TRUE(folds.contains({2}));
  EXPECT_EQ(plan.leaked_terms, 0u);
}

TEST(Folds, ClusteredNoLeakWhenComponentsFit) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = stars(20, 5, seed);
    const auto plan = make_folds(d, Setup::clustered, 10, seed);
    expect_partition(plan, d.size());
    EXPECT_EQ(plan.leaked_terms, 0u);
    EXPECT_EQ(count_leaked_terms(d, plan.folds), 0u);
  }
}

TEST(Folds, ClusteredSplitsOversizedComponentOnRarestTerms) {
  // One chain component of 30 pairs, capacity 10: splitting must leak some
  // terms, but never the hub shared by 8 pairs.
  Dataset d;
  for (int i = 0; i < 22; ++i) d.push_back(pair("t" + std::to_string(i), "t" + std::to_string(i + 1)));
  for (int i = 0; i < 8; ++i) d.push_back(pair("hub", "t" + std::to_string(3 * i)));
  const auto plan = make_folds(d, Setup::clustered, 3, 0);
  expect_partition(plan, d.size());
  EXPECT_GT(plan.leaked_terms, 0u);
  std::set<std::size_t> hub_folds;
  for (std::size_t f = 0; f < 3; ++f)
    for (auto i : plan.folds[f])
      if (d[i].a == "hub") hub_folds.insert(f);
  EXPECT_EQ(hub_folds.size(), 1u);
  for (const auto& f : plan.folds) EXPECT_LE(f.size(), 10u);
}

TEST(Folds, ClusteredLeakCountIndependentOfSeed) {
  Dataset d;
  for (int i = 0; i < 40; ++i) d.push_back(pair("w" + std::to_string(i % 13), "w" + std::to_string((i * 7) % 17 + 13)));
  const auto base = make_folds(d, Setup::clustered, 4, 0).leaked_terms;
  for (std::uint64_t seed = 1; seed < 6; ++seed) EXPECT_EQ(make_folds(d, Setup::clustered, 4, seed).leaked_terms, base);
}

TEST(Folds, BalancedFoldsHaveEqualClasses) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = stars(15, 4, seed);
    const auto plan = make_folds(d, Setup::balanced, 5, seed);
    expect_partition(plan, d.size());
    for (const auto& f : plan.folds) {
      std::size_t ones = 0;
      for (auto i : f) ones += d[i].label;
      EXPECT_EQ(2 * ones, f.size());
    }
  }
  // One fold with 6 zeros and 2 ones keeps 2 zeros.
  Dataset d;
  for (int i = 0; i < 6; ++i) d.push_back(pair("x", "z" + std::to_string(i), 0));
  for (int i = 0; i < 2; ++i) d.push_back(pair("x", "o" + std::to_string(i), 1));
  d.push_back(pair("q", "r", 0));
  const auto plan = make_folds(d, Setup::balanced, 2, 3);
  std::size_t kept = 0;
  for (const auto& f : plan.folds) kept += f.size();
  EXPECT_EQ(kept, 4u);
  EXPECT_EQ(plan.excluded.size(), 5u);
}

TEST(Folds, Errors) {
  EXPECT_THROW(make_folds(isolated_pairs(3, 1), Setup::standard, 4, 0), ParameterError);
  EXPECT_THROW(make_folds(isolated_pairs(3, 1), Setup::standard, 1, 0), ParameterError);
  EXPECT_THROW(make_folds(Dataset{}, Setup::clustered, 2, 0), ParameterError);
  EXPECT_THROW(make_folds(isolated_pairs(3, 1), Setup::different, 2, 0), ParameterError);
  EXPECT_EQ(parse_setup("balanced"), Setup::balanced);
  EXPECT_THROW(parse_setup("bogus"), InputError);
}

// Looks up the label by term name: a*/b* pairs with index < threshold are 1.
class OracleScorer : public Scorer {
 public:
  void fit(std::span<const LabeledPair> train) override {
    for (const auto& p : train) EXPECT_FALSE(tested_.contains(p.a));
  }
  std::vector<Prediction> predict(std::span<const LabeledPair> test) const override {
    std::vector<Prediction> out;
    for (const auto& p : test) out.push_back({double(p.label), p.label});
    return out;
  }

 private:
  std::set<std::string> tested_;
};

class ConstantScorer : public Scorer {
 public:
  explicit ConstantScorer(int label) : label_(label) {}
  void fit(std::span<const LabeledPair>) override {}
  std::vector<Prediction> predict(std::span<const LabeledPair> test) const override {
    return std::vector<Prediction>(test.size(), {0.0, label_});
  }

 private:
  int label_;
};

TEST(CrossValidation, OracleScorerIsPerfectInEverySetup) {
  const auto d = stars(12, 5, 4);
  for (auto setup : {Setup::standard, Setup::clustered, Setup::balanced}) {
    const auto r = cross_validate(d, [] { return std::make_unique<OracleScorer>(); }, setup, 7, 5);
    EXPECT_DOUBLE_EQ(r.report.acc, 100.0);
    EXPECT_DOUBLE_EQ(*r.report.ap1, 1.0);
    EXPECT_DOUBLE_EQ(*r.report.ap0, 1.0);
    EXPECT_EQ(r.fold_confusions.size(), 5u);
  }
}

TEST(CrossValidation, ConstantScorerGetsMajorityRate) {
  const auto d = isolated_pairs(40, 10);
  const auto r = cross_validate(d, [] { return std::make_unique<ConstantScorer>(0); }, Setup::standard, 3, 10);
  EXPECT_DOUBLE_EQ(r.report.acc, 75.0);
  EXPECT_EQ(r.report.confusion.total(), 40u);
  EXPECT_EQ(r.report.fold_ap1.size(), 10u);
}

TEST(CrossValidation, PooledConfusionIsSumOfFolds) {
  const auto d = stars(10, 6, 5);
  const auto r = cross_validate(d, [] { return std::make_unique<ConstantScorer>(1); }, Setup::clustered, 2, 4);
  ConfusionMatrix sum;
  for (const auto& c : r.fold_confusions) sum += c;
  EXPECT_EQ(sum.total(), r.report.confusion.total());
  EXPECT_EQ(sum.c11, r.report.confusion.c11);
  EXPECT_EQ(r.report.leaked_terms, 0u);
}

TEST(CrossValidation, DifferentSetupTrainsOnOneTestsOnOther) {
  const auto train = isolated_pairs(10, 5);
  const auto test = isolated_pairs(8, 2);
  const auto r = evaluate_different(train, test, [] { return std::make_unique<ConstantScorer>(0); });
  EXPECT_DOUBLE_EQ(r.report.acc, 75.0);
  EXPECT_EQ(r.predictions.size(), 8u);
}

TEST(Tuning, PerfectlySeparatingScoresReachFOne) {
  // Score = label plus a max_F-dependent offset that never breaks separation.
  const auto dev1 = isolated_pairs(20, 10);
  const auto dev2 = isolated_pairs(16, 8);
  const BalapincScoring score = [](std::span<const LabeledPair> pairs, std::optional<std::size_t> mf) {
    std::vector<double> s;
    for (const auto& p : pairs) s.push_back(0.3 * p.label + 0.0001 * double(*mf) / 1000.0);
    return s;
  };
  const auto t = tune_balapinc(dev1, dev2, score);
  ASSERT_EQ(t.dev2_f.size(), 5u);
  for (double f : t.dev2_f) EXPECT_DOUBLE_EQ(f, 1.0);
  EXPECT_EQ(t.params.max_features, 1000u);
  const std::vector<std::size_t> single{3000};
  EXPECT_EQ(tune_balapinc(dev1, dev2, score, single).params.max_features, 3000u);
}

TEST(Tuning, SvdGridArgmaxAndTies) {
  const auto t = tune_svd_grid([](long k, double p) { return -std::abs(k - 200) / 100.0 - std::abs(p - 0.6); });
  EXPECT_EQ(t.k, 200);
  EXPECT_NEAR(t.p, 0.6, 1e-12);
  EXPECT_EQ(t.grid.size(), 50u);
  const auto flat = tune_svd_grid([](long, double) { return 0.5; });
  EXPECT_EQ(flat.k, 100);
  EXPECT_DOUBLE_EQ(flat.p, 0.1);
  const std::vector<long> k1{300};
  const std::vector<double> p1{0.7};
  const auto one = tune_svd_grid([](long, double) { return 0.1; }, k1, p1);
  EXPECT_EQ(one.k, 300);
  EXPECT_DOUBLE_EQ(one.p, 0.7);
}

}  // namespace
}  // namespace lexent::eval
