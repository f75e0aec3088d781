#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lexent/features.hpp"

namespace lexent {
namespace {

Embedding emb(SpaceKind kind, std::vector<std::string> terms, Eigen::MatrixXd rows) {
  return Embedding(kind, Vocabulary(std::move(terms)), std::move(rows), 1.0);
}

Embedding random_emb(SpaceKind kind, const std::vector<std::string>& terms, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(terms.size()), k);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = g(rng);
  return emb(kind, terms, m);
}

std::vector<std::string> words(int n) {
  std::vector<std::string> w;
  for (int i = 0; i < n; ++i) w.push_back("w" + std::to_string(i));
  return w;
}

TEST(ConVecs, UnitNormalizeThenConcatenate) {
  Eigen::MatrixXd m(2, 2);
  m << 3, 4, 0, 0;
  const auto e = emb(SpaceKind::general, {"a", "z"}, m);
  const auto v = convecs_features(e, "a", "a");
  ASSERT_EQ(v.values.size(), 4);
  EXPECT_DOUBLE_EQ(v.values(0), 0.6);
  EXPECT_DOUBLE_EQ(v.values(1), 0.8);
  EXPECT_DOUBLE_EQ(v.values(2), 0.6);
  EXPECT_DOUBLE_EQ(v.values(3), 0.8);
  const auto z = convecs_features(e, "z", "a");
  EXPECT_EQ(z.values(0), 0.0);
  EXPECT_EQ(z.values(1), 0.0);
  EXPECT_THROW(convecs_features(e, "a", "nope"), LookupError);
}

TEST(ConVecs, LengthAndHalfNorms) {
  const auto terms = words(30);
  const auto e = random_emb(SpaceKind::general, terms, 100, 1);
  for (int i = 0; i < 29; ++i) {
    const auto v = convecs_features(e, terms[i], terms[i + 1]);
    ASSERT_EQ(v.values.size(), 200);
    EXPECT_NEAR(v.values.head(100).norm(), 1.0, 1e-12);
    EXPECT_NEAR(v.values.tail(100).norm(), 1.0, 1e-12);
  }
}

TEST(SimDiffs, OneDimensionalToy) {
  Eigen::MatrixXd d(3, 1), f(3, 1);
  d << 1, 1, 1;
  f << 1, -1, 1;
  const auto dom = emb(SpaceKind::domain, {"a", "b", "r"}, d);
  const auto fun = emb(SpaceKind::function, {"a", "b", "r"}, f);
  const auto v = simdiffs_features(dom, fun, ReferenceSet({"r"}), "a", "b");
  ASSERT_EQ(v.values.size(), 4);
  EXPECT_DOUBLE_EQ(v.values(0), 0.0);
  EXPECT_DOUBLE_EQ(v.values(1), 2.0);
  EXPECT_DOUBLE_EQ(v.values(2), 2.0);
  EXPECT_DOUBLE_EQ(v.values(3), 0.0);
}

TEST(SimDiffs, SameWordAndErrors) {
  const auto terms = words(20);
  const auto dom = random_emb(SpaceKind::domain, terms, 6, 2);
  const auto fun = random_emb(SpaceKind::function, terms, 5, 3);
  const ReferenceSet ref({"w1", "w4", "w9", "w13"});
  const auto v = simdiffs_features(dom, fun, ref, "w2", "w2");
  for (int r = 0; r < 4; ++r) {
    EXPECT_EQ(v.values(r), 0.0);
    EXPECT_EQ(v.values(4 + r), 0.0);
    EXPECT_NEAR(v.values(8 + r), -v.values(12 + r), 1e-15);
    EXPECT_NEAR(v.values(8 + r), cosine(dom, "w2", ref.words()[r]) - cosine(fun, "w2", ref.words()[r]), 1e-12);
  }
  EXPECT_THROW(simdiffs_features(dom, fun, ReferenceSet{}, "w1", "w2"), InputError);
  EXPECT_THROW(simdiffs_features(dom, fun, ref, "w1", "zz"), InputError);
}

TEST(SimDiffs, AntisymmetryRangeAndLength) {
  const auto terms = words(40);
  const auto dom = random_emb(SpaceKind::domain, terms, 8, 4);
  const auto fun = random_emb(SpaceKind::function, terms, 8, 5);
  const ReferenceSet ref(std::vector<std::string>(terms.begin(), terms.begin() + 15));
  const SimDiffsFeaturizer feat(dom, fun, ref);
  std::mt19937 rng(6);
  for (int t = 0; t < 100; ++t) {
    const auto& a = terms[rng() % 40];
    const auto& b = terms[rng() % 40];
    const auto ab = feat(a, b);
    const auto ba = feat(b, a);
    ASSERT_EQ(ab.values.size(), 60);
    EXPECT_EQ(ab.values.size(), feat.dim());
    for (int r = 0; r < 15; ++r) {
      EXPECT_NEAR(ab.values(r), -ba.values(r), 1e-15);
      EXPECT_NEAR(ab.values(15 + r), -ba.values(15 + r), 1e-15);
      EXPECT_NEAR(ab.values(30 + r), -ba.values(45 + r), 1e-15);
    }
    EXPECT_LE(ab.values.cwiseAbs().maxCoeff(), 2.0);
    EXPECT_TRUE(ab.values.allFinite());
    // Direct cosines agree with the cached featurizer.
    EXPECT_NEAR(ab.values(0), cosine(dom, a, ref.words()[0]) - cosine(dom, b, ref.words()[0]), 1e-12);
  }
}

TEST(SimDiffs, FullReferenceSizeSetsVectorLength) {
  const auto terms = words(2086);
  const auto dom = random_emb(SpaceKind::domain, terms, 3, 7);
  const auto fun = random_emb(SpaceKind::function, terms, 3, 8);
  EXPECT_EQ(simdiffs_features(dom, fun, ReferenceSet(terms), "w0", "w1").values.size(), 8344);
}

TEST(ReferenceSet, DuplicatesAndRestriction) {
  EXPECT_THROW(ReferenceSet({"a", "b", "a"}), InputError);
  const auto dom = random_emb(SpaceKind::domain, {"a", "b", "c"}, 2, 1);
  const auto fun = random_emb(SpaceKind::function, {"a", "c", "d"}, 2, 1);
  std::vector<std::string> warnings;
  const auto old = set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
  const auto r = ReferenceSet({"d", "c", "b", "a"}).restricted_to({&dom, &fun});
  set_warning_sink(old);
  EXPECT_EQ(r.words(), (std::vector<std::string>{"c", "a"}));
  ASSERT_EQ(warnings.size(), 1u);
}

TEST(ReferenceSet, ShippedBasicEnglishList) {
  const auto r = load_reference_set(std::filesystem::path(LEXENT_DATA_DIR) / "basic_english.txt");
  EXPECT_GT(r.size(), 800u);
}

TEST(Batch, SkipsUnknownAndKeepsOrder) {
  const auto terms = words(10);
  const auto e = random_emb(SpaceKind::general, terms, 4, 9);
  const Dataset pairs{{"w1", "w2", 1, std::nullopt}, {"w3", "xx", 0, std::nullopt}, {"w5", "w0", 0, std::nullopt}};
  const auto b = batch_features(pairs, FeatureScheme::convecs, {&e, nullptr, nullptr, nullptr});
  ASSERT_EQ(b.vectors.size(), 2u);
  EXPECT_EQ(b.vectors[1].a, "w5");
  EXPECT_EQ(b.labels, (std::vector<int>{1, 0}));
  EXPECT_EQ(b.indices, (std::vector<std::size_t>{0, 2}));
  ASSERT_EQ(b.skipped.size(), 1u);
  EXPECT_EQ(b.skipped[0].index, 1u);
  const Dataset known{pairs[0], pairs[2]};
  EXPECT_TRUE(batch_features(known, FeatureScheme::convecs, {&e, nullptr, nullptr, nullptr}).skipped.empty());
}

TEST(Batch, SimDiffsSkipsTermMissingFromOneSpace) {
  const auto dom = random_emb(SpaceKind::domain, {"a", "b", "c", "r"}, 3, 1);
  const auto fun = random_emb(SpaceKind::function, {"a", "b", "r"}, 3, 2);
  const ReferenceSet ref({"r"});
  const Dataset pairs{{"a", "b", 1, std::nullopt}, {"a", "c", 0, std::nullopt}};
  const auto b = batch_features(pairs, FeatureScheme::simdiffs, {nullptr, &dom, &fun, &ref});
  EXPECT_EQ(b.vectors.size(), 1u);
  ASSERT_EQ(b.skipped.size(), 1u);
  EXPECT_EQ(b.skipped[0].b, "c");
}

TEST(Batch, PermutingPairsNeverChangesVectors) {
  const auto terms = words(25);
  const auto dom = random_emb(SpaceKind::domain, terms, 5, 11);
  const auto fun = random_emb(SpaceKind::function, terms, 5, 12);
  const ReferenceSet ref({"w3", "w7", "w11"});
  Dataset pairs;
  for (int i = 0; i < 24; ++i) pairs.push_back({terms[i], terms[(i * 7 + 3) % 25], i % 2, std::nullopt});
  const auto base = batch_features(pairs, FeatureScheme::simdiffs, {nullptr, &dom, &fun, &ref});
  Dataset shuffled = pairs;
  std::mt19937 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto other = batch_features(shuffled, FeatureScheme::simdiffs, {nullptr, &dom, &fun, &ref});
  for (std::size_t i = 0; i < other.vectors.size(); ++i) {
    const auto& v = other.vectors[i];
    for (const auto& w : base.vectors) {
      if (w.a == v.a && w.b == v.b) {
        EXPECT_EQ(w.values, v.values);
      }
    }
  }
}

TEST(FeatureFile, RoundTrip) {
  const auto terms = words(6);
  const auto e = random_emb(SpaceKind::general, terms, 3, 13);
  const Dataset pairs{{"w1", "w2", 1, std::nullopt}, {"w3", "w4", 0, std::nullopt}};
  const auto b = batch_features(pairs, FeatureScheme::convecs, {&e, nullptr, nullptr, nullptr});
  const auto path = std::filesystem::temp_directory_path() / "lexent_features_test.tsv";
  save_features(b, path);
  const auto back = load_features(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.vectors.size(), 2u);
  EXPECT_EQ(back.labels, b.labels);
  EXPECT_EQ(back.vectors[1].values, b.vectors[1].values);
  EXPECT_EQ(back.scheme, FeatureScheme::convecs);
  std::istringstream bad("scheme=convecs dim=2\na\tb\t1\t0.5\n");
  EXPECT_THROW(parse_features(bad), ParseError);
}

}  // namespace
}  // namespace lexent
