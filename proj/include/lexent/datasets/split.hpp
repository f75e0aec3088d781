#ifndef LEXENT_DATASETS_SPLIT_HPP
#define LEXENT_DATASETS_SPLIT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lexent/datasets/pairs.hpp"
#include "lexent/error.hpp"

namespace lexent {

/// Relative sizes of Dev1, Dev2 and Test. Integer weights keep the
/// per-class arithmetic exact.
struct SplitProportions {
  std::size_t dev1 = 1;
  std::size_t dev2 = 1;
  std::size_t test = 1;
};

struct DevTestSplit {
  Dataset dev1;
  Dataset dev2;
  Dataset test;
  /// Majority-class pairs left out so every split stays class-balanced.
  std::size_t dropped_excess = 0;
};

/// Class-balanced random three-way split. Per class, Dev1 and Dev2 get
/// floor(n * w / W) pairs and Test the remainder. Within each split pairs
/// keep their input order.
inline DevTestSplit split_dev_test(std::span<const LabeledPair> data, std::uint64_t seed,
                                   SplitProportions prop = {}) {
  const std::size_t weight = prop.dev1 + prop.dev2 + prop.test;
  if (weight == 0 || prop.test == 0) throw ParameterError("split proportions need a nonzero test share");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data[i].label == 1 ? 1 : 0].push_back(i);
  std::mt19937_64 rng(seed);
  for (auto& idx : by_class) std::shuffle(idx.begin(), idx.end(), rng);

  DevTestSplit out;
  const std::size_t n = std::min(by_class[0].size(), by_class[1].size());
  out.dropped_excess = std::max(by_class[0].size(), by_class[1].size()) - n;

  std::vector<int> assign(data.size(), -1);
  for (auto& idx : by_class) {
    const std::size_t d1 = n * prop.dev1 / weight;
    const std::size_t d2 = n * prop.dev2 / weight;
    for (std::size_t j = 0; j < n; ++j) assign[idx[j]] = j < d1 ? 0 : (j < d1 + d2 ? 1 : 2);
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (assign[i] == 0) out.dev1.push_back(data[i]);
    else if (assign[i] == 1) out.dev2.push_back(data[i]);
    else if (assign[i] == 2) out.test.push_back(data[i]);
  }
  return out;
}

}  // namespace lexent

#endif  // LEXENT_DATASETS_SPLIT_HPP
