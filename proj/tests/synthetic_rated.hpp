// Synthetic rated-pair inputs for the relation-dataset pipeline.
#ifndef LEXENT_TESTS_SYNTHETIC_RATED_HPP
#define LEXENT_TESTS_SYNTHETIC_RATED_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lexent/datasets/jmth.hpp"

namespace testing_synthetic {

inline void add_rated(std::vector<lexent::RatedPair>& out, const std::string& id, std::size_t n,
                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rating(-100.0, 100.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"x" + id + "_" + std::to_string(i), "y" + id + "_" + std::to_string(i), id, rating(rng)});
  }
}

/// 3,218 rated pairs over the 79 subcategories, 40 or 41 per subcategory.
inline std::vector<lexent::RatedPair> rated_40_41(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<lexent::RatedPair> out;
  const auto tax = lexent::RelationTaxonomy::builtin();
  for (std::size_t s = 0; s < tax.size(); ++s) add_rated(out, tax.entries()[s].id, s < 58 ? 41 : 40, rng);
  return out;
}

/// 3,218 rated pairs whose subcategory sizes reproduce the target step
/// counts: every subcategory has 40, synonymity (both bits set) has 22 more,
/// and 36 subcategories with no entailment bits have one more each.
inline std::vector<lexent::RatedPair> rated_target_shape(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<lexent::RatedPair> out;
  const auto tax = lexent::RelationTaxonomy::builtin();
  int extra_zero = 36;
  for (const auto& e : tax.entries()) {
    std::size_t n = 40;
    if (e.id == "3a") n += 22;
    if (e.a_entails_b == 0 && e.b_entails_a == 0 && extra_zero > 0) {
      ++n;
      --extra_zero;
    }
    add_rated(out, e.id, n, rng);
  }
  return out;
}

}  // namespace testing_synthetic

#endif  // LEXENT_TESTS_SYNTHETIC_RATED_HPP
