#ifndef LEXENT_EXPERIMENT_SPACES_HPP
#define LEXENT_EXPERIMENT_SPACES_HPP

#include <algorithm>
#include <cstdint>

#include "lexent/error.hpp"
#include "lexent/vsm/embedding.hpp"
#include "lexent/vsm/ppmi.hpp"
#include "lexent/vsm/svd.hpp"

namespace lexent::experiment {

/// PPMI matrix plus its leading singular factors; embeddings for any
/// smaller k are read off the same factors.
struct Space {
  PpmiMatrix ppmi;
  SvdFactors factors;
  SpaceKind kind = SpaceKind::general;
};

inline Space build_space(PpmiMatrix weighted, Eigen::Index k_max, std::uint64_t seed,
                         SpaceKind kind = SpaceKind::general) {
  Space s{std::move(weighted), {}, kind};
  const auto rank_cap = static_cast<Eigen::Index>(std::min(s.ppmi.rows(), s.ppmi.cols()));
  if (k_max > rank_cap) throw ParameterError("k = " + std::to_string(k_max) + " exceeds the matrix size " + std::to_string(rank_cap));
  s.factors = truncated_svd(s.ppmi, k_max, seed);
  return s;
}

inline Space build_space(const CoMatrix& counts, Eigen::Index k_max, std::uint64_t seed,
                         SpaceKind kind = SpaceKind::general) {
  return build_space(ppmi(counts), k_max, seed, kind);
}

inline Embedding embed(const Space& s, Eigen::Index k, double p) {
  return project(s.factors.leading(k), p, s.ppmi.row_terms(), s.kind);
}

}  // namespace lexent::experiment

#endif  // LEXENT_EXPERIMENT_SPACES_HPP
