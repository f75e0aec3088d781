#ifndef LEXENT_VSM_PPMI_HPP
#define LEXENT_VSM_PPMI_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/vsm/sparse_matrix.hpp"

namespace lexent {

/// Positive pointwise mutual information with natural logarithm:
/// x_ij = max(0, ln(p_ij / (p_i* p_*j))). Zero counts stay absent.
inline PpmiMatrix ppmi(const CoMatrix& counts) {
  std::vector<double> row_sum(counts.rows(), 0.0);
  std::vector<double> col_sum(counts.cols(), 0.0);
  double total = 0.0;
  counts.for_each([&](RowId r, ColId c, std::uint64_t f) {
    const auto v = static_cast<double>(f);
    row_sum[r] += v;
    col_sum[c] += v;
    total += v;
  });
  if (total <= 0.0) throw InputError("cannot weight an all-zero count matrix");

  std::vector<Triplet<double>> triplets;
  triplets.reserve(counts.nnz());
  counts.for_each([&](RowId r, ColId c, std::uint64_t f) {
    // p_ij / (p_i* p_*j) == f_ij * N / (f_i* f_*j)
    const double ratio = (static_cast<double>(f) * total) / (row_sum[r] * col_sum[c]);
    const double pmi = std::log(ratio);
    if (pmi > 0.0) triplets.push_back({r, c, pmi});
  });
  return PpmiMatrix(counts.row_terms(), counts.col_keys(), std::move(triplets));
}

struct Feature {
  ColId col;
  double weight;
};

/// A word's nonzero PPMI contexts ranked by descending weight. Rank is the
/// 1-based position in `ranked()`.
class FeatureSet {
 public:
  FeatureSet() = default;

  /// `ranked` must already be in rank order with strictly positive,
  /// nonincreasing weights and distinct columns.
  FeatureSet(std::string word, std::vector<Feature> ranked) : word_(std::move(word)), ranked_(std::move(ranked)) {
    for (std::size_t i = 0; i < ranked_.size(); ++i) {
      if (!(ranked_[i].weight > 0.0)) throw InputError("feature weights must be strictly positive");
      if (i > 0 && ranked_[i].weight > ranked_[i - 1].weight) {
        throw InputError("features must be sorted by nonincreasing weight");
      }
    }
    by_col_.reserve(ranked_.size());
    for (std::size_t i = 0; i < ranked_.size(); ++i) by_col_.push_back({ranked_[i].col, i + 1});
    std::sort(by_col_.begin(), by_col_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < by_col_.size(); ++i) {
      if (by_col_[i].first == by_col_[i - 1].first) throw InputError("duplicate feature column");
    }
  }

  /// Sorts by descending weight; equal weights by ascending column id.
  static FeatureSet from_unsorted(std::string word, std::vector<Feature> features) {
    std::sort(features.begin(), features.end(), [](const Feature& a, const Feature& b) {
      return a.weight != b.weight ? a.weight > b.weight : a.col < b.col;
    });
    return FeatureSet(std::move(word), std::move(features));
  }

  const std::string& word() const noexcept { return word_; }
  const std::vector<Feature>& ranked() const noexcept { return ranked_; }
  std::size_t size() const noexcept { return ranked_.size(); }
  bool empty() const noexcept { return ranked_.empty(); }

  /// 1-based rank, or nullopt when the context is not a feature.
  std::optional<std::size_t> rank_of(ColId col) const {
    auto it = std::lower_bound(by_col_.begin(), by_col_.end(), col,
                               [](const auto& e, ColId c) { return e.first < c; });
    if (it == by_col_.end() || it->first != col) return std::nullopt;
    return it->second;
  }

  bool contains(ColId col) const { return rank_of(col).has_value(); }

  double weight_of(ColId col) const {
    const auto r = rank_of(col);
    return r ? ranked_[*r - 1].weight : 0.0;
  }

  double total_weight() const {
    double s = 0.0;
    for (const auto& f : ranked_) s += f.weight;
    return s;
  }

  /// Keeps the `max_features` highest-ranked features.
  FeatureSet truncated(std::size_t max_features) const {
    if (max_features >= ranked_.size()) return *this;
    return FeatureSet(word_, std::vector<Feature>(ranked_.begin(), ranked_.begin() + max_features));
  }

 private:
  std::string word_;
  std::vector<Feature> ranked_;
  std::vector<std::pair<ColId, std::size_t>> by_col_;
};

/// Ranked features of `word`'s row; equal weights are ordered by ascending
/// context key, so rankings are stable regardless of column numbering.
inline FeatureSet row_features(const PpmiMatrix& matrix, std::string_view word,
                               std::optional<std::size_t> max_features = std::nullopt) {
  if (max_features && *max_features == 0) throw ParameterError("max_F must be positive");
  const RowId r = matrix.row_terms().at(word);
  std::vector<Feature> feats;
  for (const auto& e : matrix.row(r)) feats.push_back({e.col, e.value});
  const auto& keys = matrix.col_keys();
  std::sort(feats.begin(), feats.end(), [&](const Feature& a, const Feature& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return keys[a.col] < keys[b.col];
  });
  if (max_features && feats.size() > *max_features) feats.resize(*max_features);
  return FeatureSet(std::string(word), std::move(feats));
}

}  // namespace lexent

#endif  // LEXENT_VSM_PPMI_HPP
