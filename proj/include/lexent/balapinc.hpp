#ifndef LEXENT_BALAPINC_HPP
#define LEXENT_BALAPINC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/eval/metrics.hpp"
#include "lexent/vsm/ppmi.hpp"

namespace lexent {

struct BalapincParams {
  /// Features kept per word; nullopt keeps all.
  std::optional<std::size_t> max_features;
  /// Classification threshold: score >= threshold means "entails".
  double threshold = 0.5;
};

struct PairScore {
  std::string a;
  std::string b;
  double score = 0.0;
};

/// Normalized importance of context `col` for the word behind `fv`:
/// 1 - rank/(|Fv|+1) for members, 0 otherwise.
inline double rel(ColId col, const FeatureSet& fv) {
  const auto r = fv.rank_of(col);
  if (!r) return 0.0;
  return 1.0 - static_cast<double>(*r) / static_cast<double>(fv.size() + 1);
}

/// Average-precision-style inclusion of u's ranked features in v's.
/// Walks u's features in rank order, tracking how many of the first r are
/// included in Fv.
inline double apinc(const FeatureSet& fu, const FeatureSet& fv) {
  if (fu.empty()) return 0.0;
  double sum = 0.0;
  std::size_t included = 0;
  for (std::size_t r = 1; r <= fu.size(); ++r) {
    const ColId col = fu.ranked()[r - 1].col;
    const double relevance = rel(col, fv);
    if (relevance == 0.0) continue;  // P(r) * 0
    ++included;
    sum += (static_cast<double>(included) / static_cast<double>(r)) * relevance;
  }
  return sum / static_cast<double>(fu.size());
}

/// Lin's weighted overlap; 0 when both sets are empty.
inline double lin(const FeatureSet& fu, const FeatureSet& fv) {
  const double denom = fu.total_weight() + fv.total_weight();
  if (denom <= 0.0) return 0.0;
  double shared = 0.0;
  for (const auto& f : fu.ranked()) {
    if (const double wv = fv.weight_of(f.col); wv > 0.0) shared += f.weight + wv;
  }
  return shared / denom;
}

/// Geometric mean of APinc and LIN.
inline double balapinc(const FeatureSet& fu, const FeatureSet& fv) { return std::sqrt(apinc(fu, fv) * lin(fu, fv)); }

inline int classify(double score, const BalapincParams& params) { return score >= params.threshold ? 1 : 0; }

inline double balapinc(const PpmiMatrix& matrix, std::string_view u, std::string_view v,
                       std::optional<std::size_t> max_features) {
  return balapinc(row_features(matrix, u, max_features), row_features(matrix, v, max_features));
}

struct ThresholdChoice {
  double threshold = 0.0;
  double f = 0.0;
};

/// Candidate thresholds: midpoints between consecutive distinct sorted
/// scores, plus one below the minimum (everything classified 1) and one
/// above the maximum (everything classified 0).
inline std::vector<double> threshold_candidates(std::span<const double> scores) {
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> out;
  if (sorted.empty()) return out;
  out.reserve(sorted.size() + 1);
  out.push_back(sorted.front() - 1.0);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double mid = sorted[i - 1] + (sorted[i] - sorted[i - 1]) / 2.0;
    // Adjacent doubles: the upper score induces the same split.
    out.push_back(mid > sorted[i - 1] ? mid : sorted[i]);
  }
  out.push_back(sorted.back() + 1.0);
  return out;
}

/// Threshold maximizing weighted F on (scores, labels); ties go to the
/// smallest threshold.
inline ThresholdChoice tune_threshold_scan(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ParameterError("score and label counts differ");
  const bool has0 = std::find(labels.begin(), labels.end(), 0) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), 1) != labels.end();
  if (!has0 || !has1) throw TrainingError("threshold tuning needs examples of both classes");

  // Sweep candidates in ascending order over the score-sorted examples,
  // updating the confusion matrix incrementally.
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  eval::ConfusionMatrix c;
  for (int y : labels) c.add(y, 1);
  std::size_t next = 0;
  ThresholdChoice best{0.0, -1.0};
  for (double t : threshold_candidates(scores)) {
    while (next < order.size() && scores[order[next]] < t) {
      if (labels[order[next]] == 0) { --c.c01; ++c.c00; }
      else { --c.c11; ++c.c10; }
      ++next;
    }
    const double f = eval::weighted_f(c);
    if (f > best.f) best = {t, f};
  }
  return best;
}

inline double tune_threshold(std::span<const PairScore> scores, std::span<const int> labels) {
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.score);
  return tune_threshold_scan(values, labels).threshold;
}

}  // namespace lexent

#endif  // LEXENT_BALAPINC_HPP
