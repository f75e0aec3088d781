#ifndef LEXENT_EVAL_CROSS_VALIDATION_HPP
#define LEXENT_EVAL_CROSS_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexent/datasets/pairs.hpp"
#include "lexent/error.hpp"
#include "lexent/eval/folds.hpp"
#include "lexent/eval/metrics.hpp"
#include "lexent/eval/ranking.hpp"

namespace lexent::eval {

struct Prediction {
  /// Ranking score; higher means more likely class 1.
  double score = 0.0;
  int label = 0;
};

/// A classifier that learns from labeled pairs, then scores unseen pairs.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual void fit(std::span<const LabeledPair> train) = 0;
  virtual std::vector<Prediction> predict(std::span<const LabeledPair> test) const = 0;
};

using ScorerFactory = std::function<std::unique_ptr<Scorer>()>;

struct EvaluationResult {
  MetricsReport report;
  std::vector<ConfusionMatrix> fold_confusions;
  /// Predictions aligned with the dataset; pairs never tested keep none.
  std::vector<std::optional<Prediction>> predictions;
};

namespace detail {

inline Dataset gather(std::span<const LabeledPair> data, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(data[i]);
  return out;
}

inline void finish(EvaluationResult& r, const ConfusionMatrix& pooled, std::vector<ScoredLabel> ranked) {
  const auto leaked = r.report.leaked_terms;
  auto fa0 = std::move(r.report.fold_ap0);
  auto fa1 = std::move(r.report.fold_ap1);
  r.report = metrics(pooled);
  const RankedList list(std::move(ranked));
  r.report.ap0 = ap0(list);
  r.report.ap1 = ap1(list);
  r.report.leaked_terms = leaked;
  r.report.fold_ap0 = std::move(fa0);
  r.report.fold_ap1 = std::move(fa1);
}

}  // namespace detail

/// Trains a fresh scorer on each fold's training part and tests on the fold.
/// Confusion counts and the ranked list are pooled over folds; per-fold AP
/// values are kept alongside.
inline EvaluationResult cross_validate(std::span<const LabeledPair> data, const ScorerFactory& factory,
                                       const FoldPlan& plan) {
  EvaluationResult r;
  r.predictions.resize(data.size());
  r.report.leaked_terms = plan.leaked_terms;
  ConfusionMatrix pooled;
  std::vector<ScoredLabel> ranked;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& test_idx = plan.folds[f];
    if (test_idx.empty()) continue;
    const auto train = detail::gather(data, plan.training_indices(f));
    const auto test = detail::gather(data, test_idx);
    auto scorer = factory();
    scorer->fit(train);
    const auto pred = scorer->predict(test);
    if (pred.size() != test.size()) throw InputError("scorer returned the wrong number of predictions");
    ConfusionMatrix c;
    std::vector<ScoredLabel> fold_ranked;
    for (std::size_t i = 0; i < test.size(); ++i) {
      c.add(test[i].label, pred[i].label);
      fold_ranked.push_back({pred[i].score, test[i].label});
      r.predictions[test_idx[i]] = pred[i];
    }
    const RankedList fl(fold_ranked);
    r.report.fold_ap0.push_back(ap0(fl));
    r.report.fold_ap1.push_back(ap1(fl));
    ranked.insert(ranked.end(), fold_ranked.begin(), fold_ranked.end());
    pooled += c;
    r.fold_confusions.push_back(c);
  }
  detail::finish(r, pooled, std::move(ranked));
  return r;
}

inline EvaluationResult cross_validate(std::span<const LabeledPair> data, const ScorerFactory& factory, Setup setup,
                                       std::uint64_t seed, std::size_t k = 10) {
  return cross_validate(data, factory, make_folds(data, setup, k, seed));
}

/// Trains on one dataset and tests on another.
inline EvaluationResult evaluate_different(std::span<const LabeledPair> train, std::span<const LabeledPair> test,
                                           const ScorerFactory& factory) {
  if (train.empty() || test.empty()) throw ParameterError("the different setup needs nonempty train and test data");
  EvaluationResult r;
  auto scorer = factory();
  scorer->fit(train);
  const auto pred = scorer->predict(test);
  if (pred.size() != test.size()) throw InputError("scorer returned the wrong number of predictions");
  ConfusionMatrix c;
  std::vector<ScoredLabel> ranked;
  for (std::size_t i = 0; i < test.size(); ++i) {
    c.add(test[i].label, pred[i].label);
    ranked.push_back({pred[i].score, test[i].label});
    r.predictions.emplace_back(pred[i]);
  }
  r.fold_confusions.push_back(c);
  detail::finish(r, c, std::move(ranked));
  return r;
}

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_CROSS_VALIDATION_HPP
