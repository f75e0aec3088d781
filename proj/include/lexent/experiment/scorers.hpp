#ifndef LEXENT_EXPERIMENT_SCORERS_HPP
#define LEXENT_EXPERIMENT_SCORERS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexent/balapinc.hpp"
#include "lexent/datasets/pairs.hpp"
#include "lexent/error.hpp"
#include "lexent/eval/cross_validation.hpp"
#include "lexent/features.hpp"
#include "lexent/svm/model.hpp"
#include "lexent/util/log.hpp"

namespace lexent::experiment {

/// balAPinc score thresholded at T; T is tuned on the training pairs unless fixed.
class BalapincScorer : public eval::Scorer {
 public:
  BalapincScorer(const PpmiMatrix& matrix, std::optional<std::size_t> max_features,
                 std::optional<double> fixed_threshold = std::nullopt)
      : matrix_(&matrix), params_{max_features, fixed_threshold.value_or(0.5)}, fixed_(fixed_threshold.has_value()) {}

  void fit(std::span<const LabeledPair> train) override {
    if (fixed_) return;
    params_.threshold = tune_threshold_scan(scores(train), labels_of(train)).threshold;
  }

  std::vector<eval::Prediction> predict(std::span<const LabeledPair> test) const override {
    std::vector<eval::Prediction> out;
    for (double s : scores(test)) out.push_back({s, classify(s, params_)});
    return out;
  }

  std::vector<double> scores(std::span<const LabeledPair> pairs) const {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(balapinc(features(p.a), features(p.b)));
    return out;
  }

  const BalapincParams& params() const noexcept { return params_; }

 private:
  const FeatureSet& features(const std::string& w) const {
    auto it = cache_.find(w);
    if (it == cache_.end()) it = cache_.emplace(w, row_features(*matrix_, w, params_.max_features)).first;
    return it->second;
  }

  const PpmiMatrix* matrix_;
  BalapincParams params_;
  bool fixed_;
  mutable std::map<std::string, FeatureSet, std::less<>> cache_;
};

/// Second-degree polynomial for ConVecs, RBF for SimDiffs.
inline svm::Kernel default_kernel(FeatureScheme s) {
  return s == FeatureScheme::convecs ? svm::Kernel::polynomial(2) : svm::Kernel::rbf(0.01);
}

/// Kernel SVM over ConVecs or SimDiffs pair vectors; the ranking score is
/// the calibrated probability of class 1.
class SvmScorer : public eval::Scorer {
 public:
  SvmScorer(FeatureScheme scheme, FeatureResources resources, svm::Kernel kernel, svm::TrainConfig config = {})
      : scheme_(scheme), res_(resources), kernel_(kernel), config_(config) {}

  void fit(std::span<const LabeledPair> train) override {
    const auto b = featurize(train);
    model_ = svm::train(feature_matrix(b), b.labels, kernel_, config_);
  }

  std::vector<eval::Prediction> predict(std::span<const LabeledPair> test) const override {
    if (!model_) throw TrainingError("the SVM scorer has not been fitted");
    const auto b = featurize(test);
    const Eigen::VectorXd p = svm::predict_probs(*model_, feature_matrix(b));
    std::vector<eval::Prediction> out;
    for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back({p(i), p(i) >= 0.5 ? 1 : 0});
    return out;
  }

  const std::optional<svm::SvmModel>& model() const noexcept { return model_; }

 private:
  BatchFeatures featurize(std::span<const LabeledPair> pairs) const {
    auto b = batch_features(pairs, scheme_, res_);
    if (!b.skipped.empty()) throw LookupError(b.skipped.front().reason.substr(std::string("unknown term: ").size()));
    return b;
  }

  FeatureScheme scheme_;
  FeatureResources res_;
  svm::Kernel kernel_;
  svm::TrainConfig config_;
  std::optional<svm::SvmModel> model_;
};

/// Pairs whose terms all satisfy `known`; warns with the number dropped.
template <typename Pred>
Dataset keep_covered(std::span<const LabeledPair> pairs, Pred known, std::string_view what) {
  Dataset out;
  for (const auto& p : pairs)
    if (known(p.a) && known(p.b)) out.push_back(p);
  if (out.size() < pairs.size()) {
    warn(std::to_string(pairs.size() - out.size()) + " of " + std::to_string(pairs.size()) + " pairs have terms missing from " +
         std::string(what) + " and were left out");
  }
  return out;
}

}  // namespace lexent::experiment

#endif  // LEXENT_EXPERIMENT_SCORERS_HPP
