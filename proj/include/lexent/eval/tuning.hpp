#ifndef LEXENT_EVAL_TUNING_HPP
#define LEXENT_EVAL_TUNING_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lexent/balapinc.hpp"
#include "lexent/datasets/pairs.hpp"
#include "lexent/error.hpp"
#include "lexent/eval/metrics.hpp"

namespace lexent::eval {

inline const std::vector<std::size_t>& default_max_features_grid() {
  static const std::vector<std::size_t> grid{1000, 2000, 3000, 4000, 5000};
  return grid;
}

inline const std::vector<long>& default_k_grid() {
  static const std::vector<long> grid{100, 200, 300, 400, 500};
  return grid;
}

inline const std::vector<double>& default_p_grid() {
  static const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  return grid;
}

/// balAPinc scores of each pair under a given max_F.
using BalapincScoring = std::function<std::vector<double>(std::span<const LabeledPair>, std::optional<std::size_t>)>;

struct BalapincTuning {
  BalapincParams params;
  /// Dev2 weighted F of each grid point, in grid order.
  std::vector<double> dev2_f;
};

/// For each max_F, tunes T on Dev1 and measures F on Dev2; keeps the best
/// max_F (ties to the smaller value) and re-tunes T on Dev1 + Dev2.
inline BalapincTuning tune_balapinc(std::span<const LabeledPair> dev1, std::span<const LabeledPair> dev2,
                                    const BalapincScoring& score,
                                    std::span<const std::size_t> grid = default_max_features_grid()) {
  if (dev1.empty() || dev2.empty()) throw ParameterError("both dev sets must be nonempty");
  if (grid.empty()) throw ParameterError("the max_F grid is empty");
  const auto l1 = labels_of(dev1);
  const auto l2 = labels_of(dev2);
  BalapincTuning out;
  double best_f = -1.0;
  for (auto max_f : grid) {
    const auto s1 = score(dev1, max_f);
    const auto t = tune_threshold_scan(s1, l1).threshold;
    const auto s2 = score(dev2, max_f);
    std::vector<int> pred;
    for (double s : s2) pred.push_back(classify(s, {max_f, t}));
    const double f = weighted_f(l2, pred);
    out.dev2_f.push_back(f);
    if (f > best_f) best_f = f, out.params.max_features = max_f;
  }
  Dataset both(dev1.begin(), dev1.end());
  both.insert(both.end(), dev2.begin(), dev2.end());
  out.params.threshold = tune_threshold_scan(score(both, out.params.max_features), labels_of(both)).threshold;
  return out;
}

struct GridPoint {
  long k = 0;
  double p = 0.0;
  double f = 0.0;
};

struct SvdTuning {
  long k = 0;
  double p = 0.0;
  double f = 0.0;
  std::vector<GridPoint> grid;
};

/// Dev2 weighted F after training on Dev1 with embeddings at (k, p).
using GridEvaluation = std::function<double(long k, double p)>;

/// Argmax-F over the (k, p) grid; ties go to the smaller k, then smaller p.
inline SvdTuning tune_svd_grid(const GridEvaluation& evaluate, std::span<const long> ks = default_k_grid(),
                               std::span<const double> ps = default_p_grid()) {
  if (ks.empty() || ps.empty()) throw ParameterError("the (k, p) grid is empty");
  SvdTuning out;
  bool have = false;
  for (long k : ks) {
    for (double p : ps) {
      const double f = evaluate(k, p);
      out.grid.push_back({k, p, f});
      const bool better = !have || f > out.f || (f == out.f && (k < out.k || (k == out.k && p < out.p)));
      if (better) out.k = k, out.p = p, out.f = f, have = true;
    }
  }
  return out;
}

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_TUNING_HPP
