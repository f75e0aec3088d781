#ifndef LEXENT_EVAL_METRICS_HPP
#define LEXENT_EVAL_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/eval/stats.hpp"

namespace lexent::eval {

/// c_ij counts pairs whose actual class is i and predicted class is j.
struct ConfusionMatrix {
  std::uint64_t c00 = 0;
  std::uint64_t c01 = 0;
  std::uint64_t c10 = 0;
  std::uint64_t c11 = 0;

  std::uint64_t total() const noexcept { return c00 + c01 + c10 + c11; }
  std::uint64_t correct() const noexcept { return c00 + c11; }

  void add(int actual, int predicted) {
    if ((actual != 0 && actual != 1) || (predicted != 0 && predicted != 1)) {
      throw ParameterError("labels must be 0 or 1");
    }
    if (actual == 0) (predicted == 0 ? c00 : c01) += 1;
    else (predicted == 0 ? c10 : c11) += 1;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    c00 += o.c00;
    c01 += o.c01;
    c10 += o.c10;
    c11 += o.c11;
    return *this;
  }

  static ConfusionMatrix from(std::span<const int> actual, std::span<const int> predicted) {
    if (actual.size() != predicted.size()) throw ParameterError("label and prediction counts differ");
    ConfusionMatrix c;
    for (std::size_t i = 0; i < actual.size(); ++i) c.add(actual[i], predicted[i]);
    return c;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Per-class precision, recall and F with the class-size weights.
struct ClassMeasures {
  double pre0 = 0, pre1 = 0, rec0 = 0, rec1 = 0, f0 = 0, f1 = 0;
  double w0 = 0, w1 = 0;
  /// Names of class-wise measures whose denominator was zero (set to 0).
  std::vector<std::string> degenerate;
};

struct MetricsReport {
  std::optional<double> ap0;
  std::optional<double> ap1;
  double pre = 0.0;
  double rec = 0.0;
  double f = 0.0;
  /// Percentage in [0, 100].
  double acc = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  ConfusionMatrix confusion;
  ClassMeasures classes;
  std::uint64_t leaked_terms = 0;
  /// Per-fold AP values when the report pools cross-validation folds.
  std::vector<std::optional<double>> fold_ap0;
  std::vector<std::optional<double>> fold_ap1;
};

inline ClassMeasures class_measures(const ConfusionMatrix& c) {
  ClassMeasures m;
  auto ratio = [&](std::uint64_t num, std::uint64_t den, const char* name) {
    if (den == 0) {
      m.degenerate.emplace_back(name);
      return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
  };
  auto harmonic = [&](double p, double r, const char* name) {
    if (p + r == 0.0) {
      m.degenerate.emplace_back(name);
      return 0.0;
    }
    return 2.0 * p * r / (p + r);
  };
  m.pre0 = ratio(c.c00, c.c00 + c.c10, "pre0");
  m.pre1 = ratio(c.c11, c.c11 + c.c01, "pre1");
  m.rec0 = ratio(c.c00, c.c00 + c.c01, "rec0");
  m.rec1 = ratio(c.c11, c.c11 + c.c10, "rec1");
  m.f0 = harmonic(m.pre0, m.rec0, "f0");
  m.f1 = harmonic(m.pre1, m.rec1, "f1");
  const double total = static_cast<double>(c.total());
  m.w0 = static_cast<double>(c.c00 + c.c01) / total;
  m.w1 = static_cast<double>(c.c11 + c.c10) / total;
  return m;
}

inline double weighted_f(const ConfusionMatrix& c) {
  if (c.total() == 0) throw ParameterError("weighted F needs a nonempty confusion matrix");
  const auto m = class_measures(c);
  return m.w0 * m.f0 + m.w1 * m.f1;
}

/// Class-size weighted precision, recall and F, accuracy as a percentage,
/// and the 95% Wilson interval of the accuracy.
inline MetricsReport metrics(const ConfusionMatrix& c) {
  if (c.total() == 0) throw ParameterError("metrics need a nonempty confusion matrix");
  MetricsReport r;
  r.confusion = c;
  r.classes = class_measures(c);
  const auto& m = r.classes;
  r.pre = m.w0 * m.pre0 + m.w1 * m.pre1;
  r.rec = m.w0 * m.rec0 + m.w1 * m.rec1;
  r.f = m.w0 * m.f0 + m.w1 * m.f1;
  const double fraction = static_cast<double>(c.correct()) / static_cast<double>(c.total());
  r.acc = 100.0 * fraction;
  const auto ci = wilson_interval(fraction, c.total());
  r.wilson_low = ci.low;
  r.wilson_high = ci.high;
  return r;
}

/// Weighted F of hard predictions.
inline double weighted_f(std::span<const int> actual, std::span<const int> predicted) {
  return weighted_f(ConfusionMatrix::from(actual, predicted));
}

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_METRICS_HPP
