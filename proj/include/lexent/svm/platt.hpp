#ifndef LEXENT_SVM_PLATT_HPP
#define LEXENT_SVM_PLATT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>

#include "lexent/error.hpp"
#include "lexent/util/log.hpp"

namespace lexent::svm {

struct PlattFit {
  double A = 0.0;
  double B = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// 1 / (1 + exp(A f + B)), kept strictly inside (0, 1).
inline double platt_probability(double A, double B, double f) {
  const double z = A * f + B;
  const double p = z >= 0.0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
  return std::clamp(p, std::numeric_limits<double>::denorm_min(), std::nextafter(1.0, 0.0));
}

/// Platt smoothed targets: (N+ + 1)/(N+ + 2) for positives, 1/(N- + 2) for negatives.
inline std::pair<double, double> platt_targets(std::size_t n_pos, std::size_t n_neg) {
  return {(static_cast<double>(n_pos) + 1.0) / (static_cast<double>(n_pos) + 2.0),
          1.0 / (static_cast<double>(n_neg) + 2.0)};
}

/// Newton iterations with backtracking on the regularized cross-entropy
/// (Lin, Lin and Weng's formulation of Platt scaling).
inline PlattFit fit_platt(std::span<const double> f, std::span<const int> labels, int max_iter = 100) {
  if (f.size() != labels.size()) throw InputError("decision values and labels differ in length");
  std::size_t n_pos = 0, n_neg = 0;
  for (int y : labels) (y == 1 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) throw TrainingError("calibration needs both classes");
  const auto [hi, lo] = platt_targets(n_pos, n_neg);
  const double min_step = 1e-10, sigma = 1e-12, grad_tol = 1e-10;

  auto objective = [&](double A, double B) {
    double v = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double t = labels[i] == 1 ? hi : lo;
      const double z = f[i] * A + B;
      v += z >= 0.0 ? t * z + std::log1p(std::exp(-z)) : (t - 1.0) * z + std::log1p(std::exp(z));
    }
    return v;
  };

  PlattFit fit;
  double A = 0.0;
  double B = std::log((static_cast<double>(n_neg) + 1.0) / (static_cast<double>(n_pos) + 1.0));
  double fval = objective(A, B);
  double g1 = 0.0, g2 = 0.0;
  for (fit.iterations = 0; fit.iterations < max_iter; ++fit.iterations) {
    double h11 = sigma, h22 = sigma, h21 = 0.0;
    g1 = g2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double t = labels[i] == 1 ? hi : lo;
      const double z = f[i] * A + B;
      double p, q;
      if (z >= 0.0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      const double d2 = p * q;
      h11 += f[i] * f[i] * d2;
      h22 += d2;
      h21 += f[i] * d2;
      const double d1 = t - p;
      g1 += f[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < grad_tol && std::abs(g2) < grad_tol) {
      fit.converged = true;
      break;
    }
    const double det = h11 * h22 - h21 * h21;
    const double dA = -(h22 * g1 - h21 * g2) / det;
    const double dB = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * dA + g2 * dB;
    double step = 1.0;
    while (step >= min_step) {
      const double nA = A + step * dA, nB = B + step * dB;
      const double nf = objective(nA, nB);
      if (nf < fval + 1e-4 * step * gd) {
        A = nA, B = nB, fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < min_step) {
      // No further decrease is representable; accept if the gradient is already small.
      fit.converged = std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5;
      break;
    }
  }
  fit.A = A;
  fit.B = B;
  if (!fit.converged) {
    warn("Platt calibration did not converge after " + std::to_string(fit.iterations) + " iterations");
  }
  return fit;
}

}  // namespace lexent::svm

#endif  // LEXENT_SVM_PLATT_HPP
