#ifndef LEXENT_SVM_SMO_HPP
#define LEXENT_SVM_SMO_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lexent/error.hpp"

namespace lexent::svm {

struct TrainConfig {
  double C = 1.0;
  /// Stop once the maximal KKT violation drops below this.
  double tol = 1e-3;
  /// Floor for the curvature of a pair update.
  double eps = 1e-12;
  /// Iteration cap, in multiples of the training-set size.
  int max_passes = 1000;
  std::uint64_t seed = 0;
};

inline void validate(const TrainConfig& c) {
  if (!(c.C > 0.0) || !(c.tol > 0.0) || !(c.eps > 0.0) || c.max_passes <= 0) {
    throw ParameterError("C, tol, eps and max_passes must all be positive");
  }
}

struct DualSolution {
  /// One per training example, in [0, C].
  Eigen::VectorXd alpha;
  /// Decision function is sum_i alpha_i y_i K(x_i, x) + bias.
  double bias = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Solves min 1/2 a'Qa - e'a, 0 <= a <= C, y'a = 0 with Q_ij = y_i y_j K_ij,
/// choosing the maximal violating pair each step. Ties between equally
/// violating indices go to whichever comes first in a seeded permutation.
inline DualSolution smo_solve(const Eigen::MatrixXd& K, const std::vector<int>& y, const TrainConfig& cfg) {
  validate(cfg);
  const auto n = static_cast<Eigen::Index>(y.size());
  if (K.rows() != n || K.cols() != n) throw InputError("Gram matrix size does not match the labels");
  const double C = cfg.C;
  Eigen::VectorXd yd(n);
  for (Eigen::Index i = 0; i < n; ++i) yd(i) = y[static_cast<std::size_t>(i)];

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 rng(cfg.seed);
  std::shuffle(order.begin(), order.end(), rng);

  DualSolution s;
  s.alpha = Eigen::VectorXd::Zero(n);
  auto& a = s.alpha;
  Eigen::VectorXd G = Eigen::VectorXd::Constant(n, -1.0);  // gradient Qa - e
  auto up = [&](Eigen::Index t) { return (yd(t) > 0 && a(t) < C) || (yd(t) < 0 && a(t) > 0); };
  auto low = [&](Eigen::Index t) { return (yd(t) > 0 && a(t) > 0) || (yd(t) < 0 && a(t) < C); };

  const std::size_t cap = static_cast<std::size_t>(cfg.max_passes) * static_cast<std::size_t>(std::max<Eigen::Index>(n, 1));
  while (true) {
    Eigen::Index i = -1, j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (auto t : order) {
      const double v = -yd(t) * G(t);
      if (up(t) && v > gmax) gmax = v, i = t;
      if (low(t) && v < gmin) gmin = v, j = t;
    }
    if (i < 0 || j < 0 || gmax - gmin < cfg.tol) {
      s.converged = true;
      break;
    }
    if (s.iterations >= cap) break;
    ++s.iterations;

    const double ai = a(i), aj = a(j);
    if (yd(i) != yd(j)) {
      const double quad = std::max(K(i, i) + K(j, j) - 2.0 * K(i, j), cfg.eps);
      const double delta = (-G(i) - G(j)) / quad;
      const double diff = ai - aj;
      a(i) += delta;
      a(j) += delta;
      if (diff > 0) {
        if (a(j) < 0) a(j) = 0, a(i) = diff;
      } else if (a(i) < 0) {
        a(i) = 0, a(j) = -diff;
      }
      if (diff > 0) {
        if (a(i) > C) a(i) = C, a(j) = C - diff;
      } else if (a(j) > C) {
        a(j) = C, a(i) = C + diff;
      }
    } else {
      const double quad = std::max(K(i, i) + K(j, j) - 2.0 * K(i, j), cfg.eps);
      const double delta = (G(i) - G(j)) / quad;
      const double sum = ai + aj;
      a(i) -= delta;
      a(j) += delta;
      if (sum > C) {
        if (a(i) > C) a(i) = C, a(j) = sum - C;
      } else if (a(j) < 0) {
        a(j) = 0, a(i) = sum;
      }
      if (sum > C) {
        if (a(j) > C) a(j) = C, a(i) = sum - C;
      } else if (a(i) < 0) {
        a(i) = 0, a(j) = sum;
      }
    }
    const double di = a(i) - ai, dj = a(j) - aj;
    // Q_ti = y_t y_i K_ti
    G.array() += yd.array() * (K.col(i).array() * (yd(i) * di) + K.col(j).array() * (yd(j) * dj));
  }

  // Bias from the free multipliers; the midpoint of the feasible range otherwise.
  double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum_free = 0.0;
  std::size_t n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = yd(t) * G(t);
    if (a(t) >= C) {
      if (yd(t) < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a(t) <= 0) {
      if (yd(t) > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  double rho = 0.0;
  if (n_free > 0) rho = sum_free / static_cast<double>(n_free);
  else if (std::isfinite(ub) && std::isfinite(lb)) rho = (ub + lb) / 2.0;
  else if (std::isfinite(ub)) rho = ub;
  else if (std::isfinite(lb)) rho = lb;
  s.bias = -rho;
  return s;
}

}  // namespace lexent::svm

#endif  // LEXENT_SVM_SMO_HPP
