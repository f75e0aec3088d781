#ifndef LEXENT_SVM_KERNEL_HPP
#define LEXENT_SVM_KERNEL_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "lexent/error.hpp"

namespace lexent::svm {

enum class KernelKind : std::uint8_t { polynomial, rbf };

/// (x.y)^degree without an additive constant, or exp(-gamma |x - y|^2).
struct Kernel {
  KernelKind kind = KernelKind::polynomial;
  int degree = 1;
  double gamma = 0.01;

  static Kernel polynomial(int degree) {
    if (degree < 1) throw ParameterError("polynomial degree must be >= 1");
    return {KernelKind::polynomial, degree, 0.01};
  }
  static Kernel rbf(double gamma = 0.01) {
    if (!(gamma > 0.0)) throw ParameterError("rbf gamma must be > 0");
    return {KernelKind::rbf, 1, gamma};
  }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) const {
    if (kind == KernelKind::polynomial) return std::pow(x.dot(y), degree);
    return std::exp(-gamma * (x - y).squaredNorm());
  }

  /// K(a_i, b_j) for the rows of a and b.
  Eigen::MatrixXd gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
    Eigen::MatrixXd g = a * b.transpose();
    if (kind == KernelKind::polynomial) {
      if (degree > 1) g = g.array().pow(degree).matrix();
      return g;
    }
    const Eigen::VectorXd na = a.rowwise().squaredNorm();
    const Eigen::VectorXd nb = b.rowwise().squaredNorm();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        g(i, j) = std::exp(-gamma * std::max(0.0, na(i) + nb(j) - 2.0 * g(i, j)));
      }
    }
    return g;
  }

  friend bool operator==(const Kernel&, const Kernel&) = default;
};

inline std::string describe(const Kernel& k) {
  if (k.kind == KernelKind::polynomial) return "polynomial(degree=" + std::to_string(k.degree) + ")";
  return "rbf(gamma=" + std::to_string(k.gamma) + ")";
}

}  // namespace lexent::svm

#endif  // LEXENT_SVM_KERNEL_HPP
