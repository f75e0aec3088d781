#ifndef LEXENT_VSM_SVD_HPP
#define LEXENT_VSM_SVD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "lexent/error.hpp"
#include "lexent/vsm/sparse_matrix.hpp"

namespace lexent {

/// Rank-k factors X ~= U diag(sigma) V^T with column-orthonormal U and V and
/// nonincreasing sigma.
struct SvdFactors {
  Eigen::MatrixXd U;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd V;

  Eigen::Index k() const noexcept { return sigma.size(); }

  Eigen::MatrixXd reconstruct() const { return U * sigma.asDiagonal() * V.transpose(); }

  /// Leading `k` factors; the top-k of a rank-K decomposition.
  SvdFactors leading(Eigen::Index k) const {
    if (k < 1 || k > this->k()) throw ParameterError("cannot take " + std::to_string(k) + " of " +
                                                     std::to_string(this->k()) + " factors");
    return {U.leftCols(k), sigma.head(k), V.leftCols(k)};
  }
};

struct SvdOptions {
  std::uint64_t seed = 0;
  /// Extra sketch columns beyond k.
  Eigen::Index oversample = 10;
  /// Convergence threshold on the change of the retained singular values,
  /// relative to the largest one.
  double tolerance = 1e-10;
  int max_iterations = 300;
};

namespace detail {

inline Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

}  // namespace detail

/// Truncated SVD by randomized subspace iteration: a seeded Gaussian sketch
/// of the column space is refined by alternating A / A^T products until the
/// top-k singular values stop moving, then the small projected matrix is
/// decomposed densely. Works on dense or sparse Eigen matrices.
template <typename Matrix>
SvdFactors truncated_svd(const Matrix& A, Eigen::Index k, const SvdOptions& opts = {}) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Eigen::Index full = std::min(m, n);
  if (k < 1 || k > full) {
    throw ParameterError("k = " + std::to_string(k) + " outside [1, " + std::to_string(full) + "]");
  }
  const Eigen::Index width = std::min(full, k + std::max<Eigen::Index>(opts.oversample, 0));

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd omega(n, width);
  for (Eigen::Index j = 0; j < width; ++j)
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = normal(rng);

  Eigen::MatrixXd Q = detail::orthonormal_basis(Eigen::MatrixXd(A * omega));
  Eigen::VectorXd previous = Eigen::VectorXd::Constant(k, -1.0);
  Eigen::BDCSVD<Eigen::MatrixXd> small;
  for (int iter = 0;; ++iter) {
    const Eigen::MatrixXd B = Q.transpose() * A;  // width x n
    small.compute(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd current = small.singularValues().head(k);
    const double scale = std::max(current(0), 1e-300);
    // A sketch as wide as the smaller dimension already spans the full range.
    const bool exact = width == full;
    if (exact || (current - previous).cwiseAbs().maxCoeff() <= opts.tolerance * scale ||
        iter >= opts.max_iterations) {
      break;
    }
    previous = current;
    const Eigen::MatrixXd Z = detail::orthonormal_basis(Eigen::MatrixXd(A.transpose() * Q));
    Q = detail::orthonormal_basis(Eigen::MatrixXd(A * Z));
  }

  SvdFactors f;
  f.U = Q * small.matrixU().leftCols(k);
  f.sigma = small.singularValues().head(k);
  f.V = small.matrixV().leftCols(k);
  if (!f.U.allFinite() || !f.V.allFinite() || !f.sigma.allFinite()) {
    throw NumericalError("truncated SVD produced non-finite factors");
  }
  return f;
}

inline SvdFactors truncated_svd(const PpmiMatrix& matrix, Eigen::Index k, std::uint64_t seed) {
  SvdOptions opts;
  opts.seed = seed;
  return truncated_svd(matrix.to_eigen(), k, opts);
}

/// Frobenius norm of X - U_k S_k V_k^T.
template <typename Matrix>
double reconstruction_error(const Matrix& A, const SvdFactors& f) {
  return (Eigen::MatrixXd(A) - f.reconstruct()).norm();
}

}  // namespace lexent

#endif  // LEXENT_VSM_SVD_HPP
