#ifndef LEXENT_SVM_MODEL_HPP
#define LEXENT_SVM_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lexent/error.hpp"
#include "lexent/svm/kernel.hpp"
#include "lexent/svm/platt.hpp"
#include "lexent/svm/smo.hpp"
#include "lexent/util/files.hpp"
#include "lexent/util/text.hpp"

namespace lexent::svm {

struct SvmModel {
  Kernel kernel;
  double C = 1.0;
  /// One support vector per row.
  Eigen::MatrixXd support_vectors;
  /// alpha_i * y_i with y in {-1, +1}.
  Eigen::VectorXd alphas_signed;
  double bias = 0.0;
  double platt_A = 0.0;
  double platt_B = 0.0;

  Eigen::Index dim() const noexcept { return support_vectors.cols(); }
};

/// Row-stacks equally long vectors.
inline Eigen::MatrixXd stack_rows(std::span<const Eigen::VectorXd> xs) {
  if (xs.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), xs.front().size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != m.cols()) throw InputError("feature vectors differ in dimension");
    m.row(static_cast<Eigen::Index>(i)) = xs[i].transpose();
  }
  return m;
}

namespace detail {

inline std::vector<int> signed_labels(std::span<const int> labels) {
  std::vector<int> y;
  y.reserve(labels.size());
  for (int l : labels) {
    if (l != 0 && l != 1) throw InputError("labels must be 0 or 1");
    y.push_back(l == 1 ? 1 : -1);
  }
  return y;
}

inline void require_both_classes(std::span<const int> labels) {
  const bool pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
  const bool neg = std::find(labels.begin(), labels.end(), 0) != labels.end();
  if (!pos || !neg) throw TrainingError("training data must contain both classes");
}

/// Trains the margin part of the model; Platt parameters stay zero.
inline SvmModel fit_margin(const Eigen::MatrixXd& X, std::span<const int> labels, const Kernel& kernel,
                           const TrainConfig& cfg) {
  const auto y = signed_labels(labels);
  Eigen::MatrixXd K = kernel.gram(X, X);
  K = (0.5 * (K + K.transpose())).eval();
  const auto sol = smo_solve(K, y, cfg);
  if (!sol.converged) {
    warn("SMO stopped at the iteration cap before reaching tolerance " + util::format_double(cfg.tol, 6));
  }
  std::vector<Eigen::Index> sv;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    if (sol.alpha(i) > 0.0) sv.push_back(i);
  SvmModel m;
  m.kernel = kernel;
  m.C = cfg.C;
  m.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), X.cols());
  m.alphas_signed.resize(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t r = 0; r < sv.size(); ++r) {
    const auto i = sv[r];
    m.support_vectors.row(static_cast<Eigen::Index>(r)) = X.row(i);
    m.alphas_signed(static_cast<Eigen::Index>(r)) = sol.alpha(i) * y[static_cast<std::size_t>(i)];
  }
  m.bias = sol.bias;
  return m;
}

inline Eigen::MatrixXd select_rows(const Eigen::MatrixXd& X, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), X.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = X.row(static_cast<Eigen::Index>(idx[r]));
  return out;
}

}  // namespace detail

/// Decision values for every row of X.
inline Eigen::VectorXd decision_values(const SvmModel& m, const Eigen::MatrixXd& X) {
  if (X.cols() != m.dim()) throw InputError("feature dimension does not match the model");
  if (m.support_vectors.rows() == 0) return Eigen::VectorXd::Constant(X.rows(), m.bias);
  return (m.kernel.gram(X, m.support_vectors) * m.alphas_signed).array() + m.bias;
}

inline double decision_value(const SvmModel& m, const Eigen::VectorXd& x) {
  if (x.size() != m.dim()) throw InputError("feature dimension does not match the model");
  double f = m.bias;
  for (Eigen::Index i = 0; i < m.support_vectors.rows(); ++i)
    f += m.alphas_signed(i) * m.kernel(m.support_vectors.row(i).transpose(), x);
  return f;
}

inline double predict_prob(const SvmModel& m, const Eigen::VectorXd& x) {
  return platt_probability(m.platt_A, m.platt_B, decision_value(m, x));
}

inline Eigen::VectorXd predict_probs(const SvmModel& m, const Eigen::MatrixXd& X) {
  Eigen::VectorXd f = decision_values(m, X);
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = platt_probability(m.platt_A, m.platt_B, f(i));
  return f;
}

/// Class 1 iff the calibrated probability is at least 0.5.
inline int predict_label(const SvmModel& m, const Eigen::VectorXd& x) { return predict_prob(m, x) >= 0.5 ? 1 : 0; }

/// Smallest per-class count for which calibration uses held-out decision values.
inline constexpr std::size_t kMinPerClassForHeldOutCalibration = 5;

/// Trains on rows of X with labels in {0, 1}, then calibrates probabilities
/// on decision values from a seeded, class-stratified 3-fold split. With
/// fewer than kMinPerClassForHeldOutCalibration examples in a class the
/// training decision values are used instead.
inline SvmModel train(const Eigen::MatrixXd& X, std::span<const int> labels, const Kernel& kernel,
                      const TrainConfig& cfg = {}) {
  validate(cfg);
  if (static_cast<std::size_t>(X.rows()) != labels.size()) throw InputError("feature rows and labels differ in count");
  detail::signed_labels(labels);
  detail::require_both_classes(labels);
  SvmModel model = detail::fit_margin(X, labels, kernel, cfg);

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? pos : neg).push_back(i);
  std::vector<double> f(labels.size());
  if (std::min(pos.size(), neg.size()) < kMinPerClassForHeldOutCalibration) {
    const Eigen::VectorXd all = decision_values(model, X);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = all(static_cast<Eigen::Index>(i));
  } else {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    std::vector<int> fold(labels.size());
    for (std::size_t r = 0; r < pos.size(); ++r) fold[pos[r]] = static_cast<int>(r % 3);
    for (std::size_t r = 0; r < neg.size(); ++r) fold[neg[r]] = static_cast<int>(r % 3);
    for (int k = 0; k < 3; ++k) {
      std::vector<std::size_t> in, out;
      for (std::size_t i = 0; i < labels.size(); ++i) (fold[i] == k ? out : in).push_back(i);
      std::vector<int> in_labels;
      for (auto i : in) in_labels.push_back(labels[i]);
      const auto sub = detail::fit_margin(detail::select_rows(X, in), in_labels, kernel, cfg);
      const Eigen::VectorXd fv = decision_values(sub, detail::select_rows(X, out));
      for (std::size_t r = 0; r < out.size(); ++r) f[out[r]] = fv(static_cast<Eigen::Index>(r));
    }
  }
  const auto fit = fit_platt(f, labels);
  model.platt_A = fit.A;
  model.platt_B = fit.B;
  return model;
}

inline constexpr std::string_view kModelMagic = "lexent-svm";
inline constexpr int kModelVersion = 1;

/// Versioned header line, then one support vector per line: signed alpha,
/// tab, comma-separated coordinates.
inline std::string format_model(const SvmModel& m) {
  std::string out = std::string(kModelMagic) + " version=" + std::to_string(kModelVersion);
  out += m.kernel.kind == KernelKind::polynomial ? " kernel=polynomial degree=" + std::to_string(m.kernel.degree)
                                                 : " kernel=rbf gamma=" + util::format_double(m.kernel.gamma);
  out += " C=" + util::format_double(m.C) + " dim=" + std::to_string(m.dim()) +
         " n_sv=" + std::to_string(m.support_vectors.rows()) + " bias=" + util::format_double(m.bias) +
         " platt_A=" + util::format_double(m.platt_A) + " platt_B=" + util::format_double(m.platt_B) + '\n';
  for (Eigen::Index i = 0; i < m.support_vectors.rows(); ++i) {
    out += util::format_double(m.alphas_signed(i)) + '\t';
    for (Eigen::Index j = 0; j < m.support_vectors.cols(); ++j) {
      if (j) out += ',';
      out += util::format_double(m.support_vectors(i, j));
    }
    out += '\n';
  }
  return out;
}

inline void save_model(const SvmModel& m, const std::filesystem::path& path) {
  util::write_file_atomic(path, format_model(m));
}

inline SvmModel parse_model(std::istream& in, const std::string& source = "<model>") {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with(kModelMagic)) throw ParseError(source, 1, "not an SVM model file");
  auto field = [&](std::string_view key) {
    auto v = util::header_field(line, key);
    if (!v) throw ParseError(source, 1, "header lacks " + std::string(key) + "=");
    return *v;
  };
  auto num = [&](std::string_view key) {
    const auto v = util::parse_double(field(key));
    if (!v) throw ParseError(source, 1, "bad " + std::string(key) + " value");
    return *v;
  };
  auto integer = [&](std::string_view key) {
    const auto v = util::parse_int<long>(field(key));
    if (!v || *v < 0) throw ParseError(source, 1, "bad " + std::string(key) + " value");
    return *v;
  };
  if (integer("version") != kModelVersion) throw ParseError(source, 1, "unsupported model version");
  SvmModel m;
  const auto kind = field("kernel");
  if (kind == "polynomial") {
    m.kernel = Kernel::polynomial(static_cast<int>(integer("degree")));
  } else if (kind == "rbf") {
    m.kernel = Kernel::rbf(num("gamma"));
  } else {
    throw ParseError(source, 1, "unknown kernel '" + kind + "'");
  }
  m.C = num("C");
  const auto dim = integer("dim");
  const auto n_sv = integer("n_sv");
  m.bias = num("bias");
  m.platt_A = num("platt_A");
  m.platt_B = num("platt_B");
  m.support_vectors.resize(n_sv, dim);
  m.alphas_signed.resize(n_sv);
  for (long r = 0; r < n_sv; ++r) {
    const auto line_no = static_cast<std::size_t>(r + 2);
    if (!std::getline(in, line)) throw ParseError(source, line_no, "missing support vector");
    const auto parts = util::split(line, '\t');
    if (parts.size() != 2) throw ParseError(source, line_no, "expected alpha and vector");
    const auto alpha = util::parse_double(parts[0]);
    const auto vals = util::split(parts[1], ',');
    if (!alpha || static_cast<long>(vals.size()) != dim) throw ParseError(source, line_no, "malformed support vector");
    m.alphas_signed(r) = *alpha;
    for (long j = 0; j < dim; ++j) {
      const auto v = util::parse_double(vals[static_cast<std::size_t>(j)]);
      if (!v) throw ParseError(source, line_no, "bad coordinate");
      m.support_vectors(r, j) = *v;
    }
  }
  return m;
}

inline SvmModel load_model(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  return parse_model(in, path.string());
}

}  // namespace lexent::svm

#endif  // LEXENT_SVM_MODEL_HPP
