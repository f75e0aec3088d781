#ifndef LEXENT_VSM_EMBEDDING_HPP
#define LEXENT_VSM_EMBEDDING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "lexent/error.hpp"
#include "lexent/util/log.hpp"
#include "lexent/vsm/svd.hpp"
#include "lexent/vsm/vocabulary.hpp"

namespace lexent {

enum class SpaceKind : std::uint8_t { general, domain, function };

inline std::string_view to_string(SpaceKind s) {
  switch (s) {
    case SpaceKind::domain: return "domain";
    case SpaceKind::function: return "function";
    default: return "general";
  }
}

inline SpaceKind parse_space_kind(std::string_view s) {
  if (s == "general") return SpaceKind::general;
  if (s == "domain") return SpaceKind::domain;
  if (s == "function") return SpaceKind::function;
  throw InputError("unknown space kind '" + std::string(s) + "'");
}

/// Dense word vectors U_k diag(sigma^p), one row per vocabulary term.
class Embedding {
 public:
  Embedding() = default;

  Embedding(SpaceKind space, Vocabulary rows, Eigen::MatrixXd vectors, double p)
      : space_(space), rows_(std::move(rows)), vectors_(std::move(vectors)), p_(p) {
    if (static_cast<std::size_t>(vectors_.rows()) != rows_.size()) {
      throw InputError("embedding has " + std::to_string(vectors_.rows()) + " vectors for " +
                       std::to_string(rows_.size()) + " terms");
    }
    if (!vectors_.allFinite()) throw NumericalError("embedding contains non-finite values");
  }

  SpaceKind space() const noexcept { return space_; }
  const Vocabulary& rows() const noexcept { return rows_; }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
  Eigen::Index k() const noexcept { return vectors_.cols(); }
  double p() const noexcept { return p_; }
  bool contains(std::string_view term) const { return rows_.contains(term); }

  auto row(std::string_view term) const { return vectors_.row(rows_.at(term)); }

 private:
  SpaceKind space_ = SpaceKind::general;
  Vocabulary rows_;
  Eigen::MatrixXd vectors_;
  double p_ = 1.0;
};

/// Scales each retained left singular vector by sigma_i^p.
inline Embedding project(const SvdFactors& factors, double p, Vocabulary rows,
                         SpaceKind space = SpaceKind::general) {
  if (p < 0.0 || p > 1.0) warn("projection exponent p = " + std::to_string(p) + " is outside [0, 1]");
  if (static_cast<std::size_t>(factors.U.rows()) != rows.size()) {
    throw InputError("factor rows do not match the vocabulary size");
  }
  Eigen::VectorXd scale(factors.k());
  for (Eigen::Index i = 0; i < factors.k(); ++i) scale(i) = std::pow(factors.sigma(i), p);
  Eigen::MatrixXd vectors = factors.U * scale.asDiagonal();
  return Embedding(space, std::move(rows), std::move(vectors), p);
}

/// Cosine of two row vectors; 0 if either is the zero vector.
template <typename A, typename B>
double cosine(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = a.dot(b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

inline double cosine(const Embedding& emb, std::string_view a, std::string_view b) {
  return cosine(emb.row(a), emb.row(b));
}

}  // namespace lexent

#endif  // LEXENT_VSM_EMBEDDING_HPP
