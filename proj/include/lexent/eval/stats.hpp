#ifndef LEXENT_EVAL_STATS_HPP
#define LEXENT_EVAL_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/math/distributions/normal.hpp>

#include "lexent/error.hpp"

namespace lexent::eval {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Two-sided standard normal critical value for `confidence`.
inline double normal_critical_value(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("confidence must lie in (0, 1)");
  boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, 0.5 + confidence / 2.0);
}

/// Wilson score interval for a binomial proportion observed over n trials.
inline Interval wilson_interval(double proportion, std::uint64_t n, double confidence = 0.95) {
  if (n < 1) throw ParameterError("wilson_interval needs n >= 1");
  if (!(proportion >= 0.0 && proportion <= 1.0)) throw ParameterError("proportion must lie in [0, 1]");
  const double z = normal_critical_value(confidence);
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (proportion + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(proportion * (1.0 - proportion) / nn + z2 / (4.0 * nn * nn)) / denom;
  Interval ci{center - half, center + half};
  // Exact at the boundaries; the closed form above only reaches them up to rounding.
  if (proportion == 1.0) ci.high = 1.0;
  if (proportion == 0.0) ci.low = 0.0;
  ci.low = std::clamp(ci.low, 0.0, proportion);
  ci.high = std::clamp(ci.high, proportion, 1.0);
  return ci;
}

namespace detail {

inline double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace detail

/// Two-sided Fisher exact test comparing the success rates of two systems:
/// table [[correct_a, n_a - correct_a], [correct_b, n_b - correct_b]].
/// Sums the hypergeometric probabilities of every table with the same
/// margins that is no more likely than the observed one.
inline double fisher_exact(std::uint64_t correct_a, std::uint64_t n_a, std::uint64_t correct_b, std::uint64_t n_b) {
  if (correct_a > n_a || correct_b > n_b) throw ParameterError("correct counts exceed their totals");
  const std::uint64_t n = n_a + n_b;
  const std::uint64_t successes = correct_a + correct_b;
  if (n == 0) return 1.0;
  const std::uint64_t lo = successes > n_b ? successes - n_b : 0;
  const std::uint64_t hi = std::min(successes, n_a);
  const double log_total = detail::log_choose(n, successes);
  auto log_prob = [&](std::uint64_t x) {
    return detail::log_choose(n_a, x) + detail::log_choose(n_b, successes - x) - log_total;
  };
  const double observed = log_prob(correct_a);
  // Relative slack so tables tied with the observed one survive lgamma rounding.
  const double cutoff = observed + 1e-7;
  double p = 0.0;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const double lp = log_prob(x);
    if (lp <= cutoff) p += std::exp(lp);
  }
  return std::min(p, 1.0);
}

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_STATS_HPP
