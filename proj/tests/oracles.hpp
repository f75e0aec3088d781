// Test-only reference implementations. Each one evaluates a definition
// directly (no incremental state, no shared helpers with the library) so it
// can serve as an independent check.
#ifndef LEXENT_TESTS_ORACLES_HPP
#define LEXENT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lexent/vsm/ppmi.hpp"

namespace testing_oracles {

inline lexent::FeatureSet random_feature_set(std::mt19937_64& rng, std::uint32_t universe, std::size_t max_size) {
  std::vector<lexent::ColId> cols(universe);
  for (std::uint32_t i = 0; i < universe; ++i) cols[i] = i;
  std::shuffle(cols.begin(), cols.end(), rng);
  const std::size_t n = rng() % (max_size + 1);
  std::uniform_real_distribution<double> w(0.01, 5.0);
  std::vector<lexent::Feature> f;
  for (std::size_t i = 0; i < n && i < cols.size(); ++i) f.push_back({cols[i], w(rng)});
  return lexent::FeatureSet::from_unsorted("w", f);
}

/// Inclusion-based average precision evaluated term by term: for each rank r
/// the included set {f : rank(f, Fu) <= r and f in Fv} is rebuilt from scratch.
inline double naive_apinc(const lexent::FeatureSet& fu, const lexent::FeatureSet& fv) {
  const auto& u = fu.ranked();
  const auto& v = fv.ranked();
  if (u.empty()) return 0.0;
  auto in_v = [&](lexent::ColId c) {
    return std::any_of(v.begin(), v.end(), [&](const lexent::Feature& f) { return f.col == c; });
  };
  auto rel_v = [&](lexent::ColId c) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].col == c) return 1.0 - static_cast<double>(i + 1) / static_cast<double>(v.size() + 1);
    return 0.0;
  };
  double sum = 0.0;
  for (std::size_t r = 1; r <= u.size(); ++r) {
    std::set<lexent::ColId> inc;
    for (std::size_t i = 0; i < r; ++i)
      if (in_v(u[i].col)) inc.insert(u[i].col);
    const double p = static_cast<double>(inc.size()) / static_cast<double>(r);
    sum += p * rel_v(u[r - 1].col);
  }
  return sum / static_cast<double>(u.size());
}

/// Weighted F straight from the confusion-matrix definitions.
inline double direct_weighted_f(const std::vector<int>& actual, const std::vector<int>& predicted) {
  double c[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < actual.size(); ++i) c[actual[i]][predicted[i]] += 1;
  auto safe = [](double num, double den) { return den == 0 ? 0.0 : num / den; };
  const double pre0 = safe(c[0][0], c[0][0] + c[1][0]);
  const double pre1 = safe(c[1][1], c[1][1] + c[0][1]);
  const double rec0 = safe(c[0][0], c[0][0] + c[0][1]);
  const double rec1 = safe(c[1][1], c[1][1] + c[1][0]);
  const double f0 = safe(2 * pre0 * rec0, pre0 + rec0);
  const double f1 = safe(2 * pre1 * rec1, pre1 + rec1);
  const double n = c[0][0] + c[0][1] + c[1][0] + c[1][1];
  return (c[0][0] + c[0][1]) / n * f0 + (c[1][1] + c[1][0]) / n * f1;
}

/// Tries every threshold that can change a classification, smallest first;
/// returns (threshold, F) of the first maximum.
inline std::pair<double, double> scan_threshold(const std::vector<double>& scores, const std::vector<int>& labels) {
  std::vector<double> distinct(scores);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> candidates{distinct.front() - 1.0};
  for (std::size_t i = 1; i < distinct.size(); ++i) candidates.push_back((distinct[i - 1] + distinct[i]) / 2.0);
  candidates.push_back(distinct.back() + 1.0);
  std::pair<double, double> best{0.0, -1.0};
  for (double t : candidates) {
    std::vector<int> pred;
    for (double s : scores) pred.push_back(s >= t ? 1 : 0);
    const double f = direct_weighted_f(labels, pred);
    if (f > best.second) best = {t, f};
  }
  return best;
}

/// Average precision from the definition: mean over relevant positions r of
/// the precision of the top-r prefix. Input is already in rank order.
inline double brute_ap(const std::vector<int>& relevant_in_rank_order) {
  double sum = 0.0;
  int relevant = 0;
  for (std::size_t r = 1; r <= relevant_in_rank_order.size(); ++r) {
    if (!relevant_in_rank_order[r - 1]) continue;
    int prefix_hits = 0;
    for (std::size_t i = 0; i < r; ++i) prefix_hits += relevant_in_rank_order[i];
    sum += static_cast<double>(prefix_hits) / static_cast<double>(r);
    ++relevant;
  }
  return sum / relevant;
}

inline unsigned __int128 choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Two-sided Fisher p by exhaustive enumeration of the hypergeometric
/// support, comparing table probabilities exactly as integers.
inline double fisher_enumerate(unsigned a, unsigned n_a, unsigned b, unsigned n_b) {
  const unsigned k = a + b;
  const unsigned n = n_a + n_b;
  auto weight = [&](unsigned x) { return choose(n_a, x) * choose(n_b, k - x); };
  const unsigned __int128 observed = weight(a);
  long double num = 0;
  for (unsigned x = 0; x <= std::min(k, n_a); ++x) {
    if (k - x > n_b) continue;
    const auto w = weight(x);
    if (w <= observed) num += static_cast<long double>(w);
  }
  return static_cast<double>(num / static_cast<long double>(choose(n, k)));
}

}  // namespace testing_oracles

#endif  // LEXENT_TESTS_ORACLES_HPP
