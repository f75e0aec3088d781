#ifndef LEXENT_EVAL_FOLDS_HPP
#define LEXENT_EVAL_FOLDS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexent/datasets/pairs.hpp"
#include "lexent/error.hpp"

namespace lexent::eval {

enum class Setup : std::uint8_t { standard, clustered, balanced, different };

inline std::string_view to_string(Setup s) {
  switch (s) {
    case Setup::clustered: return "clustered";
    case Setup::balanced: return "balanced";
    case Setup::different: return "different";
    default: return "standard";
  }
}

inline Setup parse_setup(std::string_view s) {
  if (s == "standard") return Setup::standard;
  if (s == "clustered") return Setup::clustered;
  if (s == "balanced") return Setup::balanced;
  if (s == "different") return Setup::different;
  throw InputError("unknown evaluation setup '" + std::string(s) + "'");
}

struct FoldPlan {
  Setup setup = Setup::standard;
  /// Test indices of each fold, ascending.
  std::vector<std::vector<std::size_t>> folds;
  std::uint64_t seed = 0;
  /// Terms whose pairs ended up in more than one fold (clustered setups).
  std::size_t leaked_terms = 0;
  /// Pairs dropped by per-fold class balancing; they are used nowhere.
  std::vector<std::size_t> excluded;

  /// Every fold except `fold`, minus excluded pairs, ascending.
  std::vector<std::size_t> training_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < folds.size(); ++f)
      if (f != fold) out.insert(out.end(), folds[f].begin(), folds[f].end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Groups `members` (pair indices) into components linked by shared terms,
/// ignoring the terms in `cut`. Components and their members are ascending.
inline std::vector<std::vector<std::size_t>> components(std::span<const LabeledPair> data,
                                                        const std::vector<std::size_t>& members,
                                                        const std::set<std::string>& cut) {
  DisjointSets ds(members.size());
  std::unordered_map<std::string_view, std::size_t> first_with;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const auto& p = data[members[m]];
    for (const std::string* t : {&p.a, &p.b}) {
      if (cut.contains(*t)) continue;
      auto [it, fresh] = first_with.try_emplace(*t, m);
      if (!fresh) ds.unite(it->second, m);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t m = 0; m < members.size(); ++m) groups[ds.find(m)].push_back(members[m]);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

/// Term occurring in the most pairs of `piece` among those shared by at
/// least two; ties to the lexicographically smallest term. Empty if none.
inline std::string rarest_shared_term(std::span<const LabeledPair> data, const std::vector<std::size_t>& piece,
                                      const std::set<std::string>& cut) {
  std::map<std::string, std::size_t> count;
  for (auto i : piece) {
    const auto& p = data[i];
    if (!cut.contains(p.a)) ++count[p.a];
    if (p.b != p.a && !cut.contains(p.b)) ++count[p.b];
  }
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [term, c] : count) {
    if (c >= 2 && (best_count == 0 || c < best_count)) best = term, best_count = c;
  }
  return best;
}

inline void check_k(std::size_t n, std::size_t k) {
  if (k < 2) throw ParameterError("cross-validation needs k >= 2");
  if (n == 0) throw ParameterError("cannot build folds for an empty dataset");
  if (k > n) throw ParameterError("k = " + std::to_string(k) + " exceeds the dataset size " + std::to_string(n));
}

}  // namespace detail

/// Terms appearing in pairs from more than one fold.
inline std::size_t count_leaked_terms(std::span<const LabeledPair> data, const std::vector<std::vector<std::size_t>>& folds) {
  std::map<std::string_view, std::set<std::size_t>> seen;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (auto i : folds[f]) {
      seen[data[i].a].insert(f);
      seen[data[i].b].insert(f);
    }
  }
  return static_cast<std::size_t>(std::count_if(seen.begin(), seen.end(), [](const auto& e) { return e.second.size() > 1; }));
}

/// Seeded shuffle dealt round-robin; fold sizes differ by at most one.
inline FoldPlan standard_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
  detail::check_k(n, k);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  FoldPlan plan{Setup::standard, std::vector<std::vector<std::size_t>>(k), seed, 0, {}};
  for (std::size_t r = 0; r < n; ++r) plan.folds[r % k].push_back(order[r]);
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

/// Pairs sharing a term stay in one fold. Components larger than ceil(n/k)
/// are split by repeatedly ignoring their rarest shared term, so common
/// terms stay isolated in one fold. Pieces go largest first to the
/// currently smallest fold; equal-sized pieces by their first pair index.
/// The assignment depends on the data only.
inline FoldPlan clustered_folds(std::span<const LabeledPair> data, std::size_t k, std::uint64_t seed) {
  detail::check_k(data.size(), k);
  const std::size_t capacity = (data.size() + k - 1) / k;
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::set<std::string> cut;
  std::vector<std::vector<std::size_t>> pieces;
  std::vector<std::vector<std::size_t>> pending = detail::components(data, all, cut);
  while (!pending.empty()) {
    auto piece = std::move(pending.back());
    pending.pop_back();
    if (piece.size() <= capacity) {
      pieces.push_back(std::move(piece));
      continue;
    }
    const auto term = detail::rarest_shared_term(data, piece, cut);
    if (term.empty()) {
      pieces.push_back(std::move(piece));
      continue;
    }
    cut.insert(term);
    for (auto& sub : detail::components(data, piece, cut)) pending.push_back(std::move(sub));
  }

  std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() > y.size() : x.front() < y.front();
  });
  FoldPlan plan{Setup::clustered, std::vector<std::vector<std::size_t>>(k), seed, 0, {}};
  for (const auto& piece : pieces) {
    auto smallest = std::min_element(plan.folds.begin(), plan.folds.end(),
                                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    smallest->insert(smallest->end(), piece.begin(), piece.end());
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  plan.leaked_terms = count_leaked_terms(data, plan.folds);
  return plan;
}

/// Clustered folds, then within each fold the majority class is randomly
/// downsampled to the minority count.
inline FoldPlan balanced_folds(std::span<const LabeledPair> data, std::size_t k, std::uint64_t seed) {
  FoldPlan plan = clustered_folds(data, k, seed);
  plan.setup = Setup::balanced;
  std::mt19937_64 rng(seed + 1);
  for (auto& fold : plan.folds) {
    std::vector<std::size_t> zeros, ones;
    for (auto i : fold) (data[i].label == 1 ? ones : zeros).push_back(i);
    auto& major = zeros.size() >= ones.size() ? zeros : ones;
    const std::size_t keep = std::min(zeros.size(), ones.size());
    std::shuffle(major.begin(), major.end(), rng);
    plan.excluded.insert(plan.excluded.end(), major.begin() + static_cast<std::ptrdiff_t>(keep), major.end());
    major.resize(keep);
    fold = zeros;
    fold.insert(fold.end(), ones.begin(), ones.end());
    std::sort(fold.begin(), fold.end());
  }
  std::sort(plan.excluded.begin(), plan.excluded.end());
  return plan;
}

/// Cross-validation folds for the standard, clustered and balanced setups.
/// The different setup trains and tests on two datasets; see
/// evaluate_different.
inline FoldPlan make_folds(std::span<const LabeledPair> data, Setup setup, std::size_t k = 10, std::uint64_t seed = 0) {
  switch (setup) {
    case Setup::standard: return standard_folds(data.size(), k, seed);
    case Setup::clustered: return clustered_folds(data, k, seed);
    case Setup::balanced: return balanced_folds(data, k, seed);
    default: throw ParameterError("the different setup has no folds; it pairs a training and a test dataset");
  }
}

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_FOLDS_HPP
