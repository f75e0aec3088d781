#ifndef LEXENT_EVAL_RANKING_HPP
#define LEXENT_EVAL_RANKING_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "lexent/error.hpp"

namespace lexent::eval {

struct ScoredLabel {
  double score = 0.0;
  int label = 0;
};

enum class Direction { from_top, from_bottom };

/// Items sorted by descending score; equal scores keep their original order.
class RankedList {
 public:
  RankedList() = default;

  explicit RankedList(std::vector<ScoredLabel> items) : items_(std::move(items)) {
    for (const auto& it : items_) {
      if (it.label != 0 && it.label != 1) throw ParameterError("ranked labels must be 0 or 1");
    }
    std::stable_sort(items_.begin(), items_.end(),
                     [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
  }

  RankedList(std::span<const double> scores, std::span<const int> labels) : RankedList(zip(scores, labels)) {}

  const std::vector<ScoredLabel>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }

 private:
  static std::vector<ScoredLabel> zip(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ParameterError("score and label counts differ");
    std::vector<ScoredLabel> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = {scores[i], labels[i]};
    return out;
  }

  std::vector<ScoredLabel> items_;
};

/// Average precision of `positive_label` scanning the ranking from the top
/// or the bottom. AP1 = (top, 1), AP0 = (bottom, 0). Nullopt when no item
/// carries the positive label.
inline std::optional<double> average_precision(const RankedList& ranked, int positive_label, Direction direction) {
  const auto& items = ranked.items();
  const std::size_t n = items.size();
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    const auto& it = direction == Direction::from_top ? items[r - 1] : items[n - r];
    if (it.label != positive_label) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r);
  }
  if (hits == 0) return std::nullopt;
  return sum / static_cast<double>(hits);
}

inline std::optional<double> ap1(const RankedList& r) { return average_precision(r, 1, Direction::from_top); }
inline std::optional<double> ap0(const RankedList& r) { return average_precision(r, 0, Direction::from_bottom); }

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_RANKING_HPP
