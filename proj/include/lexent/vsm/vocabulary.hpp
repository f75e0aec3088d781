#ifndef LEXENT_VSM_VOCABULARY_HPP
#define LEXENT_VSM_VOCABULARY_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/util/text.hpp"

namespace lexent {

using RowId = std::uint32_t;

/// Ordered set of distinct terms (unigrams or space-joined n-grams) with
/// contiguous row ids starting at 0.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Duplicates are rejected so that terms and row ids stay in bijection.
  explicit Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].empty()) throw InputError("vocabulary contains an empty term");
      auto [it, inserted] = index_.emplace(terms_[i], static_cast<RowId>(i));
      if (!inserted) throw InputError("duplicate vocabulary term: '" + terms_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::string& term(RowId id) const { return terms_.at(id); }

  std::optional<RowId> find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view term) const { return find(term).has_value(); }

  RowId at(std::string_view term) const {
    if (auto id = find(term)) return *id;
    throw LookupError(std::string(term));
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, RowId> index_;
};

enum class Side : std::uint8_t { left, right };
enum class PosClass : std::uint8_t { any, noun, verb };

inline std::string_view to_string(Side s) { return s == Side::left ? "left" : "right"; }

inline std::string_view to_string(PosClass p) {
  switch (p) {
    case PosClass::noun: return "noun";
    case PosClass::verb: return "verb";
    default: return "any";
  }
}

/// A matrix column: a context token, the side of the target it occurred on,
/// and the part-of-speech class the column policy admitted it under.
struct ContextKey {
  std::string token;
  Side side = Side::left;
  PosClass pos = PosClass::any;

  // Lexicographic on (token, side, pos); also the feature-rank tie-break order.
  friend auto operator<=>(const ContextKey&, const ContextKey&) = default;
  friend bool operator==(const ContextKey&, const ContextKey&) = default;

  std::string serialize() const {
    std::string out = token;
    out += '#';
    out += to_string(side);
    out += '#';
    out += to_string(pos);
    return out;
  }

  static ContextKey parse(std::string_view text) {
    // Split from the right: the token itself may contain '#'.
    const auto p2 = text.rfind('#');
    if (p2 == std::string_view::npos || p2 == 0) throw InputError("bad context key: '" + std::string(text) + "'");
    const auto p1 = text.rfind('#', p2 - 1);
    if (p1 == std::string_view::npos || p1 == 0) throw InputError("bad context key: '" + std::string(text) + "'");
    ContextKey key;
    key.token = std::string(text.substr(0, p1));
    const auto side = text.substr(p1 + 1, p2 - p1 - 1);
    const auto pos = text.substr(p2 + 1);
    if (side == "left") key.side = Side::left;
    else if (side == "right") key.side = Side::right;
    else throw InputError("bad context side in '" + std::string(text) + "'");
    if (pos == "any") key.pos = PosClass::any;
    else if (pos == "noun") key.pos = PosClass::noun;
    else if (pos == "verb") key.pos = PosClass::verb;
    else throw InputError("bad context pos class in '" + std::string(text) + "'");
    return key;
  }
};

struct ContextKeyHash {
  std::size_t operator()(const ContextKey& k) const noexcept {
    return std::hash<std::string>{}(k.token) ^ (static_cast<std::size_t>(k.side) << 1) ^
           (static_cast<std::size_t>(k.pos) << 3);
  }
};

}  // namespace lexent

#endif  // LEXENT_VSM_VOCABULARY_HPP
