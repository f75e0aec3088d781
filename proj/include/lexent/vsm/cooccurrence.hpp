#ifndef LEXENT_VSM_COOCCURRENCE_HPP
#define LEXENT_VSM_COOCCURRENCE_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/util/text.hpp"
#include "lexent/vsm/sparse_matrix.hpp"
#include "lexent/vsm/vocabulary.hpp"

namespace lexent {

/// Which contexts a matrix keeps: all tokens, nouns only (domain space) or
/// verbs only (function space).
enum class ContextPolicy : std::uint8_t { general, domain, function };

inline std::string_view to_string(ContextPolicy p) {
  switch (p) {
    case ContextPolicy::domain: return "domain";
    case ContextPolicy::function: return "function";
    default: return "general";
  }
}

inline ContextPolicy parse_context_policy(std::string_view s) {
  if (s == "general") return ContextPolicy::general;
  if (s == "domain") return ContextPolicy::domain;
  if (s == "function") return ContextPolicy::function;
  throw ParameterError("unknown context policy '" + std::string(s) + "'");
}

struct TaggedToken {
  std::string word;
  std::optional<std::string> tag;
};

using TaggedSentence = std::vector<TaggedToken>;

/// Splits "word_TAG" tokens on the last underscore. Tokens without a
/// non-empty tag after an underscore are left untagged.
inline TaggedSentence parse_tagged_sentence(std::string_view line) {
  TaggedSentence out;
  for (auto tok : util::split_ws(line)) {
    const auto us = tok.rfind('_');
    if (us != std::string_view::npos && us > 0 && us + 1 < tok.size()) {
      out.push_back({std::string(tok.substr(0, us)), std::string(tok.substr(us + 1))});
    } else {
      out.push_back({std::string(tok), std::nullopt});
    }
  }
  return out;
}

/// Penn-style tags: NN* are nouns, VB* are verbs.
inline PosClass pos_class_of(std::string_view tag) {
  if (tag.substr(0, 2) == "NN") return PosClass::noun;
  if (tag.substr(0, 2) == "VB") return PosClass::verb;
  return PosClass::any;
}

struct CountingReport {
  std::uint64_t sentences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t target_occurrences = 0;
  /// Tokens not covered by any vocabulary term occurrence.
  std::uint64_t oov_tokens = 0;
  /// Context tokens rejected by the part-of-speech policy.
  std::uint64_t filtered_contexts = 0;

  CountingReport& operator+=(const CountingReport& o) {
    sentences += o.sentences;
    tokens += o.tokens;
    target_occurrences += o.target_occurrences;
    oov_tokens += o.oov_tokens;
    filtered_contexts += o.filtered_contexts;
    return *this;
  }
};

/// Accumulates windowed co-occurrence counts sentence by sentence. Counters
/// over corpus shards can be merged; merging is associative and commutative.
class CooccurrenceCounter {
 public:
  CooccurrenceCounter(Vocabulary vocab, std::size_t window, ContextPolicy policy)
      : vocab_(std::move(vocab)), window_(window), policy_(policy) {
    if (window_ < 1) throw ParameterError("window must be >= 1");
    for (RowId id = 0; id < vocab_.size(); ++id) {
      auto parts = util::split_ws(vocab_.term(id));
      std::vector<std::string> toks(parts.begin(), parts.end());
      if (toks.empty()) continue;
      by_first_[toks.front()].push_back({id, std::move(toks)});
    }
  }

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  const CountingReport& report() const noexcept { return report_; }

  /// `line` names the sentence in error messages; defaults to its ordinal.
  void add(const TaggedSentence& sentence, std::optional<std::uint64_t> line = std::nullopt) {
    if (policy_ != ContextPolicy::general) {
      for (const auto& t : sentence) {
        if (!t.tag) {
          const std::string where = line ? "line " + std::to_string(*line)
                                         : "sentence " + std::to_string(report_.sentences + 1);
          throw InputError(where + " is not part-of-speech tagged (token '" + t.word + "'); the " +
                           std::string(to_string(policy_)) + " policy requires word_TAG tokens");
        }
      }
    }
    ++report_.sentences;
    report_.tokens += sentence.size();

    std::vector<bool> covered(sentence.size(), false);
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      auto it = by_first_.find(sentence[i].word);
      if (it == by_first_.end()) continue;
      for (const auto& cand : it->second) {
        const std::size_t len = cand.tokens.size();
        if (i + len > sentence.size()) continue;
        bool match = true;
        for (std::size_t j = 1; j < len && match; ++j) match = sentence[i + j].word == cand.tokens[j];
        if (!match) continue;
        ++report_.target_occurrences;
        std::fill(covered.begin() + static_cast<std::ptrdiff_t>(i),
                  covered.begin() + static_cast<std::ptrdiff_t>(i + len), true);
        const std::size_t lo = i >= window_ ? i - window_ : 0;
        for (std::size_t c = lo; c < i; ++c) count(cand.id, sentence[c], Side::left);
        const std::size_t hi = std::min(sentence.size(), i + len + window_);
        for (std::size_t c = i + len; c < hi; ++c) count(cand.id, sentence[c], Side::right);
      }
    }
    report_.oov_tokens += static_cast<std::uint64_t>(std::count(covered.begin(), covered.end(), false));
  }

  void merge(const CooccurrenceCounter& other) {
    if (!(other.vocab_ == vocab_) || other.window_ != window_ || other.policy_ != policy_) {
      throw ParameterError("cannot merge counters built with different vocabularies or settings");
    }
    for (const auto& [key, cnt] : other.counts_) counts_[key] += cnt;
    report_ += other.report_;
  }

  /// Columns are the distinct observed context keys in ascending order.
  CoMatrix finish() const {
    std::vector<ContextKey> cols;
    for (const auto& [key, cnt] : counts_) cols.push_back(key.second);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<Triplet<std::uint64_t>> triplets;
    triplets.reserve(counts_.size());
    for (const auto& [key, cnt] : counts_) {
      const auto col = static_cast<ColId>(std::lower_bound(cols.begin(), cols.end(), key.second) - cols.begin());
      triplets.push_back({key.first, col, cnt});
    }
    return CoMatrix(vocab_, std::move(cols), std::move(triplets));
  }

 private:
  struct Candidate {
    RowId id;
    std::vector<std::string> tokens;
  };

  void count(RowId target, const TaggedToken& ctx, Side side) {
    PosClass pos = PosClass::any;
    if (policy_ != ContextPolicy::general) {
      pos = pos_class_of(*ctx.tag);
      const PosClass wanted = policy_ == ContextPolicy::domain ? PosClass::noun : PosClass::verb;
      if (pos != wanted) {
        ++report_.filtered_contexts;
        return;
      }
    }
    ++counts_[{target, ContextKey{ctx.word, side, pos}}];
  }

  Vocabulary vocab_;
  std::size_t window_;
  ContextPolicy policy_;
  std::unordered_map<std::string, std::vector<Candidate>> by_first_;
  std::map<std::pair<RowId, ContextKey>, std::uint64_t> counts_;
  CountingReport report_;
};

inline constexpr std::size_t kDefaultWindow = 4;

/// Counts, for every vocabulary term occurrence, the context tokens within
/// `window` positions on either side of it.
template <std::ranges::input_range SentenceRange>
CoMatrix count_cooccurrences(const SentenceRange& corpus, const Vocabulary& vocab, std::size_t window,
                             ContextPolicy policy, CountingReport* report = nullptr) {
  CooccurrenceCounter counter(vocab, window, policy);
  for (const auto& sentence : corpus) counter.add(sentence);
  if (report) *report = counter.report();
  return counter.finish();
}

/// Streams a tagged corpus (one sentence per line) through a counter.
inline CoMatrix count_cooccurrences(std::istream& corpus, const Vocabulary& vocab, std::size_t window,
                                    ContextPolicy policy, CountingReport* report = nullptr) {
  CooccurrenceCounter counter(vocab, window, policy);
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(corpus, line)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    counter.add(parse_tagged_sentence(line), line_no);
  }
  if (report) *report = counter.report();
  return counter.finish();
}

}  // namespace lexent

#endif  // LEXENT_VSM_COOCCURRENCE_HPP
