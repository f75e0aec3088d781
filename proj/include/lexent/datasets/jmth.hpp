#ifndef LEXENT_DATASETS_JMTH_HPP
#define LEXENT_DATASETS_JMTH_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lexent/datasets/pairs.hpp"
#include "lexent/datasets/taxonomy.hpp"
#include "lexent/error.hpp"
#include "lexent/util/files.hpp"
#include "lexent/util/text.hpp"

namespace lexent {

struct RatedPair {
  std::string a;
  std::string b;
  std::string subcategory_id;
  double rating = 0.0;

  friend bool operator==(const RatedPair&, const RatedPair&) = default;
};

/// Rated-pair TSV: a, b, subcategory id, rating.
inline std::vector<RatedPair> parse_rated_pairs(std::istream& in, const std::string& source = "<rated>") {
  std::vector<RatedPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::is_blank_or_comment(line)) continue;
    const auto f = util::split(util::trim(line), '\t');
    if (f.size() != 4) throw ParseError(source, line_no, "expected 4 tab-separated fields");
    const auto rating = util::parse_double(f[3]);
    if (!rating) throw ParseError(source, line_no, "bad rating '" + std::string(f[3]) + "'");
    out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]), *rating});
  }
  return out;
}

inline std::vector<RatedPair> load_rated_pairs(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  return parse_rated_pairs(in, path.string());
}

inline std::string format_rated_pairs(std::span<const RatedPair> pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += p.a + '\t' + p.b + '\t' + p.subcategory_id + '\t' + util::format_double(p.rating) + '\n';
  }
  return out;
}

/// Suffix marking the inverse relation of a doubled pair.
inline constexpr std::string_view kInverseSuffix = "-inv";

struct JmthReport {
  std::size_t input = 0;
  std::size_t after_clean = 0;
  std::size_t after_double = 0;
  std::size_t ones = 0;
  std::size_t zeros = 0;
  std::size_t final_size = 0;
  /// Subcategories with at most `clean_count` pairs; one pair was kept.
  std::vector<std::string> small_subcategories;
  /// Set when zeros were the minority and ones had to be removed.
  bool removed_ones = false;

  friend bool operator==(const JmthReport&, const JmthReport&) = default;
};

struct JmthOptions {
  std::size_t clean_count = 10;
  std::uint64_t seed = 0;
};

struct JmthResult {
  Dataset pairs;
  JmthReport report;
};

/// Indices of the pairs that survive cleaning, in input order.
inline std::vector<std::size_t> jmth_clean(std::span<const RatedPair> rated, std::size_t clean_count,
                                           std::vector<std::string>* small) {
  std::map<std::string, std::vector<std::size_t>> by_sub;
  for (std::size_t i = 0; i < rated.size(); ++i) by_sub[rated[i].subcategory_id].push_back(i);
  std::vector<char> keep(rated.size(), 1);
  for (auto& [sub, idx] : by_sub) {
    // Lowest rating first; among equal ratings the lexicographically later pair goes first.
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      const auto& p = rated[x];
      const auto& q = rated[y];
      if (p.rating != q.rating) return p.rating < q.rating;
      if (p.a != q.a) return p.a > q.a;
      if (p.b != q.b) return p.b > q.b;
      return x > y;
    });
    std::size_t remove = clean_count;
    if (idx.size() <= clean_count) {
      remove = idx.size() - 1;
      if (small) small->push_back(sub);
    }
    for (std::size_t i = 0; i < remove; ++i) keep[idx[i]] = 0;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rated.size(); ++i)
    if (keep[i]) out.push_back(i);
  return out;
}

/// Cleaned pairs labeled by their relation, followed by their inverses (b, a).
inline Dataset jmth_double(std::span<const RatedPair> rated, std::span<const std::size_t> kept,
                           const RelationTaxonomy& taxonomy) {
  Dataset doubled;
  doubled.reserve(2 * kept.size());
  for (std::size_t i : kept) {
    const auto& p = rated[i];
    doubled.push_back({p.a, p.b, mapping_label(p.subcategory_id, false, taxonomy), p.subcategory_id});
  }
  for (std::size_t i : kept) {
    const auto& p = rated[i];
    doubled.push_back({p.b, p.a, mapping_label(p.subcategory_id, true, taxonomy),
                       p.subcategory_id + std::string(kInverseSuffix)});
  }
  return doubled;
}

/// Clean, double, map and balance rated relation instances into an entailment dataset.
inline JmthResult jmth_transform(std::span<const RatedPair> rated, const RelationTaxonomy& taxonomy,
                                 const JmthOptions& opts = {}) {
  for (const auto& p : rated) taxonomy.at(p.subcategory_id);
  JmthResult res;
  auto& rep = res.report;
  rep.input = rated.size();

  const auto kept = jmth_clean(rated, opts.clean_count, &rep.small_subcategories);
  rep.after_clean = kept.size();

  Dataset doubled = jmth_double(rated, kept, taxonomy);
  rep.after_double = doubled.size();
  const auto counts = class_counts(doubled);
  rep.ones = counts.ones;
  rep.zeros = counts.zeros;

  int drop_label = 0;
  std::size_t excess = 0;
  if (counts.zeros >= counts.ones) {
    excess = counts.zeros - counts.ones;
  } else {
    drop_label = 1;
    excess = counts.ones - counts.zeros;
    rep.removed_ones = true;
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < doubled.size(); ++i)
    if (doubled[i].label == drop_label) candidates.push_back(i);
  std::mt19937_64 rng(opts.seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<char> drop(doubled.size(), 0);
  for (std::size_t i = 0; i < excess; ++i) drop[candidates[i]] = 1;
  for (std::size_t i = 0; i < doubled.size(); ++i)
    if (!drop[i]) res.pairs.push_back(std::move(doubled[i]));
  rep.final_size = res.pairs.size();
  return res;
}

inline std::string format_jmth_report(const JmthReport& r) {
  std::string out;
  out += "input=" + std::to_string(r.input) + '\n';
  out += "after_clean=" + std::to_string(r.after_clean) + '\n';
  out += "after_double=" + std::to_string(r.after_double) + '\n';
  out += "ones=" + std::to_string(r.ones) + '\n';
  out += "zeros=" + std::to_string(r.zeros) + '\n';
  out += "final=" + std::to_string(r.final_size) + '\n';
  out += "removed_ones=" + std::string(r.removed_ones ? "1" : "0") + '\n';
  out += "small_subcategories=";
  for (std::size_t i = 0; i < r.small_subcategories.size(); ++i) {
    if (i) out += ',';
    out += r.small_subcategories[i];
  }
  out += '\n';
  return out;
}

}  // namespace lexent

#endif  // LEXENT_DATASETS_JMTH_HPP
