#ifndef LEXENT_DATASETS_PAIRS_HPP
#define LEXENT_DATASETS_PAIRS_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/util/files.hpp"
#include "lexent/util/text.hpp"

namespace lexent {

struct LabeledPair {
  std::string a;
  std::string b;
  int label = 0;
  std::optional<std::string> relation_id;

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

using Dataset = std::vector<LabeledPair>;

struct ClassCounts {
  std::size_t zeros = 0;
  std::size_t ones = 0;
  std::size_t total() const noexcept { return zeros + ones; }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

inline ClassCounts class_counts(std::span<const LabeledPair> pairs) {
  ClassCounts c;
  for (const auto& p : pairs) (p.label == 1 ? c.ones : c.zeros) += 1;
  return c;
}

inline std::vector<int> labels_of(std::span<const LabeledPair> pairs) {
  std::vector<int> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.label);
  return out;
}

/// Pair TSV: a, b, label and an optional relation id. Blank and # lines skip.
inline Dataset parse_pairs(std::istream& in, const std::string& source = "<pairs>") {
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::is_blank_or_comment(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto f = util::split(line, '\t');
    if (f.size() < 3 || f.size() > 4) {
      throw ParseError(source, line_no, "expected 3 or 4 tab-separated fields, got " + std::to_string(f.size()));
    }
    LabeledPair p{std::string(util::trim(f[0])), std::string(util::trim(f[1])), 0, std::nullopt};
    if (p.a.empty() || p.b.empty()) throw ParseError(source, line_no, "empty term");
    const auto label = util::parse_int<int>(f[2]);
    if (!label || (*label != 0 && *label != 1)) {
      throw ParseError(source, line_no, "label must be 0 or 1, got '" + std::string(f[2]) + "'");
    }
    p.label = *label;
    if (f.size() == 4 && !util::trim(f[3]).empty()) p.relation_id = std::string(util::trim(f[3]));
    out.push_back(std::move(p));
  }
  return out;
}

inline Dataset load_pairs(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  return parse_pairs(in, path.string());
}

inline std::string format_pairs(std::span<const LabeledPair> pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += p.a + '\t' + p.b + '\t' + std::to_string(p.label);
    if (p.relation_id) out += '\t' + *p.relation_id;
    out += '\n';
  }
  return out;
}

inline void save_pairs(std::span<const LabeledPair> pairs, const std::filesystem::path& path) {
  util::write_file_atomic(path, format_pairs(pairs));
}

/// Expected class sizes of the two external datasets, checked when supplied.
struct KnownDatasetShape {
  std::string_view name;
  ClassCounts counts;
};

inline constexpr KnownDatasetShape kKdsz{"kdsz", {2704, 1068}};
inline constexpr KnownDatasetShape kBbds{"bbds", {1385, 1385}};

/// Returns an empty string when the counts match, otherwise a description.
inline std::string check_shape(std::span<const LabeledPair> pairs, const KnownDatasetShape& shape) {
  const auto c = class_counts(pairs);
  if (c == shape.counts) return {};
  std::ostringstream ss;
  ss << shape.name << ": expected " << shape.counts.total() << " pairs (" << shape.counts.ones << " ones, "
     << shape.counts.zeros << " zeros), found " << c.total() << " (" << c.ones << " ones, " << c.zeros << " zeros)";
  return ss.str();
}

}  // namespace lexent

#endif  // LEXENT_DATASETS_PAIRS_HPP
