#ifndef LEXENT_FEATURES_HPP
#define LEXENT_FEATURES_HPP

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "lexent/datasets/pairs.hpp"
#include "lexent/error.hpp"
#include "lexent/util/files.hpp"
#include "lexent/util/log.hpp"
#include "lexent/util/text.hpp"
#include "lexent/vsm/embedding.hpp"

namespace lexent {

enum class FeatureScheme : std::uint8_t { convecs, simdiffs };

inline std::string_view to_string(FeatureScheme s) { return s == FeatureScheme::convecs ? "convecs" : "simdiffs"; }

inline FeatureScheme parse_feature_scheme(std::string_view s) {
  if (s == "convecs") return FeatureScheme::convecs;
  if (s == "simdiffs") return FeatureScheme::simdiffs;
  throw InputError("unknown feature scheme '" + std::string(s) + "'");
}

/// Ordered reference words; feature positions follow this order.
class ReferenceSet {
 public:
  ReferenceSet() = default;
  explicit ReferenceSet(std::vector<std::string> words) : words_(std::move(words)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& w : words_) {
      if (!seen.insert(w).second) throw InputError("duplicate reference word '" + w + "'");
    }
  }

  const std::vector<std::string>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  /// Keeps the words present in every given embedding, warning about the rest.
  ReferenceSet restricted_to(std::initializer_list<const Embedding*> spaces) const {
    std::vector<std::string> kept;
    std::size_t dropped = 0;
    for (const auto& w : words_) {
      bool ok = true;
      for (const auto* e : spaces) ok = ok && e->contains(w);
      if (ok) kept.push_back(w);
      else ++dropped;
    }
    if (dropped > 0) {
      warn(std::to_string(dropped) + " of " + std::to_string(words_.size()) +
           " reference words are missing from an embedding and were dropped");
    }
    return ReferenceSet(std::move(kept));
  }

 private:
  std::vector<std::string> words_;
};

/// One word per line; blank and # lines skip.
inline ReferenceSet load_reference_set(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (util::is_blank_or_comment(line)) continue;
    words.emplace_back(util::trim(line));
  }
  return ReferenceSet(std::move(words));
}

struct PairFeatureVector {
  std::string a;
  std::string b;
  FeatureScheme scheme = FeatureScheme::convecs;
  Eigen::VectorXd values;
};

namespace detail {
template <typename Row>
Eigen::VectorXd unit(const Row& r) {
  Eigen::VectorXd v = r.transpose();
  const double n = v.norm();
  if (n > 0.0) v /= n;
  return v;
}
}  // namespace detail

/// Concatenation of the two unit-normalized rows; a zero row stays zero.
inline PairFeatureVector convecs_features(const Embedding& emb, std::string_view a, std::string_view b) {
  const auto k = emb.k();
  PairFeatureVector out{std::string(a), std::string(b), FeatureScheme::convecs, Eigen::VectorXd(2 * k)};
  out.values.head(k) = detail::unit(emb.row(a));
  out.values.tail(k) = detail::unit(emb.row(b));
  return out;
}

/// Caches unit-length reference rows of the domain and function spaces so
/// each pair costs two small matrix-vector products per space.
class SimDiffsFeaturizer {
 public:
  SimDiffsFeaturizer(const Embedding& dom, const Embedding& fun, const ReferenceSet& reference)
      : dom_(&dom), fun_(&fun), n_(static_cast<Eigen::Index>(reference.size())) {
    if (reference.empty()) throw InputError("the reference set is empty");
    dom_ref_.resize(n_, dom.k());
    fun_ref_.resize(n_, fun.k());
    for (Eigen::Index i = 0; i < n_; ++i) {
      const auto& w = reference.words()[static_cast<std::size_t>(i)];
      dom_ref_.row(i) = detail::unit(dom.row(w)).transpose();
      fun_ref_.row(i) = detail::unit(fun.row(w)).transpose();
    }
  }

  Eigen::Index dim() const noexcept { return 4 * n_; }

  bool covers(std::string_view term) const { return dom_->contains(term) && fun_->contains(term); }

  PairFeatureVector operator()(std::string_view a, std::string_view b) const {
    const Eigen::VectorXd da = cosines(dom_ref_, dom_->row(a));
    const Eigen::VectorXd db = cosines(dom_ref_, dom_->row(b));
    const Eigen::VectorXd fa = cosines(fun_ref_, fun_->row(a));
    const Eigen::VectorXd fb = cosines(fun_ref_, fun_->row(b));
    PairFeatureVector out{std::string(a), std::string(b), FeatureScheme::simdiffs, Eigen::VectorXd(4 * n_)};
    out.values.segment(0, n_) = da - db;
    out.values.segment(n_, n_) = fa - fb;
    out.values.segment(2 * n_, n_) = da - fb;
    out.values.segment(3 * n_, n_) = fa - db;
    return out;
  }

 private:
  template <typename Row>
  static Eigen::VectorXd cosines(const Eigen::MatrixXd& ref, const Row& row) {
    Eigen::VectorXd c = ref * detail::unit(row);
    return c.cwiseMax(-1.0).cwiseMin(1.0);
  }

  const Embedding* dom_;
  const Embedding* fun_;
  Eigen::Index n_;
  Eigen::MatrixXd dom_ref_;
  Eigen::MatrixXd fun_ref_;
};

/// [S1 | S2 | S3 | S4] of domain, function and cross-space cosine differences.
inline PairFeatureVector simdiffs_features(const Embedding& dom, const Embedding& fun, const ReferenceSet& reference,
                                           std::string_view a, std::string_view b) {
  return SimDiffsFeaturizer(dom, fun, reference)(a, b);
}

struct FeatureResources {
  const Embedding* general = nullptr;
  const Embedding* domain = nullptr;
  const Embedding* function = nullptr;
  const ReferenceSet* reference = nullptr;
};

struct SkippedPair {
  std::size_t index = 0;
  std::string a;
  std::string b;
  std::string reason;
};

struct BatchFeatures {
  FeatureScheme scheme = FeatureScheme::convecs;
  std::vector<PairFeatureVector> vectors;
  std::vector<int> labels;
  /// Input position of each featurized pair.
  std::vector<std::size_t> indices;
  std::vector<SkippedPair> skipped;
};

/// Featurizes every resolvable pair in input order and lists the rest.
inline BatchFeatures batch_features(std::span<const LabeledPair> pairs, FeatureScheme scheme,
                                    const FeatureResources& res) {
  BatchFeatures out;
  out.scheme = scheme;
  std::optional<SimDiffsFeaturizer> sim;
  if (scheme == FeatureScheme::convecs) {
    if (!res.general) throw InputError("ConVecs features need a general embedding");
  } else {
    if (!res.domain || !res.function || !res.reference) {
      throw InputError("SimDiffs features need domain and function embeddings and a reference set");
    }
    sim.emplace(*res.domain, *res.function, *res.reference);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    std::string missing;
    for (const auto* t : {&p.a, &p.b}) {
      const bool known = scheme == FeatureScheme::convecs ? res.general->contains(*t) : sim->covers(*t);
      if (!known) missing += (missing.empty() ? "" : ", ") + *t;
    }
    if (!missing.empty()) {
      out.skipped.push_back({i, p.a, p.b, "unknown term: " + missing});
      continue;
    }
    out.vectors.push_back(scheme == FeatureScheme::convecs ? convecs_features(*res.general, p.a, p.b)
                                                           : (*sim)(p.a, p.b));
    out.labels.push_back(p.label);
    out.indices.push_back(i);
  }
  return out;
}

inline std::string format_features(const BatchFeatures& f) {
  const Eigen::Index dim = f.vectors.empty() ? 0 : f.vectors.front().values.size();
  std::string out = "scheme=" + std::string(to_string(f.scheme)) + " dim=" + std::to_string(dim) + "\n";
  for (std::size_t i = 0; i < f.vectors.size(); ++i) {
    const auto& v = f.vectors[i];
    out += v.a + '\t' + v.b + '\t' + std::to_string(f.labels[i]) + '\t';
    for (Eigen::Index j = 0; j < v.values.size(); ++j) {
      if (j) out += ',';
      out += util::format_double(v.values(j));
    }
    out += '\n';
  }
  return out;
}

inline void save_features(const BatchFeatures& f, const std::filesystem::path& path) {
  util::write_file_atomic(path, format_features(f));
}

inline BatchFeatures parse_features(std::istream& in, const std::string& source = "<features>") {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  const auto scheme = util::header_field(line, "scheme");
  const auto dim_s = util::header_field(line, "dim");
  const auto dim = dim_s ? util::parse_int<long>(*dim_s) : std::nullopt;
  if (!scheme || !dim) throw ParseError(source, 1, "header must carry scheme= and dim=");
  BatchFeatures out;
  out.scheme = parse_feature_scheme(*scheme);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::is_blank_or_comment(line)) continue;
    const auto f = util::split(line, '\t');
    if (f.size() != 4) throw ParseError(source, line_no, "expected 4 tab-separated fields");
    const auto label = util::parse_int<int>(f[2]);
    if (!label || (*label != 0 && *label != 1)) throw ParseError(source, line_no, "label must be 0 or 1");
    const auto vals = util::split(f[3], ',');
    if (static_cast<long>(vals.size()) != *dim) throw ParseError(source, line_no, "vector length differs from dim");
    PairFeatureVector v{std::string(f[0]), std::string(f[1]), out.scheme, Eigen::VectorXd(*dim)};
    for (long j = 0; j < *dim; ++j) {
      const auto x = util::parse_double(vals[static_cast<std::size_t>(j)]);
      if (!x) throw ParseError(source, line_no, "bad feature value");
      v.values(j) = *x;
    }
    out.indices.push_back(out.vectors.size());
    out.vectors.push_back(std::move(v));
    out.labels.push_back(*label);
  }
  return out;
}

inline BatchFeatures load_features(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  return parse_features(in, path.string());
}

/// Row-stacked feature values, one row per featurized pair.
inline Eigen::MatrixXd feature_matrix(const BatchFeatures& f) {
  if (f.vectors.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(f.vectors.size()), f.vectors.front().values.size());
  for (std::size_t i = 0; i < f.vectors.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = f.vectors[i].values;
  return m;
}

}  // namespace lexent

#endif  // LEXENT_FEATURES_HPP
