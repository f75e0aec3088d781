#ifndef LEXENT_VSM_IO_HPP
#define LEXENT_VSM_IO_HPP

#include <filesystem>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/util/files.hpp"
#include "lexent/util/text.hpp"
#include "lexent/vsm/embedding.hpp"
#include "lexent/vsm/sparse_matrix.hpp"
#include "lexent/vsm/vocabulary.hpp"

// Text formats:
//   matrix      header "rows=<n> cols=<m> kind=<counts|ppmi> log=e", then
//               "row<TAB>col<TAB>value" in row-major order. Row terms and
//               column keys live in sidecar files <path>.rows / <path>.cols.
//   embedding   header "k=<k> p=<p> space=<general|domain|function>", then
//               "term<TAB>v1<TAB>...<TAB>vk" with 17 significant digits.
//   lists       one entry per line; context keys as token#side#pos.
namespace lexent::io {

inline std::filesystem::path rows_path(const std::filesystem::path& matrix) {
  auto p = matrix;
  p += ".rows";
  return p;
}

inline std::filesystem::path cols_path(const std::filesystem::path& matrix) {
  auto p = matrix;
  p += ".cols";
  return p;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (util::trim(line).empty()) continue;
    out.push_back(line);
  }
  return out;
}

inline Vocabulary load_vocabulary(const std::filesystem::path& path) { return Vocabulary(read_lines(path)); }

inline void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::string out;
  for (const auto& t : vocab.terms()) out += t + '\n';
  util::write_file_atomic(path, out);
}

inline std::vector<ContextKey> load_context_keys(const std::filesystem::path& path) {
  std::vector<ContextKey> keys;
  for (const auto& line : read_lines(path)) keys.push_back(ContextKey::parse(line));
  return keys;
}

inline void save_context_keys(const std::vector<ContextKey>& keys, const std::filesystem::path& path) {
  std::string out;
  for (const auto& k : keys) out += k.serialize() + '\n';
  util::write_file_atomic(path, out);
}

template <typename Value>
constexpr std::string_view matrix_kind() {
  return std::is_integral_v<Value> ? "counts" : "ppmi";
}

template <typename Value>
std::string format_matrix(const SparseRowMatrix<Value>& m) {
  std::ostringstream out;
  out << "rows=" << m.rows() << " cols=" << m.cols() << " kind=" << matrix_kind<Value>() << " log=e\n";
  m.for_each([&](RowId r, ColId c, Value v) {
    out << r << '\t' << c << '\t';
    if constexpr (std::is_integral_v<Value>) out << v;
    else out << util::format_double(v);
    out << '\n';
  });
  return out.str();
}

template <typename Value>
void save_matrix(const SparseRowMatrix<Value>& m, const std::filesystem::path& path) {
  save_vocabulary(m.row_terms(), rows_path(path));
  save_context_keys(m.col_keys(), cols_path(path));
  util::write_file_atomic(path, format_matrix(m));
}

template <typename Value>
SparseRowMatrix<Value> load_matrix(const std::filesystem::path& path) {
  Vocabulary rows = load_vocabulary(rows_path(path));
  std::vector<ContextKey> cols = load_context_keys(cols_path(path));
  auto in = util::open_input(path);
  const std::string src = path.string();
  std::string line;
  if (!std::getline(in, line)) throw ParseError(src, 1, "missing header");
  const auto nrows = util::header_field(line, "rows");
  const auto ncols = util::header_field(line, "cols");
  const auto kind = util::header_field(line, "kind");
  if (!nrows || !ncols || !kind) throw ParseError(src, 1, "header must carry rows=, cols= and kind=");
  if (*kind != matrix_kind<Value>()) {
    throw ParseError(src, 1, "expected kind=" + std::string(matrix_kind<Value>()) + ", found kind=" + *kind);
  }
  if (const auto base = util::header_field(line, "log"); base && *base != "e") {
    throw ParseError(src, 1, "unsupported logarithm base '" + *base + "'");
  }
  if (util::parse_int<std::size_t>(*nrows) != rows.size() || util::parse_int<std::size_t>(*ncols) != cols.size()) {
    throw ParseError(src, 1, "header dimensions disagree with the .rows/.cols sidecar files");
  }
  std::vector<Triplet<Value>> triplets;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    const auto f = util::split(line, '\t');
    if (f.size() != 3) throw ParseError(src, line_no, "expected row<TAB>col<TAB>value");
    const auto r = util::parse_int<RowId>(f[0]);
    const auto c = util::parse_int<ColId>(f[1]);
    if (!r || !c) throw ParseError(src, line_no, "bad row or column index");
    Value v{};
    if constexpr (std::is_integral_v<Value>) {
      const auto parsed = util::parse_int<Value>(f[2]);
      if (!parsed) throw ParseError(src, line_no, "bad count");
      v = *parsed;
    } else {
      const auto parsed = util::parse_double(f[2]);
      if (!parsed || !(*parsed > 0.0)) throw ParseError(src, line_no, "weights must be positive reals");
      v = *parsed;
    }
    if (*r >= rows.size() || *c >= cols.size()) throw ParseError(src, line_no, "index outside header dimensions");
    triplets.push_back({*r, *c, v});
  }
  return SparseRowMatrix<Value>(std::move(rows), std::move(cols), std::move(triplets));
}

inline std::string format_embedding(const Embedding& emb) {
  std::ostringstream out;
  out << "k=" << emb.k() << " p=" << util::format_double(emb.p()) << " space=" << to_string(emb.space()) << '\n';
  for (RowId r = 0; r < emb.rows().size(); ++r) {
    out << emb.rows().term(r);
    for (Eigen::Index j = 0; j < emb.k(); ++j) out << '\t' << util::format_double(emb.vectors()(r, j));
    out << '\n';
  }
  return out.str();
}

inline void save_embedding(const Embedding& emb, const std::filesystem::path& path) {
  util::write_file_atomic(path, format_embedding(emb));
}

inline Embedding load_embedding(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  const std::string src = path.string();
  std::string line;
  if (!std::getline(in, line)) throw ParseError(src, 1, "missing header");
  const auto k_text = util::header_field(line, "k");
  const auto p_text = util::header_field(line, "p");
  const auto space_text = util::header_field(line, "space");
  if (!k_text || !p_text || !space_text) throw ParseError(src, 1, "header must carry k=, p= and space=");
  const auto k = util::parse_int<Eigen::Index>(*k_text);
  const auto p = util::parse_double(*p_text);
  if (!k || *k < 1 || !p) throw ParseError(src, 1, "bad k or p");
  std::vector<std::string> terms;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (util::trim(line).empty()) continue;
    const auto f = util::split(line, '\t');
    if (static_cast<Eigen::Index>(f.size()) != *k + 1) {
      throw ParseError(src, line_no, "expected term followed by " + std::to_string(*k) + " values");
    }
    terms.emplace_back(f[0]);
    for (std::size_t j = 1; j < f.size(); ++j) {
      const auto v = util::parse_double(f[j]);
      if (!v) throw ParseError(src, line_no, "bad value '" + std::string(f[j]) + "'");
      values.push_back(*v);
    }
  }
  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(terms.size()), *k);
  for (Eigen::Index r = 0; r < vectors.rows(); ++r)
    for (Eigen::Index j = 0; j < *k; ++j) vectors(r, j) = values[static_cast<std::size_t>(r * *k + j)];
  return Embedding(parse_space_kind(*space_text), Vocabulary(std::move(terms)), std::move(vectors), *p);
}

}  // namespace lexent::io

#endif  // LEXENT_VSM_IO_HPP
