#ifndef LEXENT_VSM_SPARSE_MATRIX_HPP
#define LEXENT_VSM_SPARSE_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/SparseCore>

#include "lexent/error.hpp"
#include "lexent/vsm/vocabulary.hpp"

namespace lexent {

using ColId = std::uint32_t;

template <typename Value>
struct SparseEntry {
  ColId col;
  Value value;
};

template <typename Value>
struct Triplet {
  RowId row;
  ColId col;
  Value value;
};

/// Immutable word-by-context matrix in compressed-row form. Only strictly
/// positive cells are stored; each row's entries are sorted by column id.
template <typename Value>
class SparseRowMatrix {
 public:
  using value_type = Value;

  SparseRowMatrix() : row_ptr_(1, 0) {}

  /// Duplicate (row, col) triplets are summed; non-positive results dropped.
  SparseRowMatrix(Vocabulary rows, std::vector<ContextKey> cols, std::vector<Triplet<Value>> triplets)
      : rows_(std::move(rows)), cols_(std::move(cols)) {
    for (const auto& t : triplets) {
      if (t.row >= rows_.size() || t.col >= cols_.size()) {
        throw InputError("matrix entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                         ") outside " + std::to_string(rows_.size()) + "x" + std::to_string(cols_.size()));
      }
    }
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
    row_ptr_.assign(rows_.size() + 1, 0);
    std::size_t i = 0;
    while (i < triplets.size()) {
      const RowId r = triplets[i].row;
      const ColId c = triplets[i].col;
      Value sum{};
      for (; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i) sum += triplets[i].value;
      if (sum > Value{}) {
        entries_.push_back({c, sum});
        ++row_ptr_[r + 1];
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) row_ptr_[r + 1] += row_ptr_[r];
  }

  const Vocabulary& row_terms() const noexcept { return rows_; }
  const std::vector<ContextKey>& col_keys() const noexcept { return cols_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_.size(); }
  std::size_t nnz() const noexcept { return entries_.size(); }

  double density() const noexcept {
    const double cells = static_cast<double>(rows()) * static_cast<double>(cols());
    return cells > 0 ? static_cast<double>(nnz()) / cells : 0.0;
  }

  std::span<const SparseEntry<Value>> row(RowId r) const {
    if (r >= rows()) throw InputError("row id " + std::to_string(r) + " out of range");
    return {entries_.data() + row_ptr_[r], entries_.data() + row_ptr_[r + 1]};
  }

  std::span<const SparseEntry<Value>> row(std::string_view term) const { return row(rows_.at(term)); }

  Value value(RowId r, ColId c) const {
    const auto entries = row(r);
    auto it = std::lower_bound(entries.begin(), entries.end(), c,
                               [](const SparseEntry<Value>& e, ColId col) { return e.col < col; });
    return (it != entries.end() && it->col == c) ? it->value : Value{};
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (RowId r = 0; r < rows(); ++r) {
      for (const auto& e : row(r)) fn(r, e.col, e.value);
    }
  }

  Eigen::SparseMatrix<double, Eigen::RowMajor> to_eigen() const {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(nnz());
    for_each([&](RowId r, ColId c, Value v) { t.emplace_back(r, c, static_cast<double>(v)); });
    Eigen::SparseMatrix<double, Eigen::RowMajor> m(static_cast<Eigen::Index>(rows()),
                                                   static_cast<Eigen::Index>(cols()));
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  friend bool operator==(const SparseRowMatrix& a, const SparseRowMatrix& b) {
    if (!(a.rows_ == b.rows_) || a.cols_ != b.cols_ || a.row_ptr_ != b.row_ptr_) return false;
    return std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
                      [](const auto& x, const auto& y) { return x.col == y.col && x.value == y.value; });
  }

 private:
  Vocabulary rows_;
  std::vector<ContextKey> cols_;
  std::vector<std::size_t> row_ptr_;
  std::vector<SparseEntry<Value>> entries_;
};

/// Raw co-occurrence counts.
using CoMatrix = SparseRowMatrix<std::uint64_t>;

/// Positive pointwise mutual information weights.
using PpmiMatrix = SparseRowMatrix<double>;

}  // namespace lexent

#endif  // LEXENT_VSM_SPARSE_MATRIX_HPP
