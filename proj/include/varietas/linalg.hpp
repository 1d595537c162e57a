#pragma once

// Exact rational row reduction.
//
// RationalMatrix/RrefResult are the plain dense value types. RowSpace is the
// engine underneath: it keeps a basis in reduced row-echelon form as sparse
// rows and accepts rows one at a time. Because every stored row is reduced,
// its nonzero entries sit only at its pivot and at non-pivot columns, so a
// row never holds more than 1 + (cols - rank) entries once the space fills
// up. Inserting always takes the leftmost surviving column as the new pivot,
// which keeps the basis equal to the unique RREF of everything inserted.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "varietas/rational.hpp"

namespace varietas {

struct SparseEntry {
  std::uint32_t col;
  Rational value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Nonzero entries sorted by column.
using SparseRow = std::vector<SparseEntry>;

/// Sorts by column, merges duplicate columns and drops zeros.
inline SparseRow normalize_row(SparseRow row) {
  std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  SparseRow out;
  out.reserve(row.size());
  for (auto& e : row) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().value += e.value;
      if (out.back().value.is_zero()) out.pop_back();
    } else if (!e.value.is_zero()) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

/// Scales so the first entry is 1.
inline SparseRow monic(SparseRow row) {
  if (row.empty() || row.front().value.is_one()) return row;
  const Rational inv = row.front().value.inverse();
  for (auto& e : row) e.value *= inv;
  return row;
}

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto v : r) entries_.emplace_back(v);
    }
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  [[nodiscard]] std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  [[nodiscard]] SparseRow sparse_row(std::size_t r) const {
    SparseRow out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero()) out.push_back({std::uint32_t(c), (*this)(r, c)});
    return out;
  }

  [[nodiscard]] RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct RrefResult {
  RationalMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  friend bool operator==(const RrefResult&, const RrefResult&) = default;
};

inline SparseRow to_sparse(std::span<const Rational> v) {
  SparseRow out;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (!v[c].is_zero()) out.push_back({std::uint32_t(c), v[c]});
  return out;
}

class RowSpace {
 public:
  static constexpr std::uint32_t npos = 0xffffffffu;

  RowSpace() = default;
  explicit RowSpace(std::size_t cols) : cols_(cols), pivot_row_(cols, npos) {}

  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

  /// Residue of `row` after eliminating every pivot column. Zero iff the row
  /// lies in the space. `row` must be normalized (sorted, no zeros).
  [[nodiscard]] SparseRow reduce(const SparseRow& row) const {
    check_cols(row);
    // Stored rows vanish on every other pivot column, so the original
    // coefficients are the elimination factors.
    SparseRow acc = row;
    for (const auto& e : row) {
      const auto pr = pivot_row_[e.col];
      if (pr != npos) acc = axpy(acc, -e.value, rows_[pr]);
    }
    return acc;
  }

  [[nodiscard]] bool contains(const SparseRow& row) const { return reduce(row).empty(); }

  /// Adds a row; returns true iff the rank grew.
  bool insert(const SparseRow& row) {
    SparseRow r = monic(reduce(row));
    if (r.empty()) return false;
    const std::uint32_t pivot = r.front().col;
    for (auto& existing : rows_) {
      auto it = std::lower_bound(existing.begin(), existing.end(), pivot,
                                 [](const SparseEntry& e, std::uint32_t c) { return e.col < c; });
      if (it == existing.end() || it->col != pivot) continue;
      const Rational f = -it->value;
      existing = axpy(existing, f, r);
    }
    pivot_row_[pivot] = std::uint32_t(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  /// Pivot columns in ascending order.
  [[nodiscard]] std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] != npos) out.push_back(c);
    return out;
  }

  /// Non-pivot columns in ascending order: coordinates of the quotient space.
  [[nodiscard]] std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] == npos) out.push_back(c);
    return out;
  }

  /// Basis rows ordered by pivot column (the RREF rows).
  [[nodiscard]] std::vector<SparseRow> rows() const {
    std::vector<SparseRow> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] != npos) out.push_back(rows_[pivot_row_[c]]);
    return out;
  }

  /// RREF row whose pivot is `col`; `col` must be a pivot.
  [[nodiscard]] const SparseRow& row_for_pivot(std::size_t col) const { return rows_.at(pivot_row_.at(col)); }

  [[nodiscard]] RrefResult to_rref(std::size_t min_rows = 0) const {
    RrefResult out;
    out.rank = rank();
    out.pivot_columns = pivot_columns();
    out.matrix = RationalMatrix(std::max(min_rows, rank()), cols_);
    std::size_t r = 0;
    for (auto c : out.pivot_columns) {
      for (const auto& e : rows_[pivot_row_[c]]) out.matrix(r, e.col) = e.value;
      ++r;
    }
    return out;
  }

  /// True iff every row of `other` lies in this space.
  [[nodiscard]] bool contains_space(const RowSpace& other) const {
    if (other.cols_ != cols_) throw std::invalid_argument("row space width mismatch");
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const SparseRow& r) { return contains(r); });
  }

  friend bool operator==(const RowSpace& a, const RowSpace& b) {
    return a.cols_ == b.cols_ && a.pivot_columns() == b.pivot_columns() && a.rows() == b.rows();
  }

 private:
  void check_cols(const SparseRow& row) const {
    if (!row.empty() && row.back().col >= cols_)
      throw std::invalid_argument("row has column " + std::to_string(row.back().col) + " but space has " +
                                  std::to_string(cols_) + " columns");
  }

  // a + f*b for sorted sparse rows.
  static SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
      if (j == b.end() || (i != a.end() && i->col < j->col)) {
        out.push_back(*i++);
      } else if (i == a.end() || j->col < i->col) {
        out.push_back({j->col, f * j->value});
        ++j;
      } else {
        Rational v = i->value + f * j->value;
        if (!v.is_zero()) out.push_back({i->col, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::size_t cols_ = 0;
  std::vector<std::uint32_t> pivot_row_;
  std::vector<SparseRow> rows_;
};

/// Reduced row-echelon form. Rows are fed to the reducer sparsest first
/// (then smallest total bit length, then lowest index); the result does not
/// depend on that order.
inline RrefResult rref(const RationalMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  std::vector<std::pair<std::size_t, std::size_t>> cost(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows[r] = m.sparse_row(r);
    std::size_t bits = 0;
    for (const auto& e : rows[r]) bits += e.value.bit_length();
    cost[r] = {rows[r].size(), bits};
  }
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
  RowSpace space(m.cols());
  for (auto r : order) space.insert(rows[r]);
  return space.to_rref(m.rows());
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

inline RowSpace to_row_space(const RrefResult& r) {
  RowSpace s(r.matrix.cols());
  for (std::size_t i = 0; i < r.rank; ++i) s.insert(r.matrix.sparse_row(i));
  return s;
}

inline bool rowspace_contains(const RrefResult& space, std::span<const Rational> v) {
  if (v.size() != space.matrix.cols())
    throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match " +
                                std::to_string(space.matrix.cols()) + " columns");
  // Eliminate along the stored pivots; RREF rows are zero at other pivots.
  std::vector<Rational> acc(v.begin(), v.end());
  for (std::size_t i = 0; i < space.rank; ++i) {
    const auto p = space.pivot_columns[i];
    if (acc[p].is_zero()) continue;
    const Rational f = acc[p];
    for (std::size_t c = 0; c < acc.size(); ++c)
      if (!space.matrix(i, c).is_zero()) acc[c] -= f * space.matrix(i, c);
  }
  return std::all_of(acc.begin(), acc.end(), [](const Rational& x) { return x.is_zero(); });
}

inline bool rowspace_equal(const RrefResult& a, const RrefResult& b) {
  if (a.matrix.cols() != b.matrix.cols())
    throw std::invalid_argument("row spaces have different widths: " + std::to_string(a.matrix.cols()) + " vs " +
                                std::to_string(b.matrix.cols()));
  if (a.rank != b.rank || a.pivot_columns != b.pivot_columns) return false;
  for (std::size_t i = 0; i < a.rank; ++i)
    for (std::size_t c = 0; c < a.matrix.cols(); ++c)
      if (a.matrix(i, c) != b.matrix(i, c)) return false;
  return true;
}

}  // namespace varietas
