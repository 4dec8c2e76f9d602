#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "folab/rational.hpp"

namespace folab {

/// Dense matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  QMatrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Rational>> kernel;
};

/// Reduced row echelon form and a kernel basis, in exact arithmetic.
inline RrefResult rref_and_kernel(const QMatrix& m) {
  RrefResult res{m, 0, {}, {}};
  QMatrix& a = res.rref;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : res.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < res.pivots.size(); ++i) v[res.pivots[i]] = -a(i, free);
    res.kernel.push_back(std::move(v));
  }
  return res;
}

/// Sparse vector: (column, value) pairs sorted by column, no zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

/// a + c*b for sparse vectors.
inline SparseVector axpy(const SparseVector& a, const Rational& c, const SparseVector& b) {
  SparseVector r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Rational s = a[i].second + c * b[j].second;
      if (s != 0) r.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}

/// Incremental row-echelon basis of a subspace. Each stored row has its
/// smallest column as pivot, normalized to 1, and pivots are distinct.
class SparseEchelon {
 public:
  /// Reduces v until its leading column is not a pivot (or v is zero).
  SparseVector reduce_leading(SparseVector v) const {
    while (!v.empty()) {
      auto it = rows_.find(v.front().first);
      if (it == rows_.end()) break;
      Rational c = -v.front().second;
      v = axpy(v, c, it->second);
    }
    return v;
  }

  /// Full reduction: no column of the result is a pivot column.
  SparseVector reduce_full(SparseVector v) const {
    SparseVector out;
    while (!v.empty()) {
      auto it = rows_.find(v.front().first);
      if (it == rows_.end()) {
        out.push_back(v.front());
        v.erase(v.begin());
        continue;
      }
      Rational c = -v.front().second;
      v = axpy(v, c, it->second);
    }
    return out;
  }

  bool contains(const SparseVector& v) const { return reduce_leading(v).empty(); }

  /// Inserts v; returns false when v was already in the span.
  bool insert(SparseVector v) {
    v = reduce_leading(std::move(v));
    if (v.empty()) return false;
    Rational inv = 1 / v.front().second;
    for (auto& e : v) e.second *= inv;
    rows_.emplace(v.front().first, std::move(v));
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  const std::map<std::uint32_t, SparseVector>& rows() const noexcept { return rows_; }

 private:
  std::map<std::uint32_t, SparseVector> rows_;
};

}  // namespace folab
