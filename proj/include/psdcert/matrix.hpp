#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "psdcert/errors.hpp"
#include "psdcert/scalar.hpp"

namespace psdcert {

// Dense row-major matrix. Used for the non-symmetric bordered matrices that
// appear in the corner-quadratic coefficients and as elimination workspace.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  // Columns `cols` of this matrix, all rows.
  Matrix select_columns(std::span<const std::size_t> cols) const {
    Matrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Strictly increasing list of 0-based indices. Printed 1-based.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw DimensionError("index set must be nonempty");
    for (std::size_t k = 1; k < indices_.size(); ++k)
      if (indices_[k] <= indices_[k - 1]) throw DimensionError("index set must be strictly increasing");
  }
  IndexSet(std::initializer_list<std::size_t> indices) : IndexSet(std::vector<std::size_t>(indices)) {}

  // First `count` indices starting at `first`.
  static IndexSet range(std::size_t first, std::size_t count) {
    std::vector<std::size_t> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = first + k;
    return IndexSet(std::move(v));
  }

  std::size_t size() const { return indices_.size(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t front() const { return indices_.front(); }
  std::size_t back() const { return indices_.back(); }
  bool contains(std::size_t i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

  void check_within(std::size_t m) const {
    if (indices_.empty() || indices_.back() >= m)
      throw DimensionError("index " + std::to_string(indices_.empty() ? 0 : indices_.back() + 1) +
                           " out of range for dimension " + std::to_string(m));
  }

  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> v(indices_);
    for (auto& i : v) ++i;
    return v;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(indices_[k] + 1);
    }
    return s + "}";
  }

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

// Contiguous index range [first, last], 0-based, inclusive.
struct ConsecutiveRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
  IndexSet indices() const { return IndexSet::range(first, size()); }
  friend auto operator<=>(const ConsecutiveRange&, const ConsecutiveRange&) = default;
};

// All m(m+1)/2 consecutive ranges ordered by (length, start).
inline std::vector<ConsecutiveRange> consecutive_ranges(std::size_t m) {
  std::vector<ConsecutiveRange> out;
  out.reserve(m * (m + 1) / 2);
  for (std::size_t len = 1; len <= m; ++len)
    for (std::size_t a = 0; a + len <= m; ++a) out.push_back({a, a + len - 1});
  return out;
}

template <class T>
double max_abs_entry(const Matrix<T>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s = std::max(s, std::fabs(to_double(a(i, j))));
  return s;
}

// Symmetric dense matrix. Every mutation writes both (i,j) and (j,i).
template <class T>
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t m) : a_(m, m) {
    if (m == 0) throw DimensionError("symmetric matrix dimension must be at least 1");
  }

  static SymMatrix identity(std::size_t m) {
    SymMatrix x(m);
    for (std::size_t i = 0; i < m; ++i) x.a_(i, i) = T(1);
    return x;
  }

  // Validates squareness and symmetry: exact equality for the exact backend,
  // |x_ij - x_ji| <= tol.band(max|entry|) for floats. The upper triangle wins.
  static SymMatrix from_rows(const std::vector<std::vector<T>>& rows, const Tolerance& tol = {}) {
    const std::size_t m = rows.size();
    SymMatrix x(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].size() != m)
        throw DimensionError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(m));
      for (std::size_t j = 0; j < m; ++j) x.a_(i, j) = rows[i][j];
    }
    const double scale = max_abs_entry(x.a_);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const T diff = x.a_(i, j) - x.a_(j, i);
        if (sign_of(diff, scale, tol) != Sign::zero)
          throw SymmetryError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
        x.a_(j, i) = x.a_(i, j);
      }
    return x;
  }

  std::size_t dim() const { return a_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }

  void set(std::size_t i, std::size_t j, const T& v) {
    if (i >= dim() || j >= dim()) throw DimensionError("entry index out of range");
    a_(i, j) = v;
    a_(j, i) = v;
  }

  const Matrix<T>& dense() const { return a_; }

  // Symmetric re-indexing: result(k,l) = X(order[k], order[l]). `order` may be
  // any injective sequence, which covers principal submatrices and symmetric
  // permutations P X P^T.
  SymMatrix reindexed(std::span<const std::size_t> order) const {
    if (order.empty()) throw DimensionError("empty index selection");
    SymMatrix out(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (order[k] >= dim()) throw DimensionError("index " + std::to_string(order[k] + 1) + " out of range");
      for (std::size_t l = 0; l < order.size(); ++l) out.a_(k, l) = a_(order[k], order[l]);
    }
    return out;
  }

  SymMatrix scaled(const T& c) const {
    SymMatrix out(*this);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) out.a_(i, j) = T(c * a_(i, j));
    return out;
  }

  double max_abs() const { return max_abs_entry(a_); }

  std::vector<std::vector<T>> rows() const {
    std::vector<std::vector<T>> r(dim(), std::vector<T>(dim()));
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) r[i][j] = a_(i, j);
    return r;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix<T> a_;
};

template <class T>
SymMatrix<T> submatrix(const SymMatrix<T>& x, const IndexSet& idx) {
  idx.check_within(x.dim());
  return x.reindexed(idx.indices());
}

template <class T>
SymMatrix<T> submatrix(const SymMatrix<T>& x, const ConsecutiveRange& r) {
  return submatrix(x, r.indices());
}

template <class To, class From>
SymMatrix<To> convert_matrix(const SymMatrix<From>& x) {
  SymMatrix<To> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = i; j < x.dim(); ++j) {
      if constexpr (std::is_same_v<To, From>)
        out.set(i, j, x(i, j));
      else if constexpr (std::is_same_v<To, double>)
        out.set(i, j, to_double(x(i, j)));
      else
        out.set(i, j, ScalarTraits<From>::to_rational(x(i, j)));
    }
  return out;
}

}  // namespace psdcert
