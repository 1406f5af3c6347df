#pragma once

// Determinants, rank, and maximal linearly independent column sets.
//
// Exact backend: rows are cleared of denominators and the determinant is
// taken with integer Bareiss elimination (every division is exact), then the
// row scalings are divided back out. Float backend: LU with partial pivoting.

#include <cstddef>
#include <vector>

#include "psdcert/matrix.hpp"
#include "psdcert/scalar.hpp"

namespace psdcert {

namespace detail {

inline Rational bareiss_det(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  std::vector<Integer> w(n * n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = a(i, j).get_num() * (l / a(i, j).get_den());
    scale *= l;
  }
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return w[i * n + j]; };
  bool negate = false;
  Integer prev = 1;
  Integer tmp;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        tmp = at(i, j) * at(k, k);
        tmp -= at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  Rational d(at(n - 1, n - 1), scale);
  d.canonicalize();
  if (negate) d = -d;
  return d;
}

inline double lu_det(Matrix<double> a) {
  const std::size_t n = a.rows();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      a.swap_rows(p, k);
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

}  // namespace detail

// det of a 0x0 matrix is 1.
template <class T>
T det(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  if constexpr (ScalarTraits<T>::exact)
    return detail::bareiss_det(a);
  else
    return detail::lu_det(a);
}

template <class T>
T det(const SymMatrix<T>& x) {
  return det(x.dense());
}

// Greedy left-to-right column selection: column j is kept iff it is not in
// the span of the kept columns before it. These are the pivot columns of the
// row echelon form. Float mode treats a pivot as zero when
// |pivot| <= tol.abs + tol.rel * max|entry|.
template <class T>
std::vector<std::size_t> independent_columns(const Matrix<T>& b, const Tolerance& tol = {}) {
  Matrix<T> w = b;
  const double zero_band = tol.band(max_abs_entry(b));
  std::vector<std::size_t> kept;
  std::size_t row = 0;
  for (std::size_t c = 0; c < w.cols() && row < w.rows(); ++c) {
    std::size_t p = w.rows();
    if constexpr (ScalarTraits<T>::exact) {
      for (std::size_t i = row; i < w.rows(); ++i)
        if (sgn(w(i, c)) != 0) {
          p = i;
          break;
        }
    } else {
      double best = zero_band;
      for (std::size_t i = row; i < w.rows(); ++i)
        if (std::fabs(w(i, c)) > best) {
          best = std::fabs(w(i, c));
          p = i;
        }
    }
    if (p == w.rows()) continue;
    w.swap_rows(p, row);
    for (std::size_t i = row + 1; i < w.rows(); ++i) {
      if constexpr (ScalarTraits<T>::exact) {
        if (sgn(w(i, c)) == 0) continue;
      }
      const T f = w(i, c) / w(row, c);
      for (std::size_t j = c; j < w.cols(); ++j) w(i, j) -= T(f * w(row, j));
    }
    kept.push_back(c);
    ++row;
  }
  return kept;
}

// Deterministic maximal linearly independent column set of B (may be empty,
// e.g. for a zero block).
template <class T>
std::vector<std::size_t> max_independent_columns(const SymMatrix<T>& b, const Tolerance& tol = {}) {
  return independent_columns(b.dense(), tol);
}

template <class T>
std::size_t rank(const Matrix<T>& b, const Tolerance& tol = {}) {
  return independent_columns(b, tol).size();
}

template <class T>
std::size_t rank(const SymMatrix<T>& b, const Tolerance& tol = {}) {
  return rank(b.dense(), tol);
}

// Every maximal linearly independent column set, in lexicographic order.
template <class T>
std::vector<std::vector<std::size_t>> all_max_independent_columns(const SymMatrix<T>& b,
                                                                  const Tolerance& tol = {}) {
  const std::size_t n = b.dim();
  const std::size_t r = rank(b, tol);
  std::vector<std::vector<std::size_t>> out;
  if (r == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<std::size_t> pick(r);
  for (std::size_t k = 0; k < r; ++k) pick[k] = k;
  while (true) {
    if (rank(b.dense().select_columns(pick), tol) == r) out.push_back(pick);
    // next r-combination of 0..n-1 in lexicographic order
    std::size_t k = r;
    while (k > 0 && pick[k - 1] == n - r + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t l = k; l < r; ++l) pick[l] = pick[l - 1] + 1;
  }
  return out;
}

}  // namespace psdcert
