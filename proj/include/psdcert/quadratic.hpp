#pragma once

// det(X) as a quadratic in the corner entry t = X(0, m-1):
//
//   det(X) = a t^2 + b t + c,   b^2 - 4ac = 4 det(X[0:m-2]) det(X[1:m-1])
//
// with a = -det(interior) (a = -1 for m = 2), b = 2 (-1)^(m+1) times the
// determinant of the interior bordered by the first row and last column, and
// c = det(X with the corner zeroed). When both overlapping blocks are PD
// (PSD), the set of corner values keeping X PD (PSD) is the open (closed)
// interval between the roots.

#include <optional>
#include <string>
#include <vector>

#include "psdcert/criterion.hpp"
#include "psdcert/determinant.hpp"
#include "psdcert/matrix.hpp"
#include "psdcert/surd.hpp"

namespace psdcert {

template <class T>
struct CornerQuadratic {
  T a;
  T b;
  T c;

  T operator()(const T& t) const { return T(T(a * t * t) + T(b * t) + c); }
  T discriminant() const { return T(T(b * b) - T(4 * a * c)); }
};

template <class T>
using Endpoint = typename ScalarTraits<T>::endpoint_type;

inline int compare_endpoints(const QuadraticSurd& x, const QuadraticSurd& y) { return compare(x, y); }
inline int compare_endpoints(double x, double y) { return x < y ? -1 : (x > y ? 1 : 0); }
inline QuadraticSurd endpoint_of(const Rational& x) { return QuadraticSurd(x); }
inline double endpoint_of(double x) { return x; }
inline double endpoint_to_double(const QuadraticSurd& x) { return x.to_double(); }
inline double endpoint_to_double(double x) { return x; }
inline std::string endpoint_to_string(const QuadraticSurd& x) { return x.to_string(); }
inline std::string endpoint_to_string(double x) { return format_double(x); }

// Bounded interval with per-end openness. Unbounded ends are not represented:
// every corner interval comes from a concave quadratic.
template <class T>
struct Interval {
  Endpoint<T> lo{};
  Endpoint<T> hi{};
  bool open_lo = false;
  bool open_hi = false;
  bool empty = false;

  static Interval make_empty() {
    Interval i;
    i.empty = true;
    return i;
  }
  static Interval closed(Endpoint<T> lo, Endpoint<T> hi) { return normalized({lo, hi, false, false, false}); }
  static Interval open(Endpoint<T> lo, Endpoint<T> hi) { return normalized({lo, hi, true, true, false}); }

  bool contains(const T& t) const {
    if (empty) return false;
    const auto e = endpoint_of(t);
    const int cl = compare_endpoints(e, lo);
    const int ch = compare_endpoints(e, hi);
    return (open_lo ? cl > 0 : cl >= 0) && (open_hi ? ch < 0 : ch <= 0);
  }

  bool is_point() const { return !empty && compare_endpoints(lo, hi) == 0; }

  Interval intersect(const Interval& o) const {
    if (empty || o.empty) return make_empty();
    Interval r;
    const int cl = compare_endpoints(lo, o.lo);
    if (cl > 0) {
      r.lo = lo;
      r.open_lo = open_lo;
    } else if (cl < 0) {
      r.lo = o.lo;
      r.open_lo = o.open_lo;
    } else {
      r.lo = lo;
      r.open_lo = open_lo || o.open_lo;
    }
    const int ch = compare_endpoints(hi, o.hi);
    if (ch < 0) {
      r.hi = hi;
      r.open_hi = open_hi;
    } else if (ch > 0) {
      r.hi = o.hi;
      r.open_hi = o.open_hi;
    } else {
      r.hi = hi;
      r.open_hi = open_hi || o.open_hi;
    }
    return normalized(r);
  }

  std::string to_string() const {
    if (empty) return "empty";
    return std::string(open_lo ? "(" : "[") + endpoint_to_string(lo) + ", " + endpoint_to_string(hi) +
           (open_hi ? ")" : "]");
  }

 private:
  static Interval normalized(Interval i) {
    if (i.empty) return i;
    const int c = compare_endpoints(i.lo, i.hi);
    if (c > 0 || (c == 0 && (i.open_lo || i.open_hi))) return make_empty();
    return i;
  }
};

template <class T>
CornerQuadratic<T> corner_quadratic(const SymMatrix<T>& x) {
  const std::size_t m = x.dim();
  if (m < 2) throw DimensionError("corner quadratic needs dimension >= 2");
  CornerQuadratic<T> q;
  const std::size_t n = m - 2;  // interior size
  if (m == 2) {
    q.a = T(-1);
  } else {
    Matrix<T> inner(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inner(i, j) = x(i + 1, j + 1);
    q.a = T(-det(inner));
  }
  // [ X(0, 1..m-2)        0          ]
  // [ X(1..m-2, 1..m-2)   X(1..m-2, m-1) ]
  Matrix<T> bordered(m - 1, m - 1);
  for (std::size_t j = 0; j < n; ++j) bordered(0, j) = x(0, j + 1);
  bordered(0, n) = T(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bordered(i + 1, j) = x(i + 1, j + 1);
    bordered(i + 1, n) = x(i + 1, m - 1);
  }
  const T bdet = det(bordered);
  q.b = (m % 2 == 1) ? T(2 * bdet) : T(-2 * bdet);  // 2 (-1)^(m+1)
  Matrix<T> zeroed = x.dense();
  zeroed(0, m - 1) = T(0);
  zeroed(m - 1, 0) = T(0);
  q.c = det(zeroed);
  return q;
}

// (b^2 - 4ac) - 4 det(X[0:m-2]) det(X[1:m-1]); identically zero.
template <class T>
T discriminant_identity_gap(const SymMatrix<T>& x) {
  const std::size_t m = x.dim();
  const auto q = corner_quadratic(x);
  const T lead = det(submatrix(x, IndexSet::range(0, m - 1)));
  const T trail = det(submatrix(x, IndexSet::range(1, m - 1)));
  return T(q.discriminant() - T(4 * lead * trail));
}

// Set of t where q(t) > 0 (strict) or q(t) >= 0, for q with a < 0. A zero
// leading coefficient is an internal invariant violation: callers only pass
// quadratics whose interior block is nonsingular.
template <class T>
Interval<T> quadratic_superlevel(const CornerQuadratic<T>& q, bool strict, const Tolerance& tol = {}) {
  if constexpr (ScalarTraits<T>::exact) {
    if (sgn(q.a) >= 0) throw std::logic_error("corner quadratic must have a negative leading coefficient");
    const Rational disc = q.discriminant();
    const int sd = sgn(disc);
    const Rational vertex = -q.b / (2 * q.a);
    if (sd < 0 || (sd == 0 && strict)) return Interval<T>::make_empty();
    if (sd == 0) return Interval<T>::closed(QuadraticSurd(vertex), QuadraticSurd(vertex));
    const Rational half_inv = 1 / (2 * q.a);  // negative
    QuadraticSurd lo(vertex, half_inv, disc);
    QuadraticSurd hi(vertex, Rational(-half_inv), disc);
    return strict ? Interval<T>::open(lo, hi) : Interval<T>::closed(lo, hi);
  } else {
    const double scale_a = std::max({std::fabs(q.a), std::fabs(q.b), std::fabs(q.c)});
    if (sign_of(q.a, scale_a, tol) != Sign::negative)
      throw std::logic_error("corner quadratic must have a negative leading coefficient");
    const double disc = q.b * q.b - 4 * q.a * q.c;
    const Sign sd = sign_of(disc, std::max(q.b * q.b, std::fabs(4 * q.a * q.c)), tol);
    const double vertex = -q.b / (2 * q.a);
    if (sd == Sign::negative || (sd == Sign::zero && strict)) return Interval<T>::make_empty();
    if (sd == Sign::zero) return Interval<T>::closed(vertex, vertex);
    const double root = std::sqrt(disc);
    // numerically stable pair of roots
    const double qq = -0.5 * (q.b + std::copysign(root, q.b));
    double r1 = qq / q.a;
    double r2 = qq != 0.0 ? q.c / qq : vertex;
    if (r1 > r2) std::swap(r1, r2);
    return strict ? Interval<T>::open(r1, r2) : Interval<T>::closed(r1, r2);
  }
}

namespace detail {

template <class T>
Interval<T> pd_corner_interval_unchecked(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  return quadratic_superlevel(corner_quadratic(x), true, tol);
}

template <class T>
Interval<T> psd_corner_interval_unchecked(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  const auto sat = canonical_inner_saturated(x, tol);
  return quadratic_superlevel(corner_quadratic(submatrix(x, sat.indices)), false, tol);
}

}  // namespace detail

// Open interval of corner values making X positive definite. Requires both
// overlapping blocks X[0:m-2] and X[1:m-1] to be PD; the interval is then
// never empty.
template <class T>
Interval<T> pd_corner_interval(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  const std::size_t m = x.dim();
  if (m < 2) throw DimensionError("corner interval needs dimension >= 2");
  if (!check_pd_classic(submatrix(x, IndexSet::range(0, m - 1)), tol).positive)
    throw PreconditionError("leading block X[1:" + std::to_string(m - 1) + "] is not positive definite");
  if (!check_pd_classic(submatrix(x, IndexSet::range(1, m - 1)), tol).positive)
    throw PreconditionError("trailing block X[2:" + std::to_string(m) + "] is not positive definite");
  return detail::pd_corner_interval_unchecked(x, tol);
}

// Closed interval of corner values making X positive semidefinite, from the
// corner quadratic of the canonical inner-saturated submatrix (whose corner is
// still X(0, m-1)). Requires both overlapping blocks PSD; a single point is
// possible when the discriminant vanishes.
template <class T>
Interval<T> psd_corner_interval(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  const std::size_t m = x.dim();
  if (m < 2) throw DimensionError("corner interval needs dimension >= 2");
  if (!check_psd_strong(submatrix(x, IndexSet::range(0, m - 1)), tol).positive)
    throw PreconditionError("leading block X[1:" + std::to_string(m - 1) + "] is not positive semidefinite");
  if (!check_psd_strong(submatrix(x, IndexSet::range(1, m - 1)), tol).positive)
    throw PreconditionError("trailing block X[2:" + std::to_string(m) + "] is not positive semidefinite");
  return detail::psd_corner_interval_unchecked(x, tol);
}

// k > 0 with q1 = k q2, if one exists. Two zero quadratics give k = 1.
template <class T>
std::optional<T> proportionality_ratio(const CornerQuadratic<T>& q1, const CornerQuadratic<T>& q2,
                                       const Tolerance& tol = {}) {
  const T* lhs[3] = {&q1.a, &q1.b, &q1.c};
  const T* rhs[3] = {&q2.a, &q2.b, &q2.c};
  if constexpr (ScalarTraits<T>::exact) {
    std::optional<T> k;
    for (int i = 0; i < 3; ++i)
      if (sgn(*rhs[i]) != 0) {
        k = T(*lhs[i] / *rhs[i]);
        break;
      }
    if (!k) {
      for (int i = 0; i < 3; ++i)
        if (sgn(*lhs[i]) != 0) return std::nullopt;
      return T(1);
    }
    if (sgn(*k) <= 0) return std::nullopt;
    for (int i = 0; i < 3; ++i)
      if (*lhs[i] != T(*k * *rhs[i])) return std::nullopt;
    return k;
  } else {
    const double scale = std::max({std::fabs(q1.a), std::fabs(q1.b), std::fabs(q1.c), std::fabs(q2.a),
                                   std::fabs(q2.b), std::fabs(q2.c)});
    std::optional<double> k;
    for (int i = 0; i < 3; ++i) {
      const bool r_zero = sign_of(*rhs[i], scale, tol) == Sign::zero;
      const bool l_zero = sign_of(*lhs[i], scale, tol) == Sign::zero;
      if (r_zero != l_zero) return std::nullopt;
      if (r_zero) continue;
      const double ki = *lhs[i] / *rhs[i];
      if (!k)
        k = ki;
      else if (std::fabs(ki - *k) > tol.band(std::fabs(*k)))
        return std::nullopt;
    }
    if (!k) return 1.0;
    if (*k <= 0) return std::nullopt;
    return k;
  }
}

}  // namespace psdcert
