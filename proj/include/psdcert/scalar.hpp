#pragma once

// Scalar backends.
//
// Two number types are supported by every algorithm in the library:
//
//   Rational  exact arbitrary-precision rational (GMP mpq_class). Signs are
//             decided exactly; this is the backend used for certification.
//   double    binary64 with a zero band |x| <= abs + rel * scale, where the
//             caller supplies the magnitude context `scale`.
//
// Algorithms are templated on the number type and route every sign decision
// through ScalarTraits<T>::sign.

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psdcert {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

enum class Backend { exact, floating };

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-9;

  double band(double scale) const { return abs + rel * std::fabs(scale); }
};

class QuadraticSurd;

template <class T>
struct ScalarTraits;

Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);
std::string format_double(double x);

template <>
struct ScalarTraits<Rational> {
  using endpoint_type = QuadraticSurd;
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::exact;

  static Sign sign(const Rational& x, double /*scale*/ = 0.0, const Tolerance& /*tol*/ = {}) {
    const int s = sgn(x);
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
  }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_rational(const Rational& x) { return x; }
  static Rational to_rational(const Rational& x) { return x; }
  static Rational parse(std::string_view text) { return parse_rational(text); }
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  using endpoint_type = double;
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::floating;

  static Sign sign(double x, double scale = 0.0, const Tolerance& tol = {}) {
    if (std::fabs(x) <= tol.band(scale)) return Sign::zero;
    return x < 0 ? Sign::negative : Sign::positive;
  }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& x) { return x.get_d(); }
  // Every finite double is a dyadic rational, so this conversion is exact.
  static Rational to_rational(double x) { return Rational(x); }
  static double parse(std::string_view text) { return parse_double(text); }
  static std::string to_string(double x) { return format_double(x); }
};

template <class T>
Sign sign_of(const T& x, double scale = 0.0, const Tolerance& tol = {}) {
  return ScalarTraits<T>::sign(x, scale, tol);
}

template <class T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

template <class T>
T parse_scalar(std::string_view text) {
  return ScalarTraits<T>::parse(text);
}

template <class T>
std::string scalar_to_string(const T& x) {
  return ScalarTraits<T>::to_string(x);
}

std::string_view backend_name(Backend b);

}  // namespace psdcert
