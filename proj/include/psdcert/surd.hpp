#pragma once

#include <compare>
#include <string>

#include "psdcert/scalar.hpp"

namespace psdcert {

// Exact real number of the form  rational + coefficient * sqrt(radicand)
// with an integer radicand. Construction normalizes the radicand: square
// factors found by trial division are pulled into the coefficient and a
// perfect-square radicand is folded into the rational part. Comparisons never
// depend on that normal form being canonical; they are decided exactly.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  explicit QuadraticSurd(Rational value) : rational_(std::move(value)) {}
  // rational + coefficient * sqrt(radicand); radicand must be >= 0.
  QuadraticSurd(Rational rational, Rational coefficient, const Rational& radicand);

  const Rational& rational_part() const { return rational_; }
  const Rational& coefficient() const { return coefficient_; }
  const Integer& radicand() const { return radicand_; }
  bool is_rational() const { return sgn(coefficient_) == 0; }

  double to_double() const;
  int sign() const;

  // Largest rational with denominator `denom` that is <= value, and the
  // smallest that is >= value.
  Rational floor_at(const Integer& denom) const;
  Rational ceil_at(const Integer& denom) const;

  QuadraticSurd operator-() const;

  // "27/50 - 2/25*sqrt(19)", "24/25", "sqrt(2)", "-1/2*sqrt(3)".
  std::string to_string() const;

  friend int compare(const QuadraticSurd& x, const QuadraticSurd& y);
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return compare(x, y) == 0; }
  friend std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y) {
    const int c = compare(x, y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational rational_ = 0;
  Rational coefficient_ = 0;
  Integer radicand_ = 0;
};

// Exact floor of a quadratic surd.
Integer floor_of(const QuadraticSurd& x);

}  // namespace psdcert
