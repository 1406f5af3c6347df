#include "psdcert/surd.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace psdcert {

namespace {

constexpr auto small_primes = [] {
  std::array<unsigned, 168> primes{};
  std::size_t n = 0;
  for (unsigned p = 2; n < primes.size(); ++p) {
    bool prime = true;
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime) primes[n++] = p;
  }
  return primes;
}();

// Sign of p + q*sqrt(d), d >= 0.
int single_sign(const Rational& p, const Rational& q, const Integer& d) {
  const int sp = sgn(p);
  const int sq = sgn(d) == 0 ? 0 : sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const Rational lhs = p * p;
  const Rational rhs = q * q * Rational(d);
  const int c = cmp(lhs, rhs);
  if (c > 0) return sp;
  if (c < 0) return sq;
  return 0;
}

Integer floor_rational(const Rational& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

// floor(sqrt(u)) for rational u >= 0.
Integer floor_sqrt(const Rational& u) {
  Integer nm = u.get_num() * u.get_den();
  Integer s;
  mpz_sqrt(s.get_mpz_t(), nm.get_mpz_t());
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), s.get_mpz_t(), u.get_den_mpz_t());
  return f;
}

Integer floor_components(const Rational& p, const Rational& q, const Integer& d) {
  if (sgn(q) == 0 || sgn(d) == 0) return floor_rational(p);
  const Integer fl = floor_sqrt(q * q * Rational(d));
  Integer g = floor_rational(p) + (sgn(q) > 0 ? fl : Integer(-fl - 1));
  // g is within 2 of the answer; settle it exactly.
  while (single_sign(p - Rational(g), q, d) < 0) --g;
  while (single_sign(p - Rational(g + 1), q, d) >= 0) ++g;
  return g;
}

}  // namespace

QuadraticSurd::QuadraticSurd(Rational rational, Rational coefficient, const Rational& radicand)
    : rational_(std::move(rational)) {
  if (sgn(radicand) < 0) throw std::domain_error("negative radicand");
  if (sgn(coefficient) == 0 || sgn(radicand) == 0) return;
  // sqrt(n/m) = sqrt(n*m) / m
  Integer rad = radicand.get_num() * radicand.get_den();
  Rational coef = coefficient / Rational(radicand.get_den());
  Integer root = 1;
  for (unsigned p : small_primes) {
    const unsigned long pp = static_cast<unsigned long>(p) * p;
    if (mpz_cmp_ui(rad.get_mpz_t(), pp) < 0) break;
    while (mpz_divisible_ui_p(rad.get_mpz_t(), pp)) {
      mpz_divexact_ui(rad.get_mpz_t(), rad.get_mpz_t(), pp);
      root *= p;
    }
  }
  if (mpz_perfect_square_p(rad.get_mpz_t())) {
    Integer s;
    mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
    root *= s;
    rad = 1;
  }
  coef *= Rational(root);
  if (rad == 1) {
    rational_ += coef;
    return;
  }
  coefficient_ = coef;
  radicand_ = rad;
}

double QuadraticSurd::to_double() const {
  if (is_rational()) return rational_.get_d();
  return rational_.get_d() + coefficient_.get_d() * std::sqrt(radicand_.get_d());
}

int QuadraticSurd::sign() const { return single_sign(rational_, coefficient_, radicand_); }

QuadraticSurd QuadraticSurd::operator-() const {
  QuadraticSurd out;
  out.rational_ = -rational_;
  out.coefficient_ = -coefficient_;
  out.radicand_ = radicand_;
  return out;
}

Integer floor_of(const QuadraticSurd& x) {
  return floor_components(x.rational_part(), x.coefficient(), x.radicand());
}

Rational QuadraticSurd::floor_at(const Integer& denom) const {
  const Rational d(denom);
  Rational out(floor_components(rational_ * d, coefficient_ * d, radicand_), denom);
  out.canonicalize();
  return out;
}

Rational QuadraticSurd::ceil_at(const Integer& denom) const {
  return -(-*this).floor_at(denom);
}

std::string QuadraticSurd::to_string() const {
  if (is_rational()) return rational_.get_str();
  std::string root = "sqrt(" + radicand_.get_str() + ")";
  const Rational mag = abs(coefficient_);
  const std::string term = (mag == 1) ? root : mag.get_str() + "*" + root;
  if (sgn(rational_) == 0) return (sgn(coefficient_) < 0 ? "-" : "") + term;
  return rational_.get_str() + (sgn(coefficient_) < 0 ? " - " : " + ") + term;
}

int compare(const QuadraticSurd& x, const QuadraticSurd& y) {
  const Rational p = x.rational_ - y.rational_;
  if (y.is_rational()) return single_sign(p, x.coefficient_, x.radicand_);
  if (x.is_rational()) return single_sign(p, Rational(-y.coefficient_), y.radicand_);
  if (x.radicand_ == y.radicand_) return single_sign(p, Rational(x.coefficient_ - y.coefficient_), x.radicand_);
  // sign(A - B) with A = p + q1*sqrt(d1), B = q2*sqrt(d2)
  const int sa = single_sign(p, x.coefficient_, x.radicand_);
  const int sb = sgn(y.coefficient_);
  if (sa != sb) return sa > sb ? 1 : -1;
  if (sa == 0) return 0;
  // same sign: compare A^2 with B^2
  const Rational a2_rational = p * p + x.coefficient_ * x.coefficient_ * Rational(x.radicand_) -
                               y.coefficient_ * y.coefficient_ * Rational(y.radicand_);
  const Rational a2_coef = 2 * p * x.coefficient_;
  const int s = single_sign(a2_rational, a2_coef, x.radicand_);
  return sa > 0 ? s : -s;
}

}  // namespace psdcert
