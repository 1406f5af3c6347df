#include <catch2/catch_amalgamated.hpp>

#include "psdcert/quadratic.hpp"
#include "support.hpp"

using namespace psdcert;
using namespace psdcert::testing;

namespace {

// The corner entry of x replaced by t.
SymMatrix<Rational> with_corner(SymMatrix<Rational> x, const Rational& t) {
  x.set(0, x.dim() - 1, t);
  return x;
}

QuadraticSurd surd(const char* p, const char* q, const char* d) { return QuadraticSurd(Q(p), Q(q), Q(d)); }

}  // namespace

TEST_CASE("corner quadratic coefficients", "[quadratic]") {
  const auto q2 = corner_quadratic(from_strings({{"3", "9"}, {"9", "5"}}));
  CHECK(q2.a == -1);
  CHECK(q2.b == 0);
  CHECK(q2.c == 15);

  const auto q3 = corner_quadratic(from_strings({{"2", "1", "7"}, {"1", "1", "1"}, {"7", "1", "2"}}));
  CHECK(q3.a == -1);
  CHECK(q3.b == 2);
  CHECK(q3.c == 0);

  for (const char* s : {"0", "0.3", "0.5", "0.96", "-1/7"}) {
    const Rational x1 = Q(s);
    const auto q = corner_quadratic(example3_y(x1, Rational(123)));
    CHECK(q.a == Q("-0.64"));
    CHECK(q.b == Q("-0.16") * x1 + Q("0.896"));
    CHECK(q.c == Q("-0.36") * x1 * x1 + Q("0.448") * x1 - Q("0.3136"));
    const auto qz = corner_quadratic(example3_z(x1, Rational(0)));
    CHECK(qz.a == Q("-0.64"));
    CHECK(qz.b == Q("0.2") * x1 + Q("0.468"));
    CHECK(qz.c == Q("-0.75") * x1 * x1 + Q("0.72") * x1 - Q("0.2104"));
  }
  CHECK_THROWS_AS(corner_quadratic(SymMatrix<Rational>::identity(1)), DimensionError);
}

TEST_CASE("corner quadratic reproduces the determinant", "[quadratic][property]") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 7));
    const auto x = random_mixed(rng, m);
    const auto q = corner_quadratic(x);
    CHECK(q(x(0, m - 1)) == det(x));
    const Rational t = frac(uniform_int(rng, -30, 30), uniform_int(rng, 1, 6));
    CHECK(q(t) == cofactor_det(with_corner(x, t)));
  }
}

TEST_CASE("discriminant identity", "[quadratic][property]") {
  CHECK(discriminant_identity_gap(SymMatrix<Rational>::identity(2)) == 0);
  Rng rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 7));
    const auto x = random_mixed(rng, m);
    CHECK(discriminant_identity_gap(x) == 0);
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    SymMatrix<double> x(6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i; j < 6; ++j) x.set(i, j, u(rng));
    const double disc = corner_quadratic(x).discriminant();
    CHECK(std::fabs(discriminant_identity_gap(x)) <= 1e-9 * std::max(1.0, std::fabs(disc)));
  }
}

TEST_CASE("superlevel intervals", "[quadratic]") {
  const auto open = quadratic_superlevel(CornerQuadratic<Rational>{-1, 0, 1}, true);
  CHECK(open.open_lo);
  CHECK(open.open_hi);
  CHECK(open.lo == QuadraticSurd(Rational(-1)));
  CHECK(open.hi == QuadraticSurd(Rational(1)));
  CHECK(quadratic_superlevel(CornerQuadratic<Rational>{-1, 2, -1}, true).empty);
  const auto point = quadratic_superlevel(CornerQuadratic<Rational>{-1, 2, -1}, false);
  CHECK(point.is_point());
  CHECK(point.contains(Rational(1)));
  CHECK(quadratic_superlevel(CornerQuadratic<Rational>{-1, 0, -1}, false).empty);
  CHECK_THROWS_AS(quadratic_superlevel(CornerQuadratic<Rational>{0, 1, 1}, true), std::logic_error);
  CHECK_THROWS_AS(quadratic_superlevel(CornerQuadratic<double>{1, 1, 1}, false), std::logic_error);

  const auto f = quadratic_superlevel(CornerQuadratic<double>{-1, 0.5, 0.5}, true);
  CHECK(f.lo == Catch::Approx(-0.5));
  CHECK(f.hi == Catch::Approx(1.0));

  const auto a = Interval<Rational>::closed(QuadraticSurd(Rational(0)), QuadraticSurd(Rational(2)));
  const auto b = Interval<Rational>::open(QuadraticSurd(Rational(1)), QuadraticSurd(Rational(3)));
  const auto c = a.intersect(b);
  CHECK(c.open_lo);
  CHECK_FALSE(c.open_hi);
  CHECK(c.to_string() == "(1, 2]");
  CHECK(a.intersect(Interval<Rational>::open(QuadraticSurd(Rational(2)), QuadraticSurd(Rational(3)))).empty);
}

TEST_CASE("PD corner intervals", "[quadratic]") {
  const auto i3 = pd_corner_interval(from_strings({{"1", "0.5", "0"}, {"0.5", "1", "0.5"}, {"0", "0.5", "1"}}));
  CHECK(i3.open_lo);
  CHECK(i3.open_hi);
  CHECK(i3.lo == QuadraticSurd(Q("-0.5")));
  CHECK(i3.hi == QuadraticSurd(Rational(1)));

  const auto i2 = pd_corner_interval(SymMatrix<Rational>::identity(2));
  CHECK(i2.to_string() == "(-1, 1)");

  // overlapping 3x3 blocks of the completion example's two 4x4 pieces
  // (rows 2..4 carry x1 at the corner)
  const auto yb = pd_corner_interval(submatrix(example3_y(Rational(0), Rational(0)), IndexSet{1, 2, 3}));
  CHECK(yb.to_string() == "(0, 24/25)");
  const auto zb = pd_corner_interval(submatrix(example3_z(Rational(0), Rational(0)), IndexSet{1, 2, 3}));
  CHECK(zb.lo == surd("27/50", "-2/25", "19"));
  CHECK(zb.hi == surd("27/50", "2/25", "19"));

  // the x2 interval for a fixed x1, against the closed form of its roots
  for (const char* s : {"0.1", "0.5", "0.9"}) {
    const Rational x1 = Q(s);
    const Rational g = -x1 * x1 + Q("0.96") * x1;
    const auto iy = pd_corner_interval(example3_y(x1, Rational(0)));
    const Rational centre = (Q("0.896") - Q("0.16") * x1) / Q("1.28");
    CHECK(iy.lo == QuadraticSurd(centre, Rational(-1) / Q("1.28"), Q("0.896") * g));
    CHECK(iy.hi == QuadraticSurd(centre, Rational(1) / Q("1.28"), Q("0.896") * g));
  }

  const auto bad = from_strings({{"1", "2", "0"}, {"2", "1", "0"}, {"0", "0", "1"}});
  CHECK_THROWS_AS(pd_corner_interval(bad), PreconditionError);
  CHECK_THROWS_WITH(pd_corner_interval(bad), Catch::Matchers::ContainsSubstring("X[1:2]"));
}

TEST_CASE("PSD corner intervals", "[quadratic]") {
  CHECK(psd_corner_interval(SymMatrix<Rational>::identity(2)).to_string() == "[-1, 1]");
  const auto z = psd_corner_interval(from_strings({{"1", "0", "5"}, {"0", "0", "0"}, {"5", "0", "1"}}));
  CHECK(z.to_string() == "[-1, 1]");

  // on the boundary x1 = 24/25 the x2 range collapses to one point
  const auto y = example3_y(Q("0.96"), Rational(0));
  const auto p = psd_corner_interval(y);
  REQUIRE(p.is_point());
  CHECK(p.lo == QuadraticSurd(Q("0.58")));
  CHECK(check_psd_classic(example3_y(Q("0.96"), Q("0.58"))).positive);

  CHECK_THROWS_AS(psd_corner_interval(from_strings({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}})),
                  PreconditionError);
}

TEST_CASE("corner interval membership matches the oracle", "[quadratic][property]") {
  Rng rng(33);
  int pd_cases = 0, psd_cases = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 6));
    const bool full = uniform_int(rng, 0, 1) == 1;
    const auto x = random_gram(rng, m, full ? m + 1 : static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m))));
    const auto lead = submatrix(x, IndexSet::range(0, m - 1));
    const auto trail = submatrix(x, IndexSet::range(1, m - 1));
    if (check_pd_classic(lead).positive && check_pd_classic(trail).positive) {
      ++pd_cases;
      const auto iv = pd_corner_interval(x);
      REQUIRE_FALSE(iv.empty);
      for (int s = 0; s < 8; ++s) {
        const Rational t = frac(uniform_int(rng, -400, 400), 20);
        CHECK(iv.contains(t) == check_pd_classic(with_corner(x, t)).positive);
      }
    }
    const auto iv = psd_corner_interval(x);
    ++psd_cases;
    REQUIRE_FALSE(iv.empty);
    for (int s = 0; s < 8; ++s) {
      const Rational t = frac(uniform_int(rng, -400, 400), 20);
      CHECK(iv.contains(t) == check_psd_classic(with_corner(x, t)).positive);
    }
    for (const auto& e : {iv.lo, iv.hi})
      if (e.is_rational()) CHECK(check_psd_classic(with_corner(x, e.rational_part())).positive);
  }
  CHECK(pd_cases > 100);
  CHECK(psd_cases == 600);
}

TEST_CASE("three PSD conditions imply PSD", "[quadratic][property]") {
  Rng rng(34);
  int hits = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 3, 6));
    auto x = random_gram(rng, m, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(m))));
    x.set(0, m - 1, Rational(x(0, m - 1) + uniform_int(rng, -2, 2)));
    const bool lead = check_psd_classic(submatrix(x, IndexSet::range(0, m - 1))).positive;
    const bool trail = check_psd_classic(submatrix(x, IndexSet::range(1, m - 1))).positive;
    const bool inner = check_pd_classic(submatrix(x, IndexSet::range(1, m - 2))).positive;
    if (!(lead && trail && inner && sgn(det(x)) >= 0)) continue;
    ++hits;
    CHECK(check_psd_classic(x).positive);
  }
  CHECK(hits > 200);
}

TEST_CASE("singular interior: zero determinant and proportional quadratics", "[quadratic][property]") {
  Rng rng(35);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 3, 7));
    const auto x = random_singular_interior(rng, m);
    REQUIRE(check_psd_classic(submatrix(x, IndexSet::range(0, m - 1))).positive);
    REQUIRE(check_psd_classic(submatrix(x, IndexSet::range(1, m - 1))).positive);
    REQUIRE(sgn(det(submatrix(x, IndexSet::range(1, m - 2)))) == 0);
    CHECK(det(x) == 0);
    const auto all = enumerate_inner_saturated(x);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const auto qi = corner_quadratic(submatrix(x, all[i].indices));
        const auto qj = corner_quadratic(submatrix(x, all[j].indices));
        const auto k = proportionality_ratio(qi, qj);
        REQUIRE(k);
        CHECK(sgn(*k) > 0);
      }
  }
}

TEST_CASE("proportionality ratio", "[quadratic]") {
  using Qd = CornerQuadratic<Rational>;
  CHECK(proportionality_ratio(Qd{-1, 0, 1}, Qd{-1, 0, 1}) == Rational(1));
  CHECK(proportionality_ratio(Qd{-2, 4, 0}, Qd{-1, 2, 0}) == Rational(2));
  CHECK_FALSE(proportionality_ratio(Qd{-1, 0, 1}, Qd{-1, 1, 1}));
  CHECK_FALSE(proportionality_ratio(Qd{1, 0, -1}, Qd{-1, 0, 1}));
  CHECK(proportionality_ratio(Qd{0, 0, 0}, Qd{0, 0, 0}) == Rational(1));
  CHECK(proportionality_ratio(CornerQuadratic<double>{-2, 4, 0}, CornerQuadratic<double>{-1, 2, 0}) == 2.0);
  CHECK_FALSE(proportionality_ratio(CornerQuadratic<double>{-1, 0, 1}, CornerQuadratic<double>{-1, 1, 1}));
}
