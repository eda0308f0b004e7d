#include <random>

#include <gtest/gtest.h>

#include "streamzero/quad_irr.hpp"
#include "streamzero/resultant.hpp"

using namespace streamzero;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

LaurentPoly random_poly(std::mt19937_64& rng, long max_deg) {
  std::uniform_int_distribution<long> deg(0, max_deg), coef(-9, 9);
  long d = deg(rng);
  LaurentPoly::Coeffs c;
  for (long e = 0; e <= d; ++e) c[e] = coef(rng);
  if (c[d] == 0) c[d] = 1;
  if (c[0] == 0) c[0] = -1;
  return LaurentPoly(std::move(c));
}

}  // namespace

TEST(Numeric, FloorAndFrac) {
  EXPECT_EQ(floor_div(Integer(-7), Integer(2)), -4);
  EXPECT_EQ(floor_mod(Integer(-7), Integer(2)), 1);
  EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(frac(Rational(7, 2)), Rational(1, 2));
  EXPECT_DOUBLE_EQ(frac(-0.25), 0.75);
}

TEST(Numeric, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(Numeric, SquareRoots) {
  EXPECT_EQ(isqrt(Integer(99)), 9);
  EXPECT_TRUE(is_square(Integer(144)));
  EXPECT_FALSE(is_square(Integer(12)));
  EXPECT_FALSE(is_square(Integer(-4)));
}

TEST(LaurentPoly, ParseForms) {
  LaurentPoly p = P("z^2-3z+1");
  EXPECT_EQ(p.coeff(2), 1);
  EXPECT_EQ(p.coeff(1), -3);
  EXPECT_EQ(p.coeff(0), 1);
  EXPECT_EQ(P("2z^(-1)+5"), (LaurentPoly{{-1, Integer(2)}, {0, Integer(5)}}));
  EXPECT_EQ(P("z^-1 - z"), (LaurentPoly{{-1, Integer(1)}, {1, Integer(-1)}}));
  EXPECT_EQ(P("3*z^2 + 4 z + 1"), P("3z^2+4z+1"));
  EXPECT_EQ(P("z+z-2z"), LaurentPoly());
}

TEST(LaurentPoly, ParseErrorsCarryPosition) {
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("z^"), ParseError);
  EXPECT_THROW(P("3z 2"), ParseError);
  try {
    P("z^2+*z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
  }
}

TEST(LaurentPoly, TextRoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    LaurentPoly p = random_poly(rng, 5).shifted(static_cast<long>(rng() % 7) - 3);
    EXPECT_EQ(parse_poly(p.to_string()), p) << p.to_string();
  }
  EXPECT_EQ(P("-z+z^-1").to_string(), "-z+z^-1");
}

TEST(LaurentPoly, ShapeQueries) {
  LaurentPoly p = P("5z^-2+z^-1+1");
  EXPECT_EQ(p.low(), -2);
  EXPECT_EQ(p.high(), 0);
  EXPECT_EQ(p.span(), 2);
  EXPECT_EQ(p.normalized(), P("5+z+z^2"));
  EXPECT_EQ(P("4z^2+6").content(), 2);
  EXPECT_EQ(primitive_part(P("-4z^2-6")), P("2z^2+3"));
}

TEST(LaurentPoly, RingLaws) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    LaurentPoly a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(LaurentPoly, GcdAndDivision) {
  EXPECT_EQ(poly_gcd(P("z^2-1"), P("z^2+2z+1")), P("z+1"));
  EXPECT_EQ(poly_gcd(P("z-2"), P("z-3")), P("1"));
  EXPECT_EQ(poly_gcd(P("z^3"), P("z-1")), P("1"));
  EXPECT_EQ(poly_gcd(P("2z^-1-4"), P("6-3z^-1")), P("2z-1"));
  auto q = poly_divide_exact(P("z^2-3z+2"), P("z-1"));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, P("z-2"));
  EXPECT_FALSE(poly_divide_exact(P("z^2+1"), P("z-1")).has_value());
  EXPECT_FALSE(poly_divide_exact(P("z+1"), P("2z+2")).has_value());
}

TEST(Resultant, FixedValues) {
  EXPECT_EQ(resultant(P("z-2"), P("z-3")).delta, 1);
  EXPECT_EQ(resultant(P("z^2-3z+1"), P("z^2-3z+1")).delta, 0);
  EXPECT_EQ(resultant(P("z^2-3z+1"), P("z-1")).delta, -1);
  EXPECT_EQ(resultant(P("z-1"), P("z+1")).delta, -2);
  EXPECT_THROW(resultant(P("z-1"), LaurentPoly()), ZeroPolynomial);
}

TEST(Resultant, MatrixLayout) {
  ResultantInfo r = resultant(P("z^2-3z+1"), P("z-1"));
  ASSERT_EQ(r.matrix.size(), 3u);
  // One row of P, then two rows of Q.
  EXPECT_EQ(r.matrix[0], (std::vector<Integer>{1, -3, 1}));
  EXPECT_EQ(r.matrix[1], (std::vector<Integer>{-1, 1, 0}));
  EXPECT_EQ(r.matrix[2], (std::vector<Integer>{0, -1, 1}));
}

TEST(Resultant, IgnoresMonomialShifts) {
  EXPECT_EQ(resultant(P("z^-1-2z^-2"), P("z-3")).delta, resultant(P("z-2"), P("z-3")).delta);
}

TEST(Bezout, IdentityHoldsExactly) {
  std::mt19937_64 rng(11);
  int coprime = 0;
  for (int t = 0; t < 300; ++t) {
    LaurentPoly a = random_poly(rng, 4), b = random_poly(rng, 4);
    if (a.span() == 0 && b.span() == 0) continue;
    Integer delta = resultant(a, b).delta;
    EXPECT_EQ(delta != 0, poly_gcd(a, b) == P("1"));
    if (delta == 0) {
      EXPECT_THROW(bezout(a, b), NotCoprime);
      continue;
    }
    ++coprime;
    BezoutResult r = bezout(a, b);
    EXPECT_EQ(r.a * a + r.b * b, LaurentPoly::constant(delta));
    EXPECT_LT(r.a.is_zero() ? -1 : r.a.span(), std::max(b.span(), 1L));
  }
  EXPECT_GT(coprime, 100);
}

TEST(Bezout, LaurentInputs) {
  LaurentPoly p = P("z^-1-3+z"), q = P("z^3-z^2");
  BezoutResult r = bezout(p, q);
  EXPECT_EQ(r.a * p + r.b * q, LaurentPoly::constant(r.delta));
  EXPECT_EQ(r.delta, resultant(p, q).delta);
}

TEST(QuadIrr, CanonicalForm) {
  QuadIrr x = parse_quad("(6+2*sqrt(20))/4");
  EXPECT_EQ(x, QuadIrr(3, 2, 5, 2));
  EXPECT_EQ(x.to_string(), "(3+2*sqrt(5))/2");
  EXPECT_EQ(QuadIrr::sqrt(Integer(9)), QuadIrr(3));
  EXPECT_EQ(parse_quad("1/sqrt(3)"), QuadIrr(0, 1, 3, 3));
}

TEST(QuadIrr, FieldArithmetic) {
  QuadIrr g = parse_quad("(1+sqrt(5))/2");
  EXPECT_EQ(g * g, g + QuadIrr(1));
  EXPECT_EQ(g * g.conj(), QuadIrr(-1));
  EXPECT_EQ(g.norm(), Rational(-1));
  EXPECT_EQ(g.trace(), Rational(1));
  EXPECT_EQ(QuadIrr(1) / g, g - QuadIrr(1));
  EXPECT_EQ(g.pow(5), parse_quad("(11+5*sqrt(5))/2"));
  EXPECT_EQ(g.floor(), 1);
  EXPECT_TRUE(g.conj() < QuadIrr(0));
  EXPECT_NEAR(g.to_double(), 1.6180339887498949, 1e-15);
}

TEST(QuadIrr, OrderingAgreesWithDoubles) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> c(-20, 20), d(2, 30);
  for (int t = 0; t < 300; ++t) {
    long den1 = c(rng), den2 = c(rng);
    if (den1 == 0 || den2 == 0) continue;
    long rad = d(rng);
    QuadIrr x(c(rng), c(rng), rad, den1), y(c(rng), c(rng), rad, den2);
    if (std::fabs(x.to_double() - y.to_double()) < 1e-9) continue;
    EXPECT_EQ(x < y, x.to_double() < y.to_double());
  }
}
