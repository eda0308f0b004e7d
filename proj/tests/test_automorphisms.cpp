#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "streamzero/automorphisms.hpp"
#include "streamzero/structure.hpp"

using namespace streamzero;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

const LaurentPoly kGolden = parse_poly("z^2-3z+1");

}  // namespace

TEST(Saut, CompanionCommutesWithItself) {
  IntMatrix m = companion_matrix(kGolden);
  EXPECT_EQ(m, (IntMatrix{{0, 1}, {-1, 3}}));
  EXPECT_TRUE(is_saut(m, kGolden));
  EXPECT_TRUE(is_saut(IntMatrix::identity(2), kGolden));
  EXPECT_FALSE(is_saut(IntMatrix{{1, 1}, {0, 1}}, kGolden));
  // Commutes but is not unimodular.
  EXPECT_FALSE(is_saut(IntMatrix{{2, 0}, {0, 2}}, kGolden));
}

TEST(Saut, SymbolicImagesOfTheGenerator) {
  SautReport r = saut_group(kGolden);
  ASSERT_TRUE(r.cls.generator.has_value());
  auto x = symbolic_orbit(kGolden, 3);
  EXPECT_EQ(x[2].to_string(), "-x0+3x1");
  auto y = apply_automorphism_values(*r.cls.generator, kGolden, x);
  ASSERT_EQ(y.size(), 3u);
  EXPECT_EQ(y[0].to_string(), "-x0+x1");
  EXPECT_EQ(y[1].to_string(), "-x0+2x1");
  EXPECT_EQ(y[2].to_string(), "-2x0+5x1");
}

TEST(Saut, ActionIsAHomomorphismThatCommutesWithTheShift) {
  std::mt19937_64 rng(21);
  SautReport r = saut_group(kGolden);
  const IntMatrix& g = *r.cls.generator;
  for (int t = 0; t < 20; ++t) {
    TorusSeq x = random_member(kGolden, rng, 0, 12, 17);
    TorusSeq y = random_member(kGolden, rng, 0, 12, 17);
    TorusSeq sum{0, {}, false};
    for (std::size_t i = 0; i < x.values.size(); ++i) sum.values.push_back(frac(x.values[i] + y.values[i]));
    TorusSeq gx = apply_automorphism(g, kGolden, x), gy = apply_automorphism(g, kGolden, y);
    TorusSeq gs = apply_automorphism(g, kGolden, sum);
    EXPECT_TRUE(is_member(kGolden, gx));
    for (long n = gs.start; n <= gs.end(); ++n) EXPECT_EQ(gs.at(n), frac(gx.at(n) + gy.at(n)));
    TorusSeq gshift = apply_automorphism(g, kGolden, shift(x, 1));
    TorusSeq shiftg = shift(gx, 1);
    for (long n = std::max(gshift.start, shiftg.start); n <= std::min(gshift.end(), shiftg.end()); ++n)
      EXPECT_EQ(gshift.at(n), shiftg.at(n));
  }
}

TEST(Saut, NonCommutingMatrixIsRejectedOnOrbits) {
  TorusSeq x = orbit<Rational>(kGolden, {Rational(1, 5), Rational(2, 5)}, 6, 0);
  EXPECT_THROW(apply_automorphism_values(IntMatrix{{1, 1}, {0, 1}}, kGolden, x.values), InconsistentWindow);
  TorusSeq junk{0, {Rational(1, 3), Rational(1, 5), Rational(1, 7)}, false};
  EXPECT_THROW(apply_automorphism(companion_matrix(kGolden), kGolden, junk), InconsistentWindow);
}

TEST(Saut, PeriodicOrbitsStayPeriodic) {
  auto o = periodic_orbit(kGolden, {Rational(1, 7), Rational(4, 7)});
  ASSERT_TRUE(o.has_value());
  TorusSeq y = apply_automorphism(*saut_group(kGolden).cls.generator, kGolden, *o);
  EXPECT_TRUE(y.periodic);
  EXPECT_TRUE(is_member(kGolden, y.window(-10, 10)));
}

TEST(Saut, GoldenGroup) {
  SautReport r = saut_group(kGolden);
  EXPECT_EQ(r.cls.kind, SautKind::infinite_cyclic);
  EXPECT_EQ(*r.cls.generator, (IntMatrix{{-1, 1}, {-1, 2}}));
  EXPECT_EQ(*r.cf_generator, (IntMatrix{{2, -1}, {1, -1}}));
  EXPECT_EQ(r.discriminant, 5);
  EXPECT_EQ(r.cf->to_string(), "[2;(1)]");
  EXPECT_TRUE(saut_generator_minimal(kGolden, *r.cls.generator));
}

TEST(Saut, OtherClasses) {
  SautReport a = saut_group(P("-3z^2+1"));
  EXPECT_EQ(a.cls.kind, SautKind::infinite_cyclic);
  EXPECT_EQ(*a.cls.generator, (IntMatrix{{2, 1}, {3, 2}}));
  SautReport rep = saut_group(P("z^2-2z+1"));
  EXPECT_EQ(rep.cls.kind, SautKind::infinite_cyclic);
  EXPECT_EQ(*rep.cls.generator, (IntMatrix{{0, 1}, {-1, 2}}));
  SautReport two = saut_group(P("2z^2+3z+1"));
  EXPECT_EQ(two.cls.kind, SautKind::cyclic_order2);
  EXPECT_EQ(*two.cls.generator, (IntMatrix{{3, 2}, {-4, -3}}));
  EXPECT_EQ(std::string(saut_kind_name(two.cls.kind)), "cyclic_order2");
  EXPECT_THROW(saut_group(P("z^2+z+1")), NegativeDiscriminant);
  EXPECT_THROW(saut_group(P("z^3-z-1")), UnsupportedDegree);
  EXPECT_THROW(saut_group(P("z^2-5z+6")), UnsupportedConstantTerm);
}

TEST(Saut, GeneratorCubedIsNotMinimal) {
  SautReport r = saut_group(kGolden);
  const IntMatrix& g = *r.cls.generator;
  // g^2 is the companion matrix, also with p' = 1; g^3 has p' = 2.
  EXPECT_EQ(g * g, companion_matrix(kGolden));
  IntMatrix g3 = g * g * g;
  EXPECT_TRUE(is_saut(g3, kGolden));
  EXPECT_EQ(g3.pp(), 2);
  EXPECT_FALSE(saut_generator_minimal(kGolden, g3));
}

TEST(Saut, BoundedSearchAgreesWithTheGenerator) {
  for (const char* s : {"z^2-3z+1", "-3z^2+1", "z^2-4z+1", "z^2-5z-1", "-z^2+6z+1"}) {
    LaurentPoly p = parse_poly(s);
    SautReport r = saut_group(p);
    IntMatrix g = *r.cls.generator;
    for (const auto& b : saut_elements_bounded(p, 40)) {
      // Every element is +-g^n for some n.
      bool found = b == IntMatrix::identity(2) || b == -IntMatrix::identity(2);
      IntMatrix pos = g, neg = g.inverse2();
      for (int n = 1; n < 12 && !found; ++n) {
        found = b == pos || b == -pos || b == neg || b == -neg;
        pos = pos * g;
        neg = neg * g.inverse2();
      }
      EXPECT_TRUE(found) << s << " " << b.to_string();
    }
  }
}

TEST(Eigendata, ExactQuadraticEigenvalues) {
  SautReport r = saut_group(P("-3z^2+1"));
  Eigendata e = saut_eigendata(*r.cls.generator, P("-3z^2+1"));
  ASSERT_EQ(e.exact_eigenvalues.size(), 2u);
  EXPECT_EQ(e.exact_eigenvalues[0] * e.exact_eigenvalues[1], QuadIrr(1));
  EXPECT_EQ(e.exact_eigenvalues[0] + e.exact_eigenvalues[1], QuadIrr(4));
  EXPECT_THROW(saut_eigendata(IntMatrix{{1, 1}, {0, 1}}, kGolden), std::invalid_argument);
}

TEST(Eigendata, CubicIsNumeric) {
  // The companion matrix acts on (theta^3, theta^2, theta) by 1 / theta.
  LaurentPoly p = P("z^3-z-1");
  Eigendata e = saut_eigendata(companion_matrix(p), p);
  ASSERT_EQ(e.eigenvalues.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::abs(e.eigenvalues[i] * e.roots[i] - 1.0), 1e-9);
}

TEST(ContinuedFractions, ExpansionsAndConvergence) {
  EXPECT_EQ(cf_expand(parse_quad("sqrt(2)")).to_string(), "[1;(2)]");
  EXPECT_EQ(cf_expand(parse_quad("(1+sqrt(5))/2")).to_string(), "[(1)]");
  EXPECT_EQ(cf_expand(parse_quad("sqrt(7)")).to_string(), "[2;(1,1,1,4)]");
  EXPECT_TRUE(cf_expand(QuadIrr(Rational(7, 3))).is_rational());
  for (const char* s : {"sqrt(3)", "(3+sqrt(13))/2", "1/sqrt(3)", "(-5+sqrt(21))/2", "sqrt(61)"}) {
    QuadIrr t = parse_quad(s);
    ContinuedFraction cf = cf_expand(t);
    ASSERT_FALSE(cf.is_rational()) << s;
    EXPECT_NEAR(to_double(cf.evaluate(40)), t.to_double(), 1e-12) << s;
  }
}

TEST(ContinuedFractions, Matrices) {
  CFMatrices m = cf_matrices(cf_expand(parse_quad("(3+sqrt(5))/2")));
  EXPECT_EQ(m.preperiod_matrix(), (IntMatrix{{2, 1}, {1, 0}}));
  EXPECT_EQ(m.period_matrix(), (IntMatrix{{1, 1}, {1, 0}}));
  EXPECT_EQ(m.generator(), (IntMatrix{{2, -1}, {1, -1}}));
  EXPECT_THROW(cf_matrices(cf_expand(QuadIrr(Rational(1, 2)))), RationalInput);
}

TEST(Pell, FundamentalSolutions) {
  struct Case {
    long D, w, v;
    int sign;
  };
  for (const Case& c : {Case{5, 1, 1, -4}, Case{12, 4, 1, 4}, Case{2, 2, 2, -4}, Case{13, 3, 1, -4}, Case{8, 2, 1, -4},
                        Case{21, 5, 1, 4}, Case{61, 39, 5, -4}, Case{3, 4, 2, 4}}) {
    PellSolution s = pell_solve(Integer(c.D));
    EXPECT_EQ(s.w, c.w) << c.D;
    EXPECT_EQ(s.v, c.v) << c.D;
    EXPECT_EQ(s.sign, c.sign) << c.D;
    EXPECT_TRUE(s.minimality_certified);
  }
  EXPECT_THROW(pell_solve(Integer(9)), SquareD);
  EXPECT_THROW(pell_solve(Integer(0)), std::invalid_argument);
}

TEST(Pell, AgreesWithBruteForce) {
  for (long D = 2; D <= 120; ++D) {
    if (is_square(Integer(D))) continue;
    PellSolution s = pell_solve(Integer(D));
    long v = 1;
    for (;; ++v) {
      Integer t = Integer(D) * v * v;
      if (is_square(t + 4) || is_square(t - 4)) break;
    }
    EXPECT_EQ(s.v, v) << D;
  }
}
