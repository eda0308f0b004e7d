#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "streamzero/dynamics.hpp"
#include "streamzero/structure.hpp"

using namespace streamzero;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

}  // namespace

TEST(Dimension, SpanOfTheSupport) {
  EXPECT_EQ(dim_omega(P("z^2-3z+1")), 2);
  EXPECT_EQ(dim_omega(P("5z^-2+z^-1+1")), 2);
  EXPECT_EQ(dim_omega(P("z^3")), 0);
  EXPECT_EQ(dim_omega(P("2z^3-z^2+2z-1")), 3);
}

TEST(Dimension, FreeWindowsExtendLongerOnesDoNot) {
  for (const char* s : {"z^2-3z+1", "-3z^2+1", "z-2", "2z-1", "z^3-z-1", "z+z^-1-3", "2z^2-3z+2", "z^2+1"}) {
    LaurentPoly p = parse_poly(s);
    long d = dim_omega(p);
    EXPECT_TRUE(dim_check(p, d, 5)) << s;
    EXPECT_FALSE(dim_check(p, d + 1, 5)) << s;
  }
  EXPECT_TRUE(dim_check(P("z-2"), 0, 5));
}

TEST(CommonZeros, CoprimePairs) {
  auto zs = enumerate_common_zeros(P("z-1"), P("z+1"), 0, 4);
  ASSERT_EQ(zs.size(), 2u);
  for (long n = 0; n <= 4; ++n) {
    EXPECT_EQ(zs[0].at(n), 0);
    EXPECT_EQ(zs[1].at(n), Rational(1, 2));
  }
  // Delta = 1: only the zero sequence.
  auto one = enumerate_common_zeros(P("z-2"), P("z-3"), 0, 3);
  ASSERT_EQ(one.size(), 1u);
  // z^2 - 3z + 1 and z - 1: Delta = -1.
  EXPECT_EQ(enumerate_common_zeros(P("z^2-3z+1"), P("z-1"), -2, 2).size(), 1u);
  EXPECT_THROW(enumerate_common_zeros(P("z-1"), P("z^2-1"), 0, 2), NotCoprime);
}

TEST(CommonZeros, EveryResultIsAZeroOfBoth) {
  LaurentPoly p = P("z^2+z+3"), q = P("z-2");
  auto zs = enumerate_common_zeros(p, q, 0, 5);
  Integer delta = abs(resultant(p, q).delta);
  EXPECT_EQ(static_cast<long>(zs.size()), to_long(delta));
  for (const auto& x : zs) {
    EXPECT_TRUE(is_member(p, x));
    EXPECT_TRUE(is_member(q, x));
  }
}

TEST(ApplyPoly, ReducesModOne) {
  TorusSeq x{0, {Rational(1, 3), Rational(2, 3), Rational(1, 3)}, false};
  TorusSeq y = apply_poly(P("z+1"), x);
  EXPECT_EQ(y.start, 1);
  EXPECT_EQ(y.values, (std::vector<Rational>{0, 0}));
  TorusSeq raw = apply_poly(P("z+1"), x, false);
  EXPECT_EQ(raw.values, (std::vector<Rational>{1, 1}));
}

TEST(FactorCheck, SamplesOfTheProduct) {
  std::mt19937_64 rng(3);
  LaurentPoly p = P("z-2"), q = P("z-3");
  std::vector<TorusSeq> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(random_member(p, rng, 0, 8, 5));
  // Q = z - 3 does not kill zeros of z - 2; a multiple of P does.
  EXPECT_FALSE(factor_check(p, q, samples, Integer(1)));
  EXPECT_TRUE(factor_check(p, p * q, samples, Integer(1)));
}

TEST(Decompose, WitnessesVerify) {
  std::mt19937_64 rng(5);
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"z-2", "z-3"}, {"z^2-3z+1", "z-1"}, {"2z-1", "z^2-z-1"}, {"z-1", "z+1"}, {"z^2+z-1", "3z+1"}};
  for (const auto& [ps, qs] : pairs) {
    LaurentPoly p = parse_poly(ps), q = parse_poly(qs);
    for (int t = 0; t < 10; ++t) {
      TorusSeq x = random_member(p * q, rng, 0, 12, 1 + static_cast<long>(rng() % 30));
      ASSERT_TRUE(is_member(p * q, x));
      DecompositionWitness w = decompose(p, q, x);
      EXPECT_TRUE(is_member(p, w.u));
      EXPECT_TRUE(is_member(q, w.v));
      for (long n = w.u.start; n <= w.u.end(); ++n) EXPECT_EQ(frac(w.u.at(n) + w.v.at(n)), frac(Rational(w.scale) * x.at(n)));
    }
  }
}

TEST(Decompose, Errors) {
  TorusSeq shortx{0, {Rational(1, 2)}, false};
  EXPECT_THROW(decompose(P("z-1"), P("z^2-1"), shortx), NotCoprime);
  TorusSeq junk{0, {Rational(1, 3), Rational(1, 5), Rational(1, 7), Rational(1, 11)}, false};
  EXPECT_THROW(decompose(P("z-2"), P("z-3"), junk), InconsistentWindow);
}

TEST(Decompose, PeriodicInput) {
  LaurentPoly p = P("z^2-3z+1"), q = P("z-1");
  auto o = periodic_orbit(p * q, {Rational(1, 7), Rational(3, 7), Rational(2, 7)});
  ASSERT_TRUE(o.has_value());
  DecompositionWitness w = decompose(p, q, *o);
  EXPECT_TRUE(w.u.periodic);
  EXPECT_EQ(w.u.size(), o->size());
  for (long n = -10; n <= 10; ++n) EXPECT_EQ(frac(w.u.at(n) + w.v.at(n)), frac(Rational(w.scale) * o->at(n)));
}

TEST(Conjugacy, UnimodularPairs) {
  std::mt19937_64 rng(9);
  LaurentPoly q = P("z-2"), r = P("z-3");
  std::vector<TorusSeq> samples;
  for (int i = 0; i < 6; ++i) samples.push_back(random_member(q * r, rng, 0, 10, 6));
  EXPECT_TRUE(conjugacy_check(q, r, samples));
  EXPECT_THROW(conjugacy_check(P("z-1"), P("z+1"), samples), NotUnimodular);
}

TEST(Entropy, AdditiveOverCoprimeFactors) {
  EXPECT_NEAR(entropy_exact(P("z-2") * P("z-3")), std::log(2.0) + std::log(3.0), 1e-12);
  EXPECT_NEAR(entropy_exact(P("z^2-3z+1") * P("-3z^2+1")), entropy_exact(P("z^2-3z+1")) + std::log(3.0), 1e-12);
}

TEST(RandomMember, IsAMember) {
  std::mt19937_64 rng(12);
  for (const char* s : {"z^2-5z+6", "-3z^2+1", "2z^3+z^2-25z+12", "z^-1-3+z"}) {
    LaurentPoly p = parse_poly(s);
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(is_member(p, random_member(p, rng, -4, 8, 9))) << s;
  }
}
