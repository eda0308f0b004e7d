#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "streamzero/dynamics.hpp"

using namespace streamzero;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

const LaurentPoly kGolden = parse_poly("z^2-3z+1");

// Letters of z^2 - 3z + 1 written out by hand: delta_n = x_(n-2) - 3 x_(n-1) + x_n.
std::vector<long> golden_letters(const std::vector<Rational>& x) {
  std::vector<long> out;
  for (std::size_t n = 2; n < x.size(); ++n) {
    Rational d = x[n - 2] - 3 * x[n - 1] + x[n];
    out.push_back(to_long(num(d)));
  }
  return out;
}

// Distinct length-n words over seeds (i/g, j/g), by exact rational iteration.
std::size_t golden_word_count(long g, long n) {
  std::set<std::vector<long>> words;
  for (long i = 0; i < g; ++i)
    for (long j = 0; j < g; ++j) {
      std::vector<Rational> x{Rational(i, g), Rational(j, g)};
      while (static_cast<long>(x.size()) < n + 2) x.push_back(frac(3 * x[x.size() - 1] - x[x.size() - 2]));
      words.insert(golden_letters(x));
    }
  return words.size();
}

}  // namespace

TEST(FormThree, NormalizesSignAndShift) {
  FormThree f = form_three(P("-3z^2+1"));
  EXPECT_EQ(f.a, (std::vector<Integer>{1, 0, -3}));
  EXPECT_FALSE(f.sign_flipped);
  FormThree g = form_three(P("-z^-1+3-z"));
  EXPECT_EQ(g.a, (std::vector<Integer>{1, -3, 1}));
  EXPECT_TRUE(g.sign_flipped);
  EXPECT_EQ(g.shift, -1);
  EXPECT_THROW(form_three(P("z^2-5z+6")), UnsupportedConstantTerm);
}

TEST(Companion, LayoutAndCharacteristicPolynomial) {
  auto m = companion(kGolden);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (std::vector<Integer>{0, 1}));
  EXPECT_EQ(m[1], (std::vector<Integer>{-1, 3}));
  auto c = companion(P("z^3-z-1"));
  EXPECT_EQ(c[2], (std::vector<Integer>{1, 0, -1}));
}

TEST(Alphabet, Bounds) {
  Alphabet a = alphabet(kGolden);
  EXPECT_EQ(a.lo, -2);
  EXPECT_EQ(a.hi, 1);
  Alphabet b = alphabet(P("-3z^2+1"));
  EXPECT_EQ(b.lo, -2);
  EXPECT_EQ(b.hi, 0);
}

TEST(Orbit, ForwardAndBackward) {
  TorusSeq x = orbit<Rational>(P("-3z^2+1"), {Rational(1, 4), Rational(0)}, 3, 0);
  EXPECT_EQ(x.values, (std::vector<Rational>{Rational(1, 4), 0, Rational(3, 4), 0, Rational(1, 4)}));
  TorusSeq y = orbit<Rational>(kGolden, {Rational(1, 3), Rational(1, 5)}, 4, 3);
  EXPECT_EQ(y.start, -3);
  EXPECT_TRUE(is_member(kGolden, y));
  EXPECT_THROW(orbit<Rational>(kGolden, {Rational(0), Rational(0)}, 1, 1, 1), BranchOutOfRange);
  EXPECT_THROW(orbit<Rational>(P("z^2-5z+6"), {Rational(0), Rational(0)}, 1, 0), UnsupportedConstantTerm);
}

TEST(Orbit, BackwardBranchesAllMembers) {
  LaurentPoly p = P("-3z^2+1");
  for (std::size_t b = 0; b < 3; ++b) {
    TorusSeq x = orbit<Rational>(p, {Rational(1, 7), Rational(2, 7)}, 4, 4, b);
    EXPECT_TRUE(is_member(p, x)) << b;
  }
}

TEST(Orbit, FloatTracksExact) {
  TorusSeq x = orbit<Rational>(kGolden, {Rational(1, 10), Rational(3, 10)}, 20, 0);
  TorusSeqF y = orbit<double>(kGolden, {0.1, 0.3}, 20, 0);
  for (long n = 0; n < 12; ++n) EXPECT_NEAR(to_double(x.at(n)), y.at(n), 1e-9);
}

TEST(PeriodicOrbit, RationalSeeds) {
  auto o = periodic_orbit(kGolden, {Rational(0), Rational(1, 2)});
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(o->values, (std::vector<Rational>{0, Rational(1, 2), Rational(1, 2)}));
  EXPECT_TRUE(o->periodic);
}

TEST(Encode, PaperOrbit) {
  CodeWord w = encode(kGolden, TorusSeq{0, {0, Rational(1, 2), Rational(1, 2)}, true});
  EXPECT_TRUE(w.periodic);
  EXPECT_EQ(w.start, 2);
  EXPECT_EQ(w.letters, (std::vector<long>{-1, -1, 1}));
}

TEST(Encode, MatchesHandWrittenLetters) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    long q = 2 + static_cast<long>(rng() % 50);
    TorusSeq x = orbit<Rational>(kGolden, {Rational(static_cast<long>(rng() % q), q), Rational(static_cast<long>(rng() % q), q)}, 10, 0);
    CodeWord w = encode(kGolden, x);
    EXPECT_EQ(w.start, 2);
    EXPECT_EQ(w.letters, golden_letters(x.values));
    for (long l : w.letters) EXPECT_TRUE(alphabet(kGolden).contains(l));
  }
}

TEST(Encode, RejectsNonOrbits) {
  EXPECT_THROW(encode(kGolden, TorusSeq{0, {0, Rational(1, 3), Rational(1, 5)}, false}), NotAnOrbit);
}

TEST(Encode, ShiftEquivariant) {
  TorusSeq x = orbit<Rational>(kGolden, {Rational(2, 9), Rational(5, 9)}, 8, 0);
  for (long d = -3; d <= 3; ++d) EXPECT_EQ(encode(kGolden, shift(x, d)), shift(encode(kGolden, x), d));
}

TEST(Decode, PeriodicRoundTrip) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 30; ++t) {
    long q = 2 + static_cast<long>(rng() % 200);
    auto o = periodic_orbit(kGolden, {Rational(static_cast<long>(rng() % q), q), Rational(static_cast<long>(rng() % q), q)});
    ASSERT_TRUE(o.has_value());
    CodeWord w = encode(kGolden, *o);
    TorusSeq back = decode(kGolden, w, -5, 5);
    for (long n = -5; n <= 5; ++n) EXPECT_EQ(back.at(n), o->at(n));
  }
}

TEST(Decode, FiniteWordUsesTails) {
  CodeWord w{0, {-1}, false};
  EXPECT_THROW(decode(kGolden, w, -3, 3), ExactnessUnavailable);
  TorusSeqF x = decode_float(kGolden, w, -3, 3);
  const double s5 = std::sqrt(5.0), g = (3 + s5) / 2;
  EXPECT_NEAR(x.at(-1), 1 / s5, 1e-12);
  EXPECT_NEAR(x.at(0), 1 / (g * s5), 1e-12);
  EXPECT_NEAR(x.at(2), 1 / (g * g * g * s5), 1e-12);
}

TEST(Decode, NotAdmissibleWord) {
  EXPECT_THROW(decode(kGolden, CodeWord{0, {1, 1, 1}, true}, 0, 2), NotAdmissible);
  EXPECT_THROW(decode_float(kGolden, CodeWord{0, {1}, false}, -2, 2), NotAdmissible);
  EXPECT_THROW(decode(P("z^2-2z+1"), CodeWord{0, {0}, true}, 0, 2), NotHyperbolic);
}

TEST(Admissible, Verdicts) {
  EXPECT_EQ(is_admissible(kGolden, CodeWord{0, {1, 1, 1}, true}), Verdict::no);
  EXPECT_EQ(is_admissible(kGolden, CodeWord{2, {-1, -1, 1}, true}), Verdict::yes);
  EXPECT_EQ(is_admissible(kGolden, CodeWord{0, {-1}, false}), Verdict::yes);
  EXPECT_EQ(is_admissible(kGolden, CodeWord{0, {1}, false}), Verdict::no);
  EXPECT_EQ(is_admissible(kGolden, CodeWord{0, {5}, true}), Verdict::no);
}

TEST(Admissible, EveryEncodedWordIsAdmissible) {
  for (long i = 0; i < 16; ++i)
    for (long j = 0; j < 16; ++j) {
      auto o = periodic_orbit(kGolden, {Rational(i, 16), Rational(j, 16)});
      ASSERT_TRUE(o.has_value());
      EXPECT_EQ(is_admissible(kGolden, encode(kGolden, *o)), Verdict::yes);
    }
}

TEST(Entropy, ExactValues) {
  EXPECT_NEAR(entropy_exact(kGolden), std::log((3 + std::sqrt(5.0)) / 2), 1e-12);
  EXPECT_NEAR(entropy_exact(P("-3z^2+1")), std::log(3.0), 1e-12);
  EXPECT_NEAR(entropy_exact(P("z^2-2z+1")), 0.0, 1e-12);
  EXPECT_NEAR(entropy_exact(P("z^2-5z+6")), std::log(6.0), 1e-12);
  EXPECT_NEAR(entropy_exact(P("z^-1-3+z")), entropy_exact(kGolden), 1e-12);
}

TEST(Entropy, WordCountsMatchRationalEnumeration) {
  EntropyOptions opts;
  opts.threads = 1;
  EntropyEstimate e = entropy_estimate(kGolden, 6, 32, opts);
  ASSERT_EQ(e.rows.size(), 6u);
  for (long n = 1; n <= 6; ++n) EXPECT_EQ(e.rows[static_cast<std::size_t>(n - 1)].count, golden_word_count(32, n)) << n;
}

TEST(Entropy, ThreadCountDoesNotChangeCounts) {
  EntropyOptions one, many;
  one.threads = 1;
  many.threads = 4;
  auto a = entropy_estimate(kGolden, 7, 100, one), b = entropy_estimate(kGolden, 7, 100, many);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].count, b.rows[i].count);
}

TEST(Entropy, BackwardBranchesGiveFullShift) {
  EntropyEstimate e = entropy_estimate(P("-3z^2+1"), 8, 64);
  EXPECT_GT(e.branch_depth, 0);
  for (const auto& r : e.rows) EXPECT_EQ(r.count, static_cast<std::uint64_t>(std::pow(3.0, static_cast<double>(r.n)) + 0.5));
}

TEST(Entropy, EstimatesAreUpperBoundsThatDecrease) {
  EntropyEstimate e = entropy_estimate(kGolden, 10, 256);
  const double h = entropy_exact(kGolden);
  for (std::size_t i = 1; i < e.rows.size(); ++i) {
    EXPECT_LE(e.rows[i].estimate, e.rows[i - 1].estimate + 1e-12);
    EXPECT_GE(e.rows[i].estimate, h - 0.05);
  }
}

TEST(Entropy, FrozenCountAtWordLengthTen) {
  EntropyEstimate e = entropy_estimate(kGolden, 10, 1024);
  EXPECT_EQ(e.rows.back().count, 44472u);
}
