#include <gtest/gtest.h>

#include "streamzero/serialize.hpp"

using namespace streamzero;

TEST(Json, PolynomialRoundTrip) {
  LaurentPoly p = parse_poly("5z^-2+z^-1-3z^4");
  json j = to_json(p);
  EXPECT_EQ(j.dump(), R"({"4":-3,"-1":1,"-2":5})");
  EXPECT_EQ(poly_from_json(j), p);
  EXPECT_EQ(poly_from_json(json("z^2-3z+1")), parse_poly("z^2-3z+1"));
  EXPECT_THROW(poly_from_json(json::array()), ParseError);
}

TEST(Json, BigIntegersBecomeStrings) {
  Integer big = Integer(1) << 80;
  json j = to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(integer_from_json(j), big);
  EXPECT_TRUE(to_json(Integer(-7)).is_number_integer());
}

TEST(Json, RationalsAndSequences) {
  EXPECT_EQ(to_json(Rational(-3, 6)).get<std::string>(), "-1/2");
  EXPECT_EQ(rational_from_json(json("2/4")), Rational(1, 2));
  EXPECT_EQ(rational_from_json(json(3)), Rational(3));
  TorusSeq x{-2, {Rational(1, 3), 0, Rational(5, 7)}, true};
  TorusSeq y = torus_from_json(to_json(x));
  EXPECT_EQ(y.start, x.start);
  EXPECT_EQ(y.values, x.values);
  EXPECT_TRUE(y.periodic);
}

TEST(Json, WordsAndMatrices) {
  CodeWord w{2, {-1, -1, 1}, true};
  EXPECT_EQ(word_from_json(to_json(w)), w);
  IntMatrix m{{-1, 1}, {-1, 2}};
  EXPECT_EQ(to_json(m).dump(), "[[-1,1],[-1,2]]");
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
}

TEST(Json, StreamCarriesTailsAndWindow) {
  json j = to_json(inverse(parse_poly("z-2")), 0, 3);
  EXPECT_EQ(j["kind"], "geometric");
  ASSERT_EQ(j["tails"].size(), 1u);
  EXPECT_EQ(j["tails"][0]["side"], "causal");
  EXPECT_EQ(j["window"]["lo"], 0);
  EXPECT_DOUBLE_EQ(j["window"]["values"][0].get<double>(), -0.5);
}

TEST(Json, ContinuedFractionAndPell) {
  json cf = to_json(cf_expand(parse_quad("sqrt(7)")));
  EXPECT_EQ(cf["text"], "[2;(1,1,1,4)]");
  EXPECT_EQ(cf["period"].size(), 4u);
  json pell = to_json(pell_solve(Integer(61)));
  EXPECT_EQ(pell["w"], 39);
  EXPECT_EQ(pell["sign"], -4);
}

TEST(TextLists, Parsing) {
  EXPECT_EQ(parse_rational_list("0,1/2, 1/2"), (std::vector<Rational>{0, Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(parse_long_list("-1,-1,1"), (std::vector<long>{-1, -1, 1}));
  EXPECT_THROW(parse_long_list("1,1/2"), ParseError);
  EXPECT_THROW(parse_rational_list("1,,2"), ParseError);
  EXPECT_EQ(parse_range("-20..20"), (std::pair<long, long>{-20, 20}));
  EXPECT_THROW(parse_range("3..1"), ParseError);
  EXPECT_THROW(parse_range("3"), ParseError);
}
