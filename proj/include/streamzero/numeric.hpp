#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <cstdint>
#include <string>
#include <string_view>

#include "streamzero/errors.hpp"

namespace streamzero {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Floor division, b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor_mod(const Integer& a, const Integer& b) {
  return a - b * floor_div(a, b);
}

inline Integer floor(const Rational& q) { return floor_div(num(q), den(q)); }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& n) { return n.convert_to<double>(); }
inline long double to_long_double(const Integer& n) { return n.convert_to<long double>(); }

inline long to_long(const Integer& n) {
  if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
    throw Overflow("integer does not fit in 64 bits: " + n.str());
  return n.convert_to<long>();
}

inline Integer abs(const Integer& n) { return n < 0 ? Integer(-n) : n; }
inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Floor of the square root, n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer s = isqrt(n);
  return s * s == n;
}

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline std::string to_string(const Integer& n) { return n.str(); }

inline Integer parse_integer(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  if (i == s.size()) throw ParseError("expected digits", i, std::string(s));
  Integer v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("unexpected character", i, std::string(s));
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Integer(-v) : v;
}

/// Accepts "n", "n/d" and decimal literals such as "0.25".
inline Rational parse_rational(std::string_view s) {
  auto trim = [](std::string_view t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    return t;
  };
  s = trim(s);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer n = parse_integer(trim(s.substr(0, slash)));
    Integer d = parse_integer(trim(s.substr(slash + 1)));
    if (d == 0) throw ParseError("zero denominator", slash + 1, std::string(s));
    return Rational(n, d);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits(s.substr(0, dot));
    std::string fraction(s.substr(dot + 1));
    Integer scale = 1;
    for (std::size_t i = 0; i < fraction.size(); ++i) scale *= 10;
    bool neg = !digits.empty() && digits[0] == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    Integer whole = parse_integer(digits);
    Integer part = fraction.empty() ? Integer(0) : parse_integer(fraction);
    Rational v = Rational(abs(whole)) + Rational(part, scale);
    return neg ? Rational(-v) : v;
  }
  return Rational(parse_integer(s));
}

inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Binomial coefficient in floating point, for tail evaluation.
inline long double binomial_ld(long n, long k) {
  if (k < 0 || k > n) return 0.0L;
  long double r = 1.0L;
  for (long i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r;
}

}  // namespace streamzero
