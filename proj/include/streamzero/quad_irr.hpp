#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <functional>
#include <vector>
#include <ostream>
#include <string>
#include <string_view>

#include "streamzero/numeric.hpp"

namespace streamzero {

/// Exact element (a + b*sqrt(d)) / c of a real quadratic field.
/// Canonical form: d squarefree and > 1 (or d = 0 with b = 0), c > 0,
/// gcd(a, b, c) = 1.
class QuadIrr {
 public:
  QuadIrr() = default;
  QuadIrr(long v) : a_(v) {}
  QuadIrr(const Integer& v) : a_(v) {}
  QuadIrr(const Rational& q) : a_(num(q)), c_(den(q)) {}
  QuadIrr(Integer a, Integer b, Integer d, Integer c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    canonicalize();
  }

  static QuadIrr sqrt(const Integer& d) { return QuadIrr(0, 1, d, 1); }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  Rational rational_part() const { return Rational(a_, c_); }
  Rational irrational_coeff() const { return Rational(b_, c_); }

  QuadIrr conj() const { return QuadIrr(a_, -b_, d_, c_); }
  /// x * conj(x).
  Rational norm() const { return Rational(a_ * a_ - b_ * b_ * d_, c_ * c_); }
  Rational trace() const { return Rational(2 * a_, c_); }

  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Integer lhs = a_ * a_, rhs = b_ * b_ * d_;
    return lhs > rhs ? sa : sb;
  }

  Integer floor() const {
    if (b_ == 0) return floor_div(a_, c_);
    Integer s = isqrt(b_ * b_ * d_);
    if (b_ > 0) return floor_div(a_ + s, c_);
    return floor_div(a_ - s - 1, c_);
  }

  double to_double() const {
    long double v = to_long_double(a_) + to_long_double(b_) * std::sqrt(static_cast<long double>(to_long_double(d_)));
    return static_cast<double>(v / to_long_double(c_));
  }

  QuadIrr operator-() const { return QuadIrr(-a_, -b_, d_, c_); }
  friend QuadIrr operator+(const QuadIrr& x, const QuadIrr& y) {
    Integer d = common_radicand(x, y);
    return QuadIrr(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, d, x.c_ * y.c_);
  }
  friend QuadIrr operator-(const QuadIrr& x, const QuadIrr& y) { return x + (-y); }
  friend QuadIrr operator*(const QuadIrr& x, const QuadIrr& y) {
    Integer d = common_radicand(x, y);
    return QuadIrr(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d, x.c_ * y.c_);
  }
  friend QuadIrr operator/(const QuadIrr& x, const QuadIrr& y) {
    Rational n = y.norm();
    if (n == 0) throw std::domain_error("division by zero in quadratic field");
    QuadIrr t = x * y.conj();
    return QuadIrr(t.a_ * den(n), t.b_ * den(n), t.d_, t.c_ * num(n));
  }
  QuadIrr& operator+=(const QuadIrr& y) { return *this = *this + y; }
  QuadIrr& operator-=(const QuadIrr& y) { return *this = *this - y; }
  QuadIrr& operator*=(const QuadIrr& y) { return *this = *this * y; }
  QuadIrr& operator/=(const QuadIrr& y) { return *this = *this / y; }

  QuadIrr pow(long e) const {
    if (e < 0) return QuadIrr(1) / pow(-e);
    QuadIrr r(1), base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const QuadIrr& x, const QuadIrr& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend std::strong_ordering operator<=>(const QuadIrr& x, const QuadIrr& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// "(a+b*sqrt(d))/c" with trivial parts omitted.
  std::string to_string() const {
    std::string numer;
    if (b_ == 0) {
      numer = a_.str();
    } else {
      std::string rad = "sqrt(" + d_.str() + ")";
      std::string bpart = abs(b_) == 1 ? rad : abs(b_).str() + "*" + rad;
      if (a_ != 0) numer = a_.str() + (b_ < 0 ? "-" : "+") + bpart;
      else numer = (b_ < 0 ? "-" : "") + bpart;
    }
    if (c_ == 1) return numer;
    bool compound = b_ != 0 && a_ != 0;
    return (compound ? "(" + numer + ")" : numer) + "/" + c_.str();
  }

 private:
  static Integer common_radicand(const QuadIrr& x, const QuadIrr& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw std::domain_error("quadratic irrationals from different fields");
    return x.d_;
  }

  void canonicalize() {
    if (c_ == 0) throw std::domain_error("zero denominator");
    if (d_ < 0) throw std::domain_error("negative radicand");
    if (b_ == 0 || d_ == 0) {
      b_ = 0;
      d_ = 0;
    } else {
      Integer square = 1, rest = d_;
      for (Integer p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
          rest /= p * p;
          square *= p;
        }
      }
      b_ *= square;
      d_ = rest;
      if (d_ == 1) {
        a_ += b_;
        b_ = 0;
        d_ = 0;
      }
    }
    if (c_ < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
    }
    Integer g = gcd(gcd(a_, b_), c_);
    if (g > 1) {
      a_ /= g;
      b_ /= g;
      c_ /= g;
    }
  }

  Integer a_ = 0;
  Integer b_ = 0;
  Integer c_ = 1;
  Integer d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const QuadIrr& x) { return os << x.to_string(); }

/// Arithmetic expressions over integers and sqrt(n): "(3+sqrt(5))/2",
/// "1/sqrt(3)", "2*sqrt(2)-1".
inline QuadIrr parse_quad(std::string_view text) {
  std::string s;
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
      pos.push_back(i);
    }
  }
  const std::string original(text);
  std::size_t i = 0;
  auto fail = [&](const char* what) { return ParseError(what, i < pos.size() ? pos[i] : text.size(), original); };
  auto integer = [&]() {
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (b == i) throw fail("expected integer");
    return Integer(s.substr(b, i - b));
  };
  std::function<QuadIrr()> expr, term, factor;
  factor = [&]() -> QuadIrr {
    if (i >= s.size()) throw fail("unexpected end");
    if (s[i] == '-') {
      ++i;
      return -factor();
    }
    if (s[i] == '+') {
      ++i;
      return factor();
    }
    if (s[i] == '(') {
      ++i;
      QuadIrr v = expr();
      if (i >= s.size() || s[i] != ')') throw fail("expected ')'");
      ++i;
      return v;
    }
    if (s.compare(i, 5, "sqrt(") == 0) {
      i += 5;
      Integer d = integer();
      if (i >= s.size() || s[i] != ')') throw fail("expected ')'");
      ++i;
      return QuadIrr::sqrt(d);
    }
    return QuadIrr(integer());
  };
  term = [&]() -> QuadIrr {
    QuadIrr v = factor();
    while (i < s.size() && (s[i] == '*' || s[i] == '/')) {
      char op = s[i++];
      QuadIrr r = factor();
      if (op == '*') {
        v *= r;
      } else {
        if (r == QuadIrr(0)) throw fail("division by zero");
        v /= r;
      }
    }
    return v;
  };
  expr = [&]() -> QuadIrr {
    QuadIrr v = term();
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      char op = s[i++];
      QuadIrr r = term();
      v = op == '+' ? v + r : v - r;
    }
    return v;
  };
  if (s.empty()) throw fail("empty expression");
  QuadIrr v = expr();
  if (i != s.size()) throw fail("trailing characters");
  return v;
}

}  // namespace streamzero
