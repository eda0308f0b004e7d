#pragma once

#include <cctype>
#include <complex>
#include <optional>
#include <ostream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "streamzero/numeric.hpp"

namespace streamzero {

/// Integer Laurent polynomial, sparse in exponent. The zero polynomial is
/// representable for arithmetic; domain operations reject it.
class LaurentPoly {
 public:
  using Coeffs = std::map<long, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(Coeffs c) : c_(std::move(c)) { prune(); }
  LaurentPoly(std::initializer_list<std::pair<const long, Integer>> init) : c_(init) { prune(); }

  static LaurentPoly constant(Integer v) { return monomial(std::move(v), 0); }
  static LaurentPoly monomial(Integer v, long e) {
    LaurentPoly p;
    if (v != 0) p.c_[e] = std::move(v);
    return p;
  }
  /// coeffs[i] is the coefficient of z^(low + i).
  static LaurentPoly from_dense(const std::vector<Integer>& coeffs, long low = 0) {
    LaurentPoly p;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) p.c_[low + static_cast<long>(i)] = coeffs[i];
    return p;
  }

  const Coeffs& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long low() const { require_nonzero(); return c_.begin()->first; }
  long high() const { require_nonzero(); return c_.rbegin()->first; }
  long span() const { return high() - low(); }
  Integer coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Integer(0) : it->second;
  }
  Integer leading() const { require_nonzero(); return c_.rbegin()->second; }
  Integer trailing() const { require_nonzero(); return c_.begin()->second; }

  Integer content() const {
    Integer g = 0;
    for (const auto& [e, v] : c_) g = gcd(g, v);
    return g;
  }
  bool is_primitive() const { return content() == 1; }

  /// z^d * P.
  LaurentPoly shifted(long d) const {
    LaurentPoly p;
    for (const auto& [e, v] : c_) p.c_[e + d] = v;
    return p;
  }
  /// z^(-low) * P, an ordinary polynomial with nonzero constant term.
  LaurentPoly normalized() const { return is_zero() ? *this : shifted(-low()); }
  /// Coefficients a_0 .. a_d of the normalized polynomial.
  std::vector<Integer> dense() const {
    if (is_zero()) return {};
    std::vector<Integer> out(static_cast<std::size_t>(span() + 1));
    for (const auto& [e, v] : c_) out[static_cast<std::size_t>(e - low())] = v;
    return out;
  }

  LaurentPoly operator-() const {
    LaurentPoly p;
    for (const auto& [e, v] : c_) p.c_[e] = -v;
    return p;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c_) c_[e] += v;
    prune();
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) p.c_[ea + eb] += va * vb;
    p.prune();
    return p;
  }
  friend LaurentPoly operator*(const Integer& s, const LaurentPoly& a) {
    return LaurentPoly::constant(s) * a;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

  template <class T>
  std::complex<T> eval(std::complex<T> z) const {
    std::complex<T> s = 0;
    for (const auto& [e, v] : c_) s += static_cast<T>(v.template convert_to<long double>()) * std::pow(z, static_cast<int>(e));
    return s;
  }

  /// Canonical text, descending exponents: "z^2-3z+1", "-z+z^-1".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      const auto& [e, v] = *it;
      Integer mag = abs(v);
      if (v < 0) out += "-";
      else if (!out.empty()) out += "+";
      if (e == 0) {
        out += mag.str();
        continue;
      }
      if (mag != 1) out += mag.str();
      out += "z";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  void prune() {
    for (auto it = c_.begin(); it != c_.end();) it = it->second == 0 ? c_.erase(it) : std::next(it);
  }
  void require_nonzero() const {
    if (c_.empty()) throw ZeroPolynomial("operation undefined for the zero polynomial");
  }
  Coeffs c_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

/// Parses sums of terms `[±][int][*]z[^[±]int]` or `[±]int`, whitespace ignored.
/// Examples: "z^2-3z+1", "-3z^2+1", "z^-1 - z", "2z^(-1)+5".
inline LaurentPoly parse_poly(std::string_view text) {
  std::string s;
  std::vector<std::size_t> pos;  // original offsets of non-space characters
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
      pos.push_back(i);
    }
  }
  const std::string original(text);
  auto fail = [&](const char* what, std::size_t i) -> ParseError {
    return ParseError(what, i < pos.size() ? pos[i] : text.size(), original);
  };
  if (s.empty()) throw fail("empty polynomial", 0);
  auto digits = [&](std::size_t& i) {
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(b, i - b);
  };
  LaurentPoly::Coeffs acc;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (!first) {
      throw fail("expected '+' or '-'", i);
    }
    first = false;
    std::string d = digits(i);
    Integer coef = d.empty() ? Integer(1) : Integer(d);
    long exp = 0;
    bool has_z = false;
    if (i < s.size() && s[i] == '*') {
      if (d.empty()) throw fail("expected coefficient before '*'", i);
      ++i;
      if (i >= s.size() || s[i] != 'z') throw fail("expected 'z' after '*'", i);
    }
    if (i < s.size() && s[i] == 'z') {
      has_z = true;
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        bool paren = i < s.size() && s[i] == '(';
        if (paren) ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        std::string e = digits(i);
        if (e.empty()) throw fail("expected exponent", i);
        if (e.size() > 15) throw fail("exponent too large", i);
        exp = std::stol(e);
        if (eneg) exp = -exp;
        if (paren) {
          if (i >= s.size() || s[i] != ')') throw fail("expected ')'", i);
          ++i;
        }
      }
    }
    if (d.empty() && !has_z) throw fail("expected term", i);
    acc[exp] += neg ? Integer(-coef) : coef;
  }
  return LaurentPoly(std::move(acc));
}

namespace detail {

/// Dense rational polynomial, index = exponent.
using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_ratpoly(const LaurentPoly& p) {
  RatPoly out;
  for (const auto& v : p.dense()) out.emplace_back(v);
  return out;
}

inline RatPoly ratpoly_derivative(const RatPoly& p) {
  RatPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

inline RatPoly ratpoly_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder of a / b, b nonzero.
inline std::pair<RatPoly, RatPoly> ratpoly_divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  RatPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline RatPoly ratpoly_monic(RatPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational l = p.back();
  for (auto& v : p) v /= l;
  return p;
}

inline RatPoly ratpoly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = ratpoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return ratpoly_monic(a);
}

/// Scales to a primitive integer polynomial with positive leading coefficient.
inline LaurentPoly ratpoly_to_primitive(const RatPoly& p) {
  Integer l = 1;
  for (const auto& v : p) l = boost::multiprecision::lcm(l, den(v));
  std::vector<Integer> out;
  for (const auto& v : p) out.push_back(num(v * l));
  LaurentPoly r = LaurentPoly::from_dense(out);
  if (r.is_zero()) return r;
  Integer c = r.content();
  if (r.leading() < 0) c = -c;
  LaurentPoly::Coeffs cs;
  for (const auto& [e, v] : r.coeffs()) cs[e] = v / c;
  return LaurentPoly(std::move(cs));
}

}  // namespace detail

/// Divides out the content; the leading coefficient becomes positive.
inline LaurentPoly primitive_part(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("primitive part of zero");
  Integer c = p.content();
  if (p.leading() < 0) c = -c;
  LaurentPoly::Coeffs cs;
  for (const auto& [e, v] : p.coeffs()) cs[e] = v / c;
  return LaurentPoly(std::move(cs));
}

inline LaurentPoly poly_mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

/// Greatest common divisor in Q[z, 1/z], returned as a primitive ordinary
/// polynomial with nonzero constant term and positive leading coefficient.
/// Units (nonzero monomials) give 1.
inline LaurentPoly poly_gcd(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() && q.is_zero()) throw ZeroPolynomial("gcd(0, 0)");
  if (p.is_zero()) return primitive_part(q.normalized());
  if (q.is_zero()) return primitive_part(p.normalized());
  return detail::ratpoly_to_primitive(detail::ratpoly_gcd(detail::to_ratpoly(p), detail::to_ratpoly(q)));
}

/// Exact quotient n / d in Z[z, 1/z]; nullopt if d does not divide n.
inline std::optional<LaurentPoly> poly_divide_exact(const LaurentPoly& n, const LaurentPoly& d) {
  if (d.is_zero()) throw ZeroPolynomial("division by zero polynomial");
  if (n.is_zero()) return LaurentPoly();
  auto [q, r] = detail::ratpoly_divmod(detail::to_ratpoly(n), detail::to_ratpoly(d));
  if (!r.empty()) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& v : q) {
    if (den(v) != 1) return std::nullopt;
    out.push_back(num(v));
  }
  return LaurentPoly::from_dense(out, n.low() - d.low());
}

}  // namespace streamzero
