#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "streamzero/int_matrix.hpp"
#include "streamzero/quad_irr.hpp"

namespace streamzero {

/// [c_0; c_1, ..., c_(k-1), (e_0, ..., e_(m-1))]; the period is empty for rationals.
struct ContinuedFraction {
  std::vector<Integer> preperiod;
  std::vector<Integer> period;

  bool is_rational() const { return period.empty(); }

  /// Value of the preperiod followed by `periods` copies of the period.
  Rational evaluate(std::size_t periods) const {
    std::vector<Integer> terms = preperiod;
    for (std::size_t i = 0; i < periods; ++i) terms.insert(terms.end(), period.begin(), period.end());
    if (terms.empty()) throw std::invalid_argument("empty continued fraction");
    Rational v(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;) v = Rational(terms[i]) + Rational(1) / v;
    return v;
  }

  /// "[2;(1)]", "[0;1,(1,2)]", "[2;3]", "[(1)]".
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < preperiod.size(); ++i) s += (i == 0 ? "" : i == 1 ? ";" : ",") + preperiod[i].str();
    if (!period.empty()) {
      if (!preperiod.empty()) s += preperiod.size() == 1 ? ";" : ",";
      s += "(";
      for (std::size_t i = 0; i < period.size(); ++i) s += (i ? "," : "") + period[i].str();
      s += ")";
    }
    return s + "]";
  }
  friend bool operator==(const ContinuedFraction& a, const ContinuedFraction& b) {
    return a.preperiod == b.preperiod && a.period == b.period;
  }
};

/// Continued fraction of a real quadratic irrational or rational, with the
/// period found by repetition of the reduced state (P + sqrt d) / Q.
inline ContinuedFraction cf_expand(const QuadIrr& theta) {
  ContinuedFraction cf;
  if (theta.is_rational()) {
    Integer n = theta.a(), d = theta.c();
    while (d != 0) {
      Integer q = floor_div(n, d);
      cf.preperiod.push_back(q);
      Integer r = n - q * d;
      n = d;
      d = r;
    }
    return cf;
  }
  Integer P = theta.a(), Q = theta.c(), d = theta.b() * theta.b() * theta.radicand();
  if (theta.b() < 0) {
    P = -P;
    Q = -Q;
  }
  if ((d - P * P) % Q != 0) {
    Integer aq = abs(Q);
    P *= aq;
    d *= Q * Q;
    Q *= aq;
  }
  const Integer s = isqrt(d);
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  std::vector<Integer> qs;
  while (!seen.count({P, Q})) {
    seen[{P, Q}] = qs.size();
    Integer q = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
    qs.push_back(q);
    P = q * Q - P;
    Q = (d - P * P) / Q;
  }
  std::size_t start = seen[{P, Q}];
  cf.preperiod.assign(qs.begin(), qs.begin() + static_cast<long>(start));
  cf.period.assign(qs.begin() + static_cast<long>(start), qs.end());
  return cf;
}

/// Last two convergents C/G, C'/G' of the preperiod and E/F, E'/F' of one
/// period, with the conventions 1/0 and 0/1 for short blocks.
struct CFMatrices {
  Integer C, G, Cp, Gp;
  Integer E, F, Ep, Fp;

  IntMatrix preperiod_matrix() const {
    IntMatrix m(2);
    m(0, 0) = C;
    m(0, 1) = Cp;
    m(1, 0) = G;
    m(1, 1) = Gp;
    return m;
  }
  IntMatrix period_matrix() const {
    IntMatrix m(2);
    m(0, 0) = E;
    m(0, 1) = Ep;
    m(1, 0) = F;
    m(1, 1) = Fp;
    return m;
  }
  /// (C C'; G G') (E E'; F F') (C C'; G G')^-1.
  IntMatrix generator() const { return preperiod_matrix() * period_matrix() * preperiod_matrix().inverse2(); }
};

namespace detail {

/// Convergent (h, k) of the whole block and of the block minus its last term.
inline std::pair<std::pair<Integer, Integer>, std::pair<Integer, Integer>> last_convergents(const std::vector<Integer>& terms) {
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (const auto& q : terms) {
    Integer h = q * h1 + h2, k = q * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return {{h1, k1}, {h2, k2}};
}

}  // namespace detail

inline CFMatrices cf_matrices(const ContinuedFraction& cf) {
  if (cf.period.empty()) throw RationalInput("continued fraction has no period");
  auto [c, cp] = detail::last_convergents(cf.preperiod);
  auto [e, ep] = detail::last_convergents(cf.period);
  return CFMatrices{c.first, c.second, cp.first, cp.second, e.first, e.second, ep.first, ep.second};
}

/// Fundamental solution of w^2 - D v^2 = +-4.
struct PellSolution {
  Integer w;
  Integer v;
  int sign = 4;
  bool minimality_certified = false;  ///< brute force over smaller v completed
};

/// Solutions v below this bound are confirmed minimal by exhaustive search.
inline constexpr long kPellCertifyLimit = 200'000;

inline PellSolution pell_solve(const Integer& D) {
  if (D <= 0) throw std::invalid_argument("Pell discriminant must be positive");
  if (is_square(D)) throw SquareD("D = " + D.str() + " is a perfect square");
  PellSolution sol;
  const Integer s = isqrt(D);
  const Integer m4 = floor_mod(D, Integer(4));
  if (m4 == 0 || m4 == 1) {
    // Expansion of (P0 + sqrt D) / 2; the first complete quotient with Q = +-2 yields the solution.
    const Integer P0 = floor_mod(D, Integer(2));
    Integer P = P0, Q = 2, h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    while (true) {
      Integer q = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
      Integer h = q * h1 + h2, k = q * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      P = q * Q - P;
      Q = (D - P * P) / Q;
      if (Q == 2 || Q == -2) {
        sol.w = abs(2 * h1 - P0 * k1);
        sol.v = k1;
        break;
      }
    }
  } else {
    // w and v must both be even: solve x^2 - D y^2 = +-1 from sqrt D and double.
    Integer P = 0, Q = 1, h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    while (true) {
      Integer q = floor_div(P + s, Q);
      Integer h = q * h1 + h2, k = q * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      P = q * Q - P;
      Q = (D - P * P) / Q;
      if (Q == 1) break;
    }
    sol.w = 2 * h1;
    sol.v = 2 * k1;
  }
  Integer val = sol.w * sol.w - D * sol.v * sol.v;
  if (val != 4 && val != -4) throw std::logic_error("Pell solution check failed");
  sol.sign = val == 4 ? 4 : -4;
  if (sol.v <= kPellCertifyLimit) {
    sol.minimality_certified = true;
    for (long v = 1; v < sol.v; ++v) {
      Integer t = D * v * v;
      if (is_square(t + 4) || (t > 4 && is_square(t - 4))) throw std::logic_error("Pell solution not minimal");
    }
  }
  return sol;
}

}  // namespace streamzero
