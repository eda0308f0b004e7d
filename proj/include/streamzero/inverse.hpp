#pragma once

#include <complex>
#include <vector>

#include "streamzero/laurent_poly.hpp"
#include "streamzero/quad_irr.hpp"
#include "streamzero/roots.hpp"
#include "streamzero/stream.hpp"

namespace streamzero {

namespace detail {

using cld = std::complex<long double>;

/// Taylor coefficients of p at r: p(r + t) = sum_k out[k] t^k.
inline std::vector<cld> taylor_shift(std::vector<cld> p, cld r) {
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) p[i - 1] += r * p[i];
  return p;
}

inline std::vector<cld> to_complex(const detail::RatPoly& p) {
  std::vector<cld> out;
  for (const auto& v : p) out.emplace_back(static_cast<long double>(v.convert_to<long double>()), 0);
  return out;
}

/// Expansion of numerator / P on the unit circle as exact polynomial part
/// plus merged tails, one per (root, order). Tails refer to the normalized
/// denominator; the caller applies the index shift.
inline GeometricTails proper_expansion(const RatPoly& numerator, const LaurentPoly& denom_normalized, double precision) {
  RatPoly den_r = to_ratpoly(denom_normalized);
  auto [q, rem] = ratpoly_divmod(numerator, den_r);
  GeometricTails out;
  for (std::size_t i = 0; i < q.size(); ++i) out.finite.set(static_cast<long>(i), q[i]);
  if (rem.empty()) return out;
  RootSet rs = find_roots(denom_normalized, precision);
  const auto pc = to_complex(den_r);
  const auto nc = to_complex(rem);
  for (const auto& root : rs.roots) {
    if (root.side == CircleSide::straddles) throw NotHyperbolic("root on or near the unit circle");
    const cld r(root.value.real(), root.value.imag());
    const std::size_t m = static_cast<std::size_t>(root.multiplicity);
    auto pt = taylor_shift(pc, r);
    auto nt = taylor_shift(nc, r);
    // g(r + t) = P(r + t) / t^m; series of rem / g up to t^(m-1).
    std::vector<cld> g(pt.begin() + static_cast<long>(m), pt.end());
    std::vector<cld> s(m, cld(0));
    for (std::size_t l = 0; l < m; ++l) {
      cld acc = l < nt.size() ? nt[l] : cld(0);
      for (std::size_t i = 1; i <= l && i < g.size(); ++i) acc -= g[i] * s[l - i];
      s[l] = acc / g[0];
    }
    const bool outside = root.side == CircleSide::outside;
    for (std::size_t j = 1; j <= m; ++j) {
      cld c = s[m - j];
      Tail t;
      t.root = root.value;
      t.order = static_cast<int>(j);
      if (outside) {
        t.side = TailSide::causal;
        t.start = 0;
        t.coeff = std::complex<double>(c * std::pow(-r, -static_cast<long double>(j)));
      } else {
        t.side = TailSide::anticausal;
        t.start = -static_cast<long>(j);
        t.coeff = std::complex<double>(c);
      }
      if (std::abs(c) != 0) out.tails.push_back(t);
    }
  }
  return out;
}

}  // namespace detail

/// numerator x P^-1 with exact finite part and one tail per (root, order).
inline GeometricTails rational_inverse(const LaurentPoly& numerator, const LaurentPoly& p, double precision = 1e-12) {
  if (p.is_zero()) throw ZeroPolynomial("inverse of zero");
  if (numerator.is_zero()) return {};
  auto h = is_hyperbolic(p);
  if (!h.hyperbolic) throw NotHyperbolic(p.to_string() + " has a root on the unit circle");
  GeometricTails g = detail::proper_expansion(detail::to_ratpoly(numerator), p.normalized(), precision);
  return shift(g, p.low() - numerator.low());
}

/// The unique summable inverse of a hyperbolic P: exact for units, tails otherwise.
inline Stream inverse(const LaurentPoly& p, double precision = 1e-12) {
  GeometricTails g = rational_inverse(LaurentPoly::constant(1), p, precision);
  if (g.tails.empty()) return g.finite;
  return g;
}

/// max |(P x inv)_n - I_n| over [lo, hi] is at most tol.
inline bool verify_inverse(const LaurentPoly& p, const Stream& inv, long lo, long hi, double tol = 1e-10) {
  FiniteSupport pf;
  for (const auto& [e, v] : p.coeffs()) pf.set(e, Rational(v));
  Stream prod = convolve(Stream(pf), inv, ConvolveOptions{lo, hi, tol / 4});
  return distance_on(prod, Stream(identity()), lo, hi) <= tol;
}

/// Exact entries of P^-1 for P of degree at most two with real roots off the
/// unit circle, in the quadratic field of the discriminant.
class QuadraticInverse {
 public:
  explicit QuadraticInverse(const LaurentPoly& p) : shift_(p.low()) {
    auto a = p.dense();
    if (a.size() > 3) throw UnsupportedDegree("exact inverse needs degree <= 2");
    a.resize(3, Integer(0));
    a0_ = a[0];
    a1_ = a[1];
    a2_ = a[2];
    if (a2_ == 0 && a1_ == 0) return;
    if (a2_ == 0) {
      roots_.push_back(QuadIrr(Rational(-a0_, a1_)));
      scale_ = QuadIrr(Rational(1, a1_));
    } else {
      Integer d = a1_ * a1_ - 4 * a2_ * a0_;
      if (d < 0) throw NegativeDiscriminant("complex roots");
      if (d == 0) {
        roots_.push_back(QuadIrr(Rational(-a1_, 2 * a2_)));
        double_root_ = true;
        scale_ = QuadIrr(Rational(1, a2_));
      } else {
        QuadIrr s = QuadIrr::sqrt(d);
        roots_.push_back((QuadIrr(-a1_) + s) / QuadIrr(2 * a2_));
        roots_.push_back((QuadIrr(-a1_) - s) / QuadIrr(2 * a2_));
        scale_ = QuadIrr(1) / s;  // 1 / (a2 (r1 - r2))
      }
    }
    for (const auto& r : roots_) {
      QuadIrr m = r < QuadIrr(0) ? -r : r;
      if (m == QuadIrr(1)) throw NotHyperbolic("root on the unit circle");
      outside_.push_back(m > QuadIrr(1));
    }
  }

  /// Entry n of P^-1.
  QuadIrr at(long n) const {
    n += shift_;
    if (roots_.empty()) return n == 0 ? QuadIrr(Rational(1, a0_)) : QuadIrr(0);
    if (double_root_) {
      // 1 / (a2 (z - r)^2)
      const QuadIrr& r = roots_[0];
      if (outside_[0]) return n < 0 ? QuadIrr(0) : scale_ * QuadIrr(n + 1) * r.pow(-n - 2);
      long m = -n - 2;
      return m < 0 ? QuadIrr(0) : scale_ * QuadIrr(m + 1) * r.pow(m);
    }
    QuadIrr sum(0);
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      QuadIrr e = simple_entry(roots_[i], outside_[i], n);
      sum += i == 0 ? e : -e;
    }
    return scale_ * sum;
  }

 private:
  /// Entry n of 1 / (z - r).
  static QuadIrr simple_entry(const QuadIrr& r, bool outside, long n) {
    if (outside) return n >= 0 ? -r.pow(-n - 1) : QuadIrr(0);
    return n <= -1 ? r.pow(-n - 1) : QuadIrr(0);
  }

  long shift_;
  Integer a0_, a1_, a2_;
  std::vector<QuadIrr> roots_;
  std::vector<bool> outside_;
  QuadIrr scale_{1};
  bool double_root_ = false;
};

}  // namespace streamzero
