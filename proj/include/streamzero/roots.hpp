#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "streamzero/laurent_poly.hpp"

namespace streamzero {

enum class CircleSide { inside, outside, straddles };

struct Root {
  std::complex<double> value;
  double error_radius = 0;  ///< the true root lies within this distance of value
  int multiplicity = 1;
  CircleSide side = CircleSide::straddles;
};

/// Certified roots of z^-h P with multiplicities.
struct RootSet {
  std::vector<Root> roots;
  Integer leading_coeff;
  long low_exponent = 0;

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& r : roots) d += static_cast<std::size_t>(r.multiplicity);
    return d;
  }
};

/// Square-free decomposition over Q (Yun): factors[i] is the product of the
/// irreducible factors of multiplicity i + 1, primitive with positive leading
/// coefficient. Input is normalized first.
inline std::vector<LaurentPoly> squarefree_decomposition(const LaurentPoly& p) {
  using namespace detail;
  RatPoly f = to_ratpoly(p);
  std::vector<LaurentPoly> out;
  if (f.size() <= 1) return out;
  RatPoly fp = ratpoly_derivative(f);
  RatPoly a0 = ratpoly_gcd(f, fp);
  RatPoly b = ratpoly_divmod(f, a0).first;
  RatPoly c = ratpoly_divmod(fp, a0).first;
  RatPoly d = ratpoly_sub(c, ratpoly_derivative(b));
  while (b.size() > 1) {
    RatPoly a = ratpoly_gcd(b, d);
    out.push_back(ratpoly_to_primitive(a));
    b = ratpoly_divmod(b, a).first;
    c = ratpoly_divmod(d, a).first;
    d = ratpoly_sub(c, ratpoly_derivative(b));
  }
  while (!out.empty() && out.back().span() == 0) out.pop_back();
  return out;
}

namespace detail {

using cld = std::complex<long double>;

struct Isolated {
  cld value;
  long double radius;
};

/// Horner value and a bound on its rounding error.
inline std::pair<cld, long double> horner(const std::vector<long double>& a, cld z) {
  cld v = 0;
  long double mag = 0;
  const long double az = std::abs(z);
  for (std::size_t i = a.size(); i-- > 0;) {
    v = v * z + a[i];
    mag = mag * az + std::fabs(a[i]);
  }
  const long double u = std::numeric_limits<long double>::epsilon();
  return {v, 4.0L * static_cast<long double>(a.size() + 1) * u * mag};
}

/// Simple roots of a square-free integer polynomial, each inside a disk
/// certified by the Weierstrass inclusion theorem (disks of radius
/// deg * |W_i| cover the zeros, and a component of k disks holds k zeros).
inline std::vector<Isolated> isolate_simple_roots(const LaurentPoly& f) {
  const auto coeffs = f.dense();
  const std::size_t deg = coeffs.size() - 1;
  std::vector<long double> a;
  for (const auto& c : coeffs) a.push_back(to_long_double(c));
  std::vector<cld> z;
  if (deg == 1) {
    z.push_back(cld(-a[0] / a[1], 0));
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<long>(deg), static_cast<long>(deg));
    for (std::size_t i = 1; i < deg; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) comp(static_cast<long>(i), static_cast<long>(deg - 1)) = static_cast<double>(-a[i] / a[deg]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (long i = 0; i < static_cast<long>(deg); ++i) z.emplace_back(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
  }
  std::vector<long double> da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(a[i] * static_cast<long double>(i));
  for (auto& r : z) {
    for (int it = 0; it < 100; ++it) {
      cld fv = horner(a, r).first;
      cld dv = horner(da, r).first;
      if (dv == cld(0)) break;
      cld step = fv / dv;
      r -= step;
      if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(r))) break;
    }
  }
  // Weierstrass pass: simultaneous correction improves clustered seeds.
  for (int pass = 0; pass < 20 && deg > 1; ++pass) {
    std::vector<cld> next = z;
    for (std::size_t i = 0; i < deg; ++i) {
      cld denom = a[deg];
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (denom != cld(0)) next[i] = z[i] - horner(a, z[i]).first / denom;
    }
    z = next;
  }
  std::vector<Isolated> out;
  for (std::size_t i = 0; i < deg; ++i) {
    auto [v, err] = horner(a, z[i]);
    long double denom = std::fabs(a[deg]);
    for (std::size_t j = 0; j < deg; ++j)
      if (j != i) denom *= std::abs(z[i] - z[j]);
    if (denom == 0) throw RootIsolationFailure("coincident root approximations for " + f.to_string());
    long double r = static_cast<long double>(deg) * (std::abs(v) + err) / denom * (1.0L + 1e-12L);
    out.push_back({z[i], r});
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (std::abs(out[i].value - out[j].value) <= out[i].radius + out[j].radius)
        throw RootIsolationFailure("inclusion disks overlap for " + f.to_string());
  return out;
}

}  // namespace detail

/// Roots of z^-h P, each with a certified error radius and multiplicity,
/// sorted by (real, imag). Roots whose disk meets the real axis are reported
/// as real.
inline RootSet find_roots(const LaurentPoly& p, double precision = 1e-12) {
  if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
  RootSet rs{{}, p.leading(), p.low()};
  const auto factors = squarefree_decomposition(p.normalized());
  for (std::size_t m = 0; m < factors.size(); ++m) {
    if (factors[m].span() == 0) continue;
    for (const auto& iso : detail::isolate_simple_roots(factors[m])) {
      Root r;
      long double re = iso.value.real(), im = iso.value.imag();
      long double rad = iso.radius;
      if (std::fabs(im) <= rad) {
        rad += std::fabs(im);
        im = 0;
      }
      r.value = std::complex<double>(static_cast<double>(re), static_cast<double>(im));
      rad += std::abs(std::complex<long double>(re, im)) * std::numeric_limits<double>::epsilon();
      r.error_radius = static_cast<double>(rad);
      if (r.error_radius > precision)
        throw RootIsolationFailure("cannot certify a root of " + factors[m].to_string() + " to the requested precision");
      r.multiplicity = static_cast<int>(m + 1);
      double dist = std::abs(r.value) - 1.0;
      r.side = dist > r.error_radius ? CircleSide::outside : -dist > r.error_radius ? CircleSide::inside : CircleSide::straddles;
      rs.roots.push_back(r);
    }
  }
  std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return rs;
}

struct Hyperbolicity {
  bool hyperbolic = true;
  double margin = std::numeric_limits<double>::infinity();  ///< min over roots of ||root| - 1|
};

/// No root on the unit circle, decided against a tolerance band: a root disk
/// wholly outside the band counts as off the circle, wholly inside as on it,
/// anything else is Indeterminate.
inline Hyperbolicity is_hyperbolic(const LaurentPoly& p, double tol = 1e-9) {
  Hyperbolicity h;
  for (const auto& r : find_roots(p).roots) {
    double dist = std::fabs(std::abs(r.value) - 1.0);
    h.margin = std::min(h.margin, dist);
    if (dist - r.error_radius > tol) continue;
    if (dist + r.error_radius <= tol) {
      h.hyperbolic = false;
      continue;
    }
    throw Indeterminate("root disk straddles the tolerance band around the unit circle");
  }
  return h;
}

}  // namespace streamzero
