#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "streamzero/resultant.hpp"
#include "streamzero/torus.hpp"

namespace streamzero {

/// dim Omega_P = n - h.
inline long dim_omega(const LaurentPoly& p) { return p.span(); }

namespace detail {

/// Constraints sum_j a_j w[t - j] = 0 (mod den) for every t with t - d >= first.
inline bool window_satisfies(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& w, std::int64_t den,
                             std::size_t only_last = 0) {
  const std::size_t d = a.size() - 1;
  if (w.size() <= d) return true;
  std::size_t from = only_last ? w.size() - only_last : d;
  from = std::max(from, d);
  for (std::size_t t = from; t < w.size(); ++t) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j <= d; ++j) s += a[j] * w[t - j];
    if (s % den != 0) return false;
  }
  return true;
}

inline std::vector<std::int64_t> small_coeffs(const LaurentPoly& p) {
  std::vector<std::int64_t> out;
  for (const auto& v : p.dense()) out.push_back(to_long(v));
  return out;
}

}  // namespace detail

/// Every grid point of ((1/grid)Z/Z)^k is the restriction of an element of
/// Omega_P to k consecutive indices. Windows no longer than deg P are
/// padded and extended constructively; longer windows must satisfy the
/// recursion internally.
inline bool dim_check(const LaurentPoly& p, long k, long grid) {
  if (k < 0 || grid < 1) throw std::invalid_argument("dim_check needs k >= 0 and grid >= 1");
  if (k == 0) return true;
  const long d = p.span();
  const auto a = detail::small_coeffs(p);
  std::vector<std::int64_t> w(static_cast<std::size_t>(k), 0);
  while (true) {
    if (k <= d) {
      std::vector<Rational> seed(static_cast<std::size_t>(d), Rational(0));
      for (long i = 0; i < k; ++i) seed[static_cast<std::size_t>(i)] = Rational(w[static_cast<std::size_t>(i)], grid);
      TorusSeq x = extend_member(p.normalized(), seed, 0, -d, 2 * d);
      if (!is_member(p, x)) return false;
      for (long i = 0; i < k; ++i)
        if (x.at(i) != Rational(w[static_cast<std::size_t>(i)], grid)) return false;
    } else {
      std::vector<std::int64_t> scaled(w);
      if (!detail::window_satisfies(a, scaled, grid)) return false;
    }
    std::size_t i = 0;
    while (i < w.size() && ++w[i] == grid) w[i++] = 0;
    if (i == w.size()) return true;
  }
}

/// All restrictions to [lo, hi] of sequences in Omega_P and Omega_Q. Their
/// values lie in (1/Delta)Z/Z, so the search runs over consistent windows of
/// that grid, keeping only states on bi-infinite paths.
inline std::vector<TorusSeq> enumerate_common_zeros(const LaurentPoly& p, const LaurentPoly& q, long lo, long hi,
                                                    std::size_t max_states = 2'000'000) {
  if (hi < lo) throw std::invalid_argument("empty window");
  Integer delta = resultant(p, q).delta;
  if (delta == 0) throw NotCoprime("resultant vanishes");
  const std::int64_t D = to_long(abs(delta));
  const auto a = detail::small_coeffs(p);
  const auto b = detail::small_coeffs(q);
  const std::size_t L = std::max<std::size_t>({a.size() - 1, b.size() - 1, 1});
  long double space = std::pow(static_cast<long double>(D), static_cast<long double>(L));
  if (space > static_cast<long double>(max_states)) throw SearchTooLarge("Delta^L exceeds the state budget");

  auto ok = [&](const std::vector<std::int64_t>& w, std::size_t last) {
    return detail::window_satisfies(a, w, D, last) && detail::window_satisfies(b, w, D, last);
  };
  std::vector<std::vector<std::int64_t>> states;
  std::vector<std::int64_t> cur;
  std::function<void()> grow = [&]() {
    if (cur.size() == L) {
      states.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v < D; ++v) {
      cur.push_back(v);
      if (ok(cur, 1)) grow();
      cur.pop_back();
    }
  };
  grow();
  std::map<std::vector<std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = i;
  std::vector<std::vector<std::size_t>> succ(states.size());
  std::vector<std::size_t> indeg(states.size(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<std::int64_t> w = states[i];
    w.push_back(0);
    for (std::int64_t v = 0; v < D; ++v) {
      w.back() = v;
      if (!ok(w, 1)) continue;
      std::vector<std::int64_t> next(w.begin() + 1, w.end());
      auto it = index.find(next);
      if (it != index.end()) succ[i].push_back(it->second);
    }
  }
  std::vector<bool> alive(states.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> in(states.size(), 0), out(states.size(), 0);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!alive[i]) continue;
      for (auto j : succ[i])
        if (alive[j]) {
          ++out[i];
          ++in[j];
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i)
      if (alive[i] && (in[i] == 0 || out[i] == 0)) {
        alive[i] = false;
        changed = true;
      }
  }
  const std::size_t W = static_cast<std::size_t>(hi - lo + 1);
  std::set<std::vector<std::int64_t>> found;
  std::vector<std::int64_t> path;
  std::function<void(std::size_t)> walk = [&](std::size_t s) {
    if (path.size() >= W) {
      found.insert(std::vector<std::int64_t>(path.begin(), path.begin() + static_cast<long>(W)));
      return;
    }
    for (auto j : succ[s]) {
      if (!alive[j]) continue;
      path.push_back(states[j].back());
      walk(j);
      path.pop_back();
    }
  };
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!alive[i]) continue;
    path = states[i];
    walk(i);
  }
  std::vector<TorusSeq> outv;
  for (const auto& w : found) {
    TorusSeq x{lo, {}, false};
    for (auto v : w) x.values.push_back(Rational(v, D));
    outv.push_back(std::move(x));
  }
  return outv;
}

/// (poly x x)_i on the indices fully determined by the window of x,
/// reduced mod 1 when `reduce` is set.
inline TorusSeq apply_poly(const LaurentPoly& poly, const TorusSeq& x, bool reduce = true) {
  if (poly.is_zero()) {
    TorusSeq z{x.start, std::vector<Rational>(x.values.size(), Rational(0)), x.periodic};
    return z;
  }
  long first = x.periodic ? x.start : x.start + poly.high();
  long last = x.periodic ? x.end() : x.end() + poly.low();
  TorusSeq out{first, {}, x.periodic};
  for (long i = first; i <= last; ++i) {
    Rational s(0);
    for (const auto& [e, c] : poly.coeffs()) s += Rational(c) * x.at(i - e);
    out.values.push_back(reduce ? frac(s) : s);
  }
  return out;
}

/// D * (Q x xi) = 0 mod 1 on the checkable window of every sample.
inline bool factor_check(const LaurentPoly& /*p*/, const LaurentPoly& q, const std::vector<TorusSeq>& samples, const Integer& D) {
  for (const auto& xi : samples) {
    TorusSeq y = apply_poly(LaurentPoly::constant(D) * q, xi, false);
    for (const auto& v : y.values)
      if (den(v) != 1) return false;
  }
  return true;
}

struct DecompositionWitness {
  TorusSeq u;  ///< in Omega_P
  TorusSeq v;  ///< in Omega_Q
  Integer scale;
  LaurentPoly a;
  LaurentPoly b;
};

/// u = (Delta - P A) x x and v = (Delta - Q B) x x with A P + B Q = Delta,
/// on the common window where both are determined; verified exactly.
inline DecompositionWitness decompose(const LaurentPoly& p, const LaurentPoly& q, const TorusSeq& x) {
  BezoutResult bz = bezout(p, q);
  if (!is_member(p * q, x)) throw InconsistentWindow("sample is not in Omega_(P x Q) on its window");
  const LaurentPoly D = LaurentPoly::constant(bz.delta);
  const LaurentPoly U = D - p * bz.a;
  const LaurentPoly V = D - q * bz.b;
  TorusSeq u = apply_poly(U, x);
  TorusSeq v = apply_poly(V, x);
  long lo = std::max(u.start, v.start), hi = std::min(u.end(), v.end());
  if (x.periodic) {
    lo = x.start;
    hi = x.end();
  }
  const long need = std::max(p.span(), q.span());
  if (hi - lo < need) throw WindowTooShort("window too short for the Bezout convolutions");
  DecompositionWitness w{u.window(lo, hi), v.window(lo, hi), bz.delta, bz.a, bz.b};
  if (x.periodic) {
    w.u.periodic = w.v.periodic = true;
  }
  if (!is_member(p, w.u) || !is_member(q, w.v)) throw std::logic_error("decomposition witness failed membership");
  for (long n = lo; n <= hi; ++n)
    if (frac(w.u.at(n) + w.v.at(n)) != frac(Rational(bz.delta) * x.at(n))) throw std::logic_error("u + v != Delta x");
  return w;
}

/// The decomposition map is additive, commutes with the shift and is
/// injective on the samples; requires Delta = +-1.
inline bool conjugacy_check(const LaurentPoly& q, const LaurentPoly& r, const std::vector<TorusSeq>& samples) {
  Integer delta = resultant(q, r).delta;
  if (delta == 0) throw NotCoprime("resultant vanishes");
  if (abs(delta) != 1) throw NotUnimodular("resultant is " + delta.str());
  std::vector<DecompositionWitness> images;
  for (const auto& x : samples) images.push_back(decompose(q, r, x));
  auto same_on = [](const TorusSeq& s, const TorusSeq& t, long lo, long hi) {
    for (long n = lo; n <= hi; ++n)
      if (s.at(n) != t.at(n)) return false;
    return true;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& x = samples[i];
    const auto& wi = images[i];
    bool all_zero = true;
    for (long n = wi.u.start; n <= wi.u.end(); ++n)
      if (wi.u.at(n) != 0 || wi.v.at(n) != 0) all_zero = false;
    if (all_zero)
      for (long n = wi.u.start; n <= wi.u.end(); ++n)
        if (x.at(n) != 0) return false;
    if (!x.periodic && x.size() > 1) {
      DecompositionWitness ws = decompose(q, r, shift(x, 1));
      long lo = std::max(ws.u.start, wi.u.start - 1), hi = std::min(ws.u.end(), wi.u.end() - 1);
      if (!same_on(ws.u, shift(wi.u, 1), lo, hi) || !same_on(ws.v, shift(wi.v, 1), lo, hi)) return false;
    }
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const auto& y = samples[j];
      if (y.start != x.start || y.size() != x.size() || y.periodic != x.periodic) continue;
      TorusSeq sum{x.start, {}, x.periodic};
      for (std::size_t t = 0; t < x.values.size(); ++t) sum.values.push_back(frac(x.values[t] + y.values[t]));
      DecompositionWitness ws = decompose(q, r, sum);
      const auto& wj = images[j];
      for (long n = ws.u.start; n <= ws.u.end(); ++n) {
        if (ws.u.at(n) != frac(wi.u.at(n) + wj.u.at(n))) return false;
        if (ws.v.at(n) != frac(wi.v.at(n) + wj.v.at(n))) return false;
      }
      bool images_equal = same_on(wi.u, wj.u, wi.u.start, wi.u.end()) && same_on(wi.v, wj.v, wi.u.start, wi.u.end());
      if (images_equal && !same_on(x, y, wi.u.start, wi.u.end())) return false;
    }
  }
  return true;
}

/// Random window [lo, hi] of an element of Omega_P: seed values with the
/// given denominator and uniformly chosen branches.
template <class Rng>
TorusSeq random_member(const LaurentPoly& p, Rng& rng, long lo, long hi, long denominator) {
  const long d = p.span();
  std::uniform_int_distribution<long> pick(0, denominator - 1);
  std::vector<Rational> seed;
  for (long i = 0; i < d; ++i) seed.push_back(Rational(pick(rng), denominator));
  long seed_start = lo + (hi - lo + 1 - d) / 2;
  BranchChooser choose = [&rng](std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
  };
  return extend_member(p.normalized(), seed, seed_start, lo, hi, choose);
}

}  // namespace streamzero
