#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <variant>
#include <vector>

#include "streamzero/numeric.hpp"

namespace streamzero {

/// Exactly finitely supported stream; no stored zeros.
class FiniteSupport {
 public:
  using Entries = std::map<long, Rational>;

  FiniteSupport() = default;
  explicit FiniteSupport(Entries e) : e_(std::move(e)) { prune(); }
  FiniteSupport(std::initializer_list<std::pair<const long, Rational>> init) : e_(init) { prune(); }

  const Entries& entries() const { return e_; }
  bool empty() const { return e_.empty(); }
  long lo() const { return e_.empty() ? 0 : e_.begin()->first; }
  long hi() const { return e_.empty() ? -1 : e_.rbegin()->first; }
  Rational at(long n) const {
    auto it = e_.find(n);
    return it == e_.end() ? Rational(0) : it->second;
  }
  void set(long n, Rational v) {
    if (v == 0) e_.erase(n);
    else e_[n] = std::move(v);
  }
  double l1() const {
    double s = 0;
    for (const auto& [n, v] : e_) s += std::fabs(to_double(v));
    return s;
  }
  double sup_outside(long lo, long hi) const {
    double s = 0;
    for (const auto& [n, v] : e_)
      if (n < lo || n > hi) s = std::max(s, std::fabs(to_double(v)));
    return s;
  }
  double l1_outside(long lo, long hi) const {
    double s = 0;
    for (const auto& [n, v] : e_)
      if (n < lo || n > hi) s += std::fabs(to_double(v));
    return s;
  }
  friend bool operator==(const FiniteSupport& a, const FiniteSupport& b) { return a.e_ == b.e_; }

 private:
  void prune() {
    for (auto it = e_.begin(); it != e_.end();) it = it->second == 0 ? e_.erase(it) : std::next(it);
  }
  Entries e_;
};

enum class TailSide { causal, anticausal };

/// One geometric tail. With d = n - start (causal) or start - n (anticausal),
/// entry n is coeff * C(d + order - 1, order - 1) * ratio^d for d >= 0 and 0
/// otherwise; ratio is 1/root on the causal side and root on the anticausal side.
struct Tail {
  std::complex<double> root;
  std::complex<double> coeff;
  TailSide side = TailSide::causal;
  long start = 0;
  int order = 1;

  std::complex<long double> ratio() const {
    std::complex<long double> r(root.real(), root.imag());
    return side == TailSide::causal ? 1.0L / r : r;
  }
  long double modulus() const { return std::abs(ratio()); }

  long offset(long n) const { return side == TailSide::causal ? n - start : start - n; }

  std::complex<long double> entry(long n) const {
    long d = offset(n);
    if (d < 0) return 0;
    std::complex<long double> c(coeff.real(), coeff.imag());
    return c * binomial_ld(d + order - 1, order - 1) * std::pow(ratio(), static_cast<long double>(d));
  }

  /// |entry| as a function of the offset d >= 0.
  long double magnitude(long d) const {
    long double c = std::abs(std::complex<long double>(coeff.real(), coeff.imag()));
    return c * binomial_ld(d + order - 1, order - 1) * std::pow(modulus(), static_cast<long double>(d));
  }

  /// f(d+1)/f(d) where f is `magnitude`; nonincreasing in d.
  long double growth(long d) const {
    return modulus() * static_cast<long double>(d + order) / static_cast<long double>(d + 1);
  }

  /// Upper bound on sum of |entries| with offset >= d0.
  long double mass_from(long d0) const {
    d0 = std::max(d0, 0L);
    if (modulus() >= 1.0L) return std::numeric_limits<long double>::infinity();
    long double sum = 0;
    const long double rho = modulus();
    const long double target = (1.0L + rho) / 2.0L;
    for (long d = d0;; ++d) {
      long double f = magnitude(d);
      sum += f;
      long double r = growth(d);
      if (r <= target || f == 0) return sum + (f == 0 ? 0 : f * r / (1.0L - r));
      if (d - d0 > 10'000'000) return std::numeric_limits<long double>::infinity();
    }
  }

  /// max |entry| over offsets >= d0.
  long double sup_from(long d0) const {
    d0 = std::max(d0, 0L);
    if (modulus() >= 1.0L) return std::numeric_limits<long double>::infinity();
    long d = d0;
    while (growth(d) > 1.0L) ++d;
    return magnitude(d);
  }

  /// Offsets of indices outside [lo, hi] split as [0, near_end] and [far_begin, inf).
  void outside_offsets(long lo, long hi, long& near_end, long& far_begin) const {
    if (side == TailSide::causal) {
      near_end = lo - 1 - start;
      far_begin = std::max(0L, hi + 1 - start);
    } else {
      near_end = start - (hi + 1);
      far_begin = std::max(0L, start - (lo - 1));
    }
  }

  long double l1_outside(long lo, long hi) const {
    if (lo > hi) return mass_from(0);
    long near_end, far_begin;
    outside_offsets(lo, hi, near_end, far_begin);
    long double s = mass_from(far_begin);
    if (near_end >= 0) {
      if (near_end > 1'000'000) return mass_from(0);
      for (long d = 0; d <= near_end; ++d) s += magnitude(d);
    }
    return s;
  }

  long double sup_outside(long lo, long hi) const {
    if (lo > hi) return sup_from(0);
    long near_end, far_begin;
    outside_offsets(lo, hi, near_end, far_begin);
    long double s = sup_from(far_begin);
    if (near_end >= 0) s = std::max(s, sup_from(0));
    return s;
  }
};

/// Exact finite part plus a list of geometric tails.
struct GeometricTails {
  FiniteSupport finite;
  std::vector<Tail> tails;

  /// min over tails of 1 - |ratio|; +inf without tails.
  double margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : tails) m = std::min(m, static_cast<double>(1.0L - t.modulus()));
    return m;
  }
  double at(long n) const {
    std::complex<long double> s = 0;
    for (const auto& t : tails) s += t.entry(n);
    return static_cast<double>(s.real() + static_cast<long double>(to_double(finite.at(n))));
  }
  double l1_outside(long lo, long hi) const {
    long double s = finite.l1_outside(lo, hi);
    for (const auto& t : tails) s += t.l1_outside(lo, hi);
    return static_cast<double>(s);
  }
  double sup_outside(long lo, long hi) const {
    long double s = finite.sup_outside(lo, hi);
    for (const auto& t : tails) s += t.sup_outside(lo, hi);
    return static_cast<double>(s);
  }
  double l1() const { return l1_outside(1, 0); }
  double sup() const { return sup_outside(1, 0); }
  /// Rounding error bound of `at` on any index.
  double evaluation_error() const {
    return 64.0 * std::numeric_limits<double>::epsilon() * (sup() + 1.0);
  }
};

/// Float window [lo, lo + size) with a bound on every omitted entry and on
/// the error of every stored entry.
struct Window {
  long lo = 0;
  std::vector<double> values;
  double tail_bound = 0;
  double error = 0;

  long hi() const { return lo + static_cast<long>(values.size()) - 1; }
  bool contains(long n) const { return n >= lo && n <= hi(); }
  double at(long n) const { return contains(n) ? values[static_cast<std::size_t>(n - lo)] : 0.0; }
  double l1() const {
    double s = 0;
    for (double v : values) s += std::fabs(v);
    return s;
  }
  double sup() const {
    double s = tail_bound;
    for (double v : values) s = std::max(s, std::fabs(v));
    return s;
  }
};

using Stream = std::variant<FiniteSupport, GeometricTails, Window>;

inline const char* kind_name(const Stream& s) {
  switch (s.index()) {
    case 0: return "finite";
    case 1: return "geometric";
    default: return "window";
  }
}

/// Range and accuracy used when the exact result of a convolution cannot be
/// represented and a float window is produced instead.
struct ConvolveOptions {
  long lo = -32;
  long hi = 32;
  double precision = 1e-12;
};

inline FiniteSupport identity() { return FiniteSupport{{0, Rational(1)}}; }

/// Value at index n as a double.
inline double value_at(const Stream& s, long n) {
  return std::visit([n](const auto& a) -> double {
    using T = std::decay_t<decltype(a)>;
    if constexpr (std::is_same_v<T, FiniteSupport>) return to_double(a.at(n));
    else return a.at(n);
  }, s);
}

// ---------------------------------------------------------------- shift

/// (sigma^d a)_n = a_(n+d).
inline FiniteSupport shift(const FiniteSupport& a, long d) {
  FiniteSupport::Entries e;
  for (const auto& [n, v] : a.entries()) e[n - d] = v;
  return FiniteSupport(std::move(e));
}

inline GeometricTails shift(const GeometricTails& a, long d) {
  GeometricTails out{shift(a.finite, d), a.tails};
  for (auto& t : out.tails) t.start -= d;
  return out;
}

inline Window shift(Window a, long d) {
  a.lo -= d;
  return a;
}

inline Stream shift(const Stream& s, long d) {
  return std::visit([d](const auto& a) -> Stream { return shift(a, d); }, s);
}

// ---------------------------------------------------------------- window_of

inline Window window_of(const FiniteSupport& a, long lo, long hi) {
  Window w{lo, {}, a.sup_outside(lo, hi), 0.0};
  for (long n = lo; n <= hi; ++n) w.values.push_back(to_double(a.at(n)));
  return w;
}

inline Window window_of(const GeometricTails& a, long lo, long hi) {
  Window w{lo, {}, a.sup_outside(lo, hi), a.evaluation_error()};
  for (long n = lo; n <= hi; ++n) w.values.push_back(a.at(n));
  return w;
}

/// Entries outside the stored range are reported as 0 and their bound is
/// folded into `error`.
inline Window window_of(const Window& a, long lo, long hi) {
  Window w{lo, {}, a.tail_bound, a.error};
  bool missing = false;
  for (long n = lo; n <= hi; ++n) {
    if (!a.contains(n)) missing = true;
    w.values.push_back(a.at(n));
  }
  if (missing) w.error = std::max(w.error, a.tail_bound);
  double outside = 0;
  for (long n = a.lo; n <= a.hi(); ++n)
    if (n < lo || n > hi) outside = std::max(outside, std::fabs(a.at(n)));
  w.tail_bound = std::max(w.tail_bound, outside);
  return w;
}

/// Window [lo, hi] whose stored entries are within `precision` of the truth.
inline Window window_of(const Stream& s, long lo, long hi, double precision = 1e-12) {
  Window w = std::visit([&](const auto& a) { return window_of(a, lo, hi); }, s);
  if (w.error > precision)
    throw InsufficientWindow("window error " + std::to_string(w.error) + " exceeds precision");
  return w;
}

// ---------------------------------------------------------------- add / negate

inline FiniteSupport add(const FiniteSupport& a, const FiniteSupport& b) {
  FiniteSupport::Entries e = a.entries();
  for (const auto& [n, v] : b.entries()) e[n] += v;
  return FiniteSupport(std::move(e));
}

inline GeometricTails add(const GeometricTails& a, const GeometricTails& b) {
  GeometricTails out{add(a.finite, b.finite), a.tails};
  out.tails.insert(out.tails.end(), b.tails.begin(), b.tails.end());
  return out;
}

inline FiniteSupport negate(const FiniteSupport& a) {
  FiniteSupport::Entries e;
  for (const auto& [n, v] : a.entries()) e[n] = -v;
  return FiniteSupport(std::move(e));
}

inline GeometricTails negate(const GeometricTails& a) {
  GeometricTails out{negate(a.finite), a.tails};
  for (auto& t : out.tails) t.coeff = -t.coeff;
  return out;
}

inline Window negate(Window a) {
  for (auto& v : a.values) v = -v;
  return a;
}

inline Stream negate(const Stream& s) {
  return std::visit([](const auto& a) -> Stream { return negate(a); }, s);
}

namespace detail {

inline GeometricTails as_tails(const Stream& s) {
  if (auto* f = std::get_if<FiniteSupport>(&s)) return GeometricTails{*f, {}};
  return std::get<GeometricTails>(s);
}

/// Sum over the union of both ranges when at least one side is a window.
inline Window add_windows(const Window& a, const Window& b) {
  long lo = std::min(a.lo, b.lo);
  long hi = std::max(a.hi(), b.hi());
  Window wa = window_of(a, lo, hi);
  Window wb = window_of(b, lo, hi);
  Window w{lo, {}, wa.tail_bound + wb.tail_bound, wa.error + wb.error};
  for (std::size_t i = 0; i < wa.values.size(); ++i) w.values.push_back(wa.values[i] + wb.values[i]);
  return w;
}

}  // namespace detail

inline Stream add(const Stream& a, const Stream& b) {
  if (std::holds_alternative<FiniteSupport>(a) && std::holds_alternative<FiniteSupport>(b))
    return add(std::get<FiniteSupport>(a), std::get<FiniteSupport>(b));
  if (!std::holds_alternative<Window>(a) && !std::holds_alternative<Window>(b))
    return add(detail::as_tails(a), detail::as_tails(b));
  const Window& w = std::holds_alternative<Window>(a) ? std::get<Window>(a) : std::get<Window>(b);
  const Stream& other = std::holds_alternative<Window>(a) ? b : a;
  return detail::add_windows(w, std::visit([&](const auto& x) { return window_of(x, w.lo, w.hi()); }, other));
}

// ---------------------------------------------------------------- convolve

inline FiniteSupport convolve(const FiniteSupport& a, const FiniteSupport& b) {
  FiniteSupport::Entries e;
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries()) e[i + j] += x * y;
  return FiniteSupport(std::move(e));
}

/// Finite support times tails: each tail is shifted by j and scaled by f_j.
inline GeometricTails convolve(const FiniteSupport& f, const GeometricTails& g) {
  GeometricTails out{convolve(f, g.finite), {}};
  for (const auto& [j, v] : f.entries()) {
    double s = to_double(v);
    for (Tail t : g.tails) {
      t.start += j;
      t.coeff *= s;
      out.tails.push_back(t);
    }
  }
  return out;
}

namespace detail {

/// Float finite sequence (lo, values) with per-entry error, used as the
/// summable factor when the other factor is a window.
struct FloatFinite {
  long lo = 0;
  std::vector<double> values;
  double error = 0;
  long hi() const { return lo + static_cast<long>(values.size()) - 1; }
  double l1() const {
    double s = 0;
    for (double v : values) s += std::fabs(v);
    return s;
  }
};

inline FloatFinite to_float_finite(const FiniteSupport& f) {
  FloatFinite out{f.lo(), {}, 0.0};
  for (long n = f.lo(); n <= f.hi(); ++n) out.values.push_back(to_double(f.at(n)));
  return out;
}

inline FloatFinite to_float_finite(const Window& w) { return FloatFinite{w.lo, w.values, w.error}; }

inline Window convolve_window_finite(const Window& a, const FloatFinite& f) {
  const double fl1 = f.l1();
  const double amax = a.sup();
  Window w{a.lo + f.lo, {}, a.tail_bound * fl1, 0.0};
  if (f.values.empty() || a.values.empty()) return w;
  w.error = (a.error + a.tail_bound) * fl1 + f.error * static_cast<double>(f.values.size()) * amax;
  for (long n = a.lo + f.lo; n <= a.hi() + f.hi(); ++n) {
    long double s = 0;
    for (long j = f.lo; j <= f.hi(); ++j) s += static_cast<long double>(f.values[static_cast<std::size_t>(j - f.lo)]) * a.at(n - j);
    w.values.push_back(static_cast<double>(s));
  }
  w.error += 4.0 * std::numeric_limits<double>::epsilon() * amax * fl1;
  return w;
}

/// Window (possibly non-summable) times a summable tails stream, on opts range.
inline Window convolve_window_tails(const Window& a, const GeometricTails& b, const ConvolveOptions& opts) {
  const double bl1 = b.l1();
  Window w{opts.lo, {}, a.sup() * bl1, (a.error + a.tail_bound) * bl1 + b.evaluation_error() * a.l1()};
  for (long n = opts.lo; n <= opts.hi; ++n) {
    long double s = 0;
    for (long i = a.lo; i <= a.hi(); ++i) s += static_cast<long double>(a.at(i)) * b.at(n - i);
    w.values.push_back(static_cast<double>(s));
  }
  return w;
}

/// Truncation range for `a` so that the omitted mass times sup|b| is within budget.
inline std::pair<long, long> truncation_range(const GeometricTails& a, double sup_b, double budget) {
  long centre_lo = a.finite.empty() ? 0 : a.finite.lo();
  long centre_hi = a.finite.empty() ? 0 : a.finite.hi();
  for (const auto& t : a.tails) {
    centre_lo = std::min(centre_lo, t.start);
    centre_hi = std::max(centre_hi, t.start);
  }
  for (long r = 8; r < (1L << 24); r *= 2) {
    if (a.l1_outside(centre_lo - r, centre_hi + r) * sup_b <= budget) return {centre_lo - r, centre_hi + r};
  }
  throw InsufficientWindow("tails decay too slowly to truncate within precision");
}

inline Window convolve_tails_tails(const GeometricTails& a, const GeometricTails& b, const ConvolveOptions& opts) {
  const double sup_b = b.sup();
  auto [ilo, ihi] = truncation_range(a, sup_b, opts.precision / 2);
  Window w{opts.lo, {}, a.l1() * sup_b, a.l1_outside(ilo, ihi) * sup_b};
  double mass = 0;
  std::vector<double> av;
  for (long i = ilo; i <= ihi; ++i) {
    av.push_back(a.at(i));
    mass += std::fabs(av.back());
  }
  for (long n = opts.lo; n <= opts.hi; ++n) {
    long double s = 0;
    for (long i = ilo; i <= ihi; ++i) s += static_cast<long double>(av[static_cast<std::size_t>(i - ilo)]) * b.at(n - i);
    w.values.push_back(static_cast<double>(s));
  }
  w.error += (a.evaluation_error() * b.l1() + b.evaluation_error() * mass) + 4.0 * std::numeric_limits<double>::epsilon() * mass * sup_b;
  return w;
}

}  // namespace detail

/// Convolution (a x b)_n = sum_i a_i b_(n-i).
/// Exact for finite x finite and finite x tails; float window otherwise.
/// Two windows with nonzero tail bounds are not known to be summable.
inline Stream convolve(const Stream& a, const Stream& b, const ConvolveOptions& opts = {}) {
  const bool wa = std::holds_alternative<Window>(a);
  const bool wb = std::holds_alternative<Window>(b);
  if (!wa && !wb) {
    const auto* fa = std::get_if<FiniteSupport>(&a);
    const auto* fb = std::get_if<FiniteSupport>(&b);
    if (fa && fb) return convolve(*fa, *fb);
    if (fa) return convolve(*fa, std::get<GeometricTails>(b));
    if (fb) return convolve(*fb, std::get<GeometricTails>(a));
    return detail::convolve_tails_tails(std::get<GeometricTails>(a), std::get<GeometricTails>(b), opts);
  }
  if (wa && wb) {
    const Window& x = std::get<Window>(a);
    const Window& y = std::get<Window>(b);
    if (y.tail_bound == 0) return detail::convolve_window_finite(x, detail::to_float_finite(y));
    if (x.tail_bound == 0) return detail::convolve_window_finite(y, detail::to_float_finite(x));
    throw NonSummable("both factors are windows with unknown tails");
  }
  const Window& w = wa ? std::get<Window>(a) : std::get<Window>(b);
  const Stream& other = wa ? b : a;
  if (const auto* f = std::get_if<FiniteSupport>(&other)) return detail::convolve_window_finite(w, detail::to_float_finite(*f));
  return detail::convolve_window_tails(w, std::get<GeometricTails>(other), opts);
}

/// max |a_n - b_n| over [lo, hi] plus the accumulated error bounds.
inline double distance_on(const Stream& a, const Stream& b, long lo, long hi) {
  Window wa = std::visit([&](const auto& x) { return window_of(x, lo, hi); }, a);
  Window wb = std::visit([&](const auto& x) { return window_of(x, lo, hi); }, b);
  double d = 0;
  for (std::size_t i = 0; i < wa.values.size(); ++i) d = std::max(d, std::fabs(wa.values[i] - wb.values[i]));
  return d + wa.error + wb.error;
}

}  // namespace streamzero
