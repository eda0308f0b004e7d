#pragma once

#include <functional>
#include <vector>

#include "streamzero/laurent_poly.hpp"

namespace streamzero {

/// Torus-valued sequence on [start, start + size), or one period of a
/// periodic sequence when `periodic` is set. Values lie in [0, 1).
template <class T>
struct BasicTorusSeq {
  long start = 0;
  std::vector<T> values;
  bool periodic = false;

  long size() const { return static_cast<long>(values.size()); }
  long end() const { return start + size() - 1; }
  bool defined_at(long n) const { return periodic ? !values.empty() : (n >= start && n <= end()); }
  const T& at(long n) const {
    if (periodic) {
      long m = size();
      long i = ((n - start) % m + m) % m;
      return values[static_cast<std::size_t>(i)];
    }
    if (n < start || n > end()) throw std::out_of_range("index outside torus window");
    return values[static_cast<std::size_t>(n - start)];
  }
  /// Window [lo, hi] of a periodic sequence (or a sub-window).
  BasicTorusSeq window(long lo, long hi) const {
    BasicTorusSeq out{lo, {}, false};
    for (long n = lo; n <= hi; ++n) out.values.push_back(at(n));
    return out;
  }
  friend bool operator==(const BasicTorusSeq& a, const BasicTorusSeq& b) {
    return a.start == b.start && a.values == b.values && a.periodic == b.periodic;
  }
};

using TorusSeq = BasicTorusSeq<Rational>;
using TorusSeqF = BasicTorusSeq<double>;

/// (sigma^d x)_n = x_(n+d).
template <class T>
BasicTorusSeq<T> shift(BasicTorusSeq<T> x, long d) {
  x.start -= d;
  return x;
}

/// Integer word; finite words are zero outside [start, start + size).
struct CodeWord {
  long start = 0;
  std::vector<long> letters;
  bool periodic = false;

  long size() const { return static_cast<long>(letters.size()); }
  long end() const { return start + size() - 1; }
  long at(long n) const {
    if (letters.empty()) return 0;
    if (periodic) {
      long m = size();
      return letters[static_cast<std::size_t>(((n - start) % m + m) % m)];
    }
    return (n < start || n > end()) ? 0 : letters[static_cast<std::size_t>(n - start)];
  }
  friend bool operator==(const CodeWord& a, const CodeWord& b) {
    return a.start == b.start && a.letters == b.letters && a.periodic == b.periodic;
  }
};

inline CodeWord shift(CodeWord w, long d) {
  w.start -= d;
  return w;
}

inline Rational reduce_mod1(const Rational& q) { return frac(q); }
inline double reduce_mod1(double x) { return frac(x); }

/// The |a| solutions of a*x = c (mod 1) in [0, 1), ascending; returns the
/// one with index `branch`.
inline Rational solve_mod1(const Integer& a, const Rational& c, std::size_t branch) {
  Integer m = abs(a);
  if (m == 0) throw std::domain_error("solve_mod1 with zero coefficient");
  if (Integer(branch) >= m) throw BranchOutOfRange("branch " + std::to_string(branch) + " with " + m.str() + " solutions");
  Rational base = frac(a < 0 ? Rational(-c) : c);
  return (base + Rational(Integer(branch))) / Rational(m);
}

inline double solve_mod1(const Integer& a, double c, std::size_t branch) {
  Integer m = abs(a);
  if (m == 0) throw std::domain_error("solve_mod1 with zero coefficient");
  if (Integer(branch) >= m) throw BranchOutOfRange("branch " + std::to_string(branch) + " with " + m.str() + " solutions");
  double base = frac(a < 0 ? -c : c);
  return frac((base + static_cast<double>(branch)) / to_double(m));
}

/// Picks a branch among `count` solutions.
using BranchChooser = std::function<std::size_t(std::size_t count)>;

inline BranchChooser fixed_branch(std::size_t b) {
  return [b](std::size_t count) {
    if (b >= count) throw BranchOutOfRange("branch " + std::to_string(b) + " with " + std::to_string(count) + " solutions");
    return b;
  };
}

/// Extends a seed block of length deg(P) at [seed_start, seed_start + deg)
/// to a window [lo, hi] of an element of Omega_P: every constraint
/// (P x x)_i = 0 mod 1 inside the window holds. Forward steps solve for the
/// newest value through the lowest coefficient, backward steps through the
/// highest; the chooser selects among the |coefficient| solutions and is
/// consulted only when there is more than one.
template <class T>
BasicTorusSeq<T> extend_member(const LaurentPoly& p, const std::vector<T>& seed, long seed_start, long lo, long hi,
                               const BranchChooser& choose = fixed_branch(0)) {
  const auto a = p.dense();
  const std::size_t d = a.size() - 1;
  if (seed.size() != d) throw InconsistentWindow("seed length must equal the degree " + std::to_string(d));
  const long seed_end = seed_start + static_cast<long>(d) - 1;
  if (lo > seed_start || hi < seed_end) throw InconsistentWindow("window must contain the seed");
  std::vector<T> v(static_cast<std::size_t>(hi - lo + 1), T(0));
  auto at = [&](long n) -> T& { return v[static_cast<std::size_t>(n - lo)]; };
  for (std::size_t i = 0; i < d; ++i) at(seed_start + static_cast<long>(i)) = reduce_mod1(seed[i]);
  const std::size_t m0 = static_cast<std::size_t>(abs(a[0]));
  const std::size_t md = static_cast<std::size_t>(abs(a[d]));
  for (long n = seed_end + 1; n <= hi; ++n) {
    T c(0);
    for (std::size_t j = 1; j <= d; ++j) c -= T(a[j]) * at(n - static_cast<long>(j));
    at(n) = solve_mod1(a[0], c, m0 == 1 ? 0 : choose(m0));
  }
  for (long n = seed_start - 1; n >= lo; --n) {
    T c(0);
    for (std::size_t j = 0; j < d; ++j) c -= T(a[j]) * at(n + static_cast<long>(d - j));
    at(n) = solve_mod1(a[d], c, md == 1 ? 0 : choose(md));
  }
  return BasicTorusSeq<T>{lo, std::move(v), false};
}

namespace detail {

inline bool is_integer(const Rational& q) { return den(q) == 1; }
inline bool is_integer(double x, double tol) { return std::fabs(x - std::round(x)) <= tol; }

}  // namespace detail

/// (P x x)_i = 0 mod 1 on every index whose terms lie inside the window
/// (every index for periodic sequences).
inline bool is_member(const LaurentPoly& p, const TorusSeq& x) {
  const auto a = p.dense();
  const long d = static_cast<long>(a.size()) - 1;
  long first = x.periodic ? x.start : x.start + d;
  long last = x.periodic ? x.start + x.size() - 1 : x.end();
  for (long i = first; i <= last; ++i) {
    Rational s(0);
    for (long j = 0; j <= d; ++j) s += Rational(a[static_cast<std::size_t>(j)]) * x.at(i - j);
    if (!detail::is_integer(s)) return false;
  }
  return true;
}

}  // namespace streamzero
