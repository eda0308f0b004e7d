#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "streamzero/inverse.hpp"
#include "streamzero/linalg.hpp"
#include "streamzero/parallel.hpp"
#include "streamzero/torus.hpp"

namespace streamzero {

/// P as z^shift * (a_0 + a_1 z + ... + a_k z^k) with a_0 = 1 after an
/// optional global sign flip (Omega_P = Omega_-P).
struct FormThree {
  std::vector<Integer> a;
  long shift = 0;
  bool sign_flipped = false;
  std::size_t degree() const { return a.size() - 1; }
};

inline FormThree form_three(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("zero polynomial");
  FormThree f{p.dense(), p.low(), false};
  if (abs(f.a[0]) != 1) throw UnsupportedConstantTerm("constant term " + f.a[0].str() + " is not +-1 in " + p.to_string());
  if (f.a[0] < 0) {
    for (auto& v : f.a) v = -v;
    f.sign_flipped = true;
  }
  return f;
}

/// Companion matrix of the forward recursion x_(n+k) = -a_k x_n - ... - a_1 x_(n+k-1):
/// ones on the superdiagonal, last row (-a_k, ..., -a_1).
inline DenseMatrix<Integer> companion(const LaurentPoly& p) {
  FormThree f = form_three(p);
  const std::size_t k = f.degree();
  DenseMatrix<Integer> m(k, std::vector<Integer>(k, Integer(0)));
  for (std::size_t i = 0; i + 1 < k; ++i) m[i][i + 1] = 1;
  for (std::size_t j = 0; j < k; ++j) m[k - 1][j] = -f.a[k - j];
  return m;
}

struct Alphabet {
  long lo = 0;  ///< k_*
  long hi = 0;  ///< k^*
  bool contains(long l) const { return l >= lo && l <= hi; }
  long size() const { return hi - lo + 1; }
};

/// {k_*, ..., k^*} with k_* = min(sum of negative coefficients + 1, 0) and
/// k^* = max(sum of positive coefficients - 1, 0).
inline Alphabet alphabet(const LaurentPoly& p) {
  Integer neg = 0, pos = 0;
  for (const auto& [e, v] : p.coeffs()) (v < 0 ? neg : pos) += v;
  return {std::min(to_long(neg + 1), 0L), std::max(to_long(pos - 1), 0L)};
}

/// Orbit window with the seed at indices [0, k), `steps_fwd` values after it
/// and `steps_back` before it; backward steps take the given branch.
template <class T>
BasicTorusSeq<T> orbit(const LaurentPoly& p, const std::vector<T>& seed, long steps_fwd, long steps_back,
                       std::size_t branch = 0) {
  FormThree f = form_three(p);
  const long k = static_cast<long>(f.degree());
  if (Integer(branch) >= abs(f.a.back())) throw BranchOutOfRange("branch must be below |a_k| = " + abs(f.a.back()).str());
  if (steps_fwd < 0 || steps_back < 0) throw std::invalid_argument("negative step count");
  return extend_member(LaurentPoly::from_dense(f.a), seed, 0, -steps_back, k - 1 + steps_fwd, fixed_branch(branch));
}

/// The purely periodic orbit through the seed, one period starting at index 0;
/// nullopt if the seed does not recur within max_period steps.
inline std::optional<TorusSeq> periodic_orbit(const LaurentPoly& p, const std::vector<Rational>& seed, long max_period = 1'000'000) {
  FormThree f = form_three(p);
  const std::size_t k = f.degree();
  if (seed.size() != k) throw InconsistentWindow("seed length must equal the degree");
  std::vector<Rational> start;
  for (const auto& v : seed) start.push_back(frac(v));
  if (k == 0) return TorusSeq{0, {Rational(0)}, true};
  std::vector<Rational> vals = start;
  for (long step = 1; step <= max_period; ++step) {
    Rational c(0);
    const std::size_t n = vals.size();
    for (std::size_t j = 1; j <= k; ++j) c -= Rational(f.a[j]) * vals[n - j];
    vals.push_back(frac(c));
    if (std::equal(start.begin(), start.end(), vals.end() - static_cast<long>(k))) {
      vals.resize(static_cast<std::size_t>(step));
      return TorusSeq{0, std::move(vals), true};
    }
  }
  return std::nullopt;
}

/// Code word P x x of an orbit; the letters must be integers.
/// Letters start at the first index fully determined by the window; a
/// periodic input gives one period starting there.
template <class T>
CodeWord encode(const LaurentPoly& p, const BasicTorusSeq<T>& x) {
  const auto a = p.dense();
  const long h = p.low();
  const long d = static_cast<long>(a.size()) - 1;
  CodeWord w;
  w.periodic = x.periodic;
  const long first = x.start + h + d;
  const long last = x.periodic ? first + x.size() - 1 : x.end() + h;
  w.start = first;
  for (long i = first; i <= last; ++i) {
    T s(0);
    for (long j = 0; j <= d; ++j) s += T(a[static_cast<std::size_t>(j)]) * x.at(i - h - j);
    long letter;
    if constexpr (std::is_same_v<T, Rational>) {
      if (den(s) != 1) throw NotAnOrbit("letter at index " + std::to_string(i) + " is " + to_string(s));
      letter = to_long(num(s));
    } else {
      if (!detail::is_integer(s, 1e-9)) throw NotAnOrbit("letter at index " + std::to_string(i) + " is not an integer");
      letter = std::lround(s);
    }
    w.letters.push_back(letter);
  }
  return w;
}

/// Exact solution x of P x x = delta for a periodic word, one period aligned
/// with the word; values are not reduced mod 1.
inline TorusSeq preimage_periodic(const LaurentPoly& p, const CodeWord& delta) {
  if (!delta.periodic) throw std::invalid_argument("word is not periodic");
  if (delta.letters.empty()) throw std::invalid_argument("empty word");
  const auto a = p.dense();
  const std::size_t d = a.size() - 1;
  const long h = p.low();
  const long m = delta.size();
  const long b = delta.start;
  // (P~ x x)_t = delta_(t+h); affine forms in the unknown state (x_(b-d), ..., x_(b-1)).
  using Form = std::vector<Rational>;  // [constant, coefficients...]
  std::vector<Form> forms;
  for (std::size_t i = 0; i < d; ++i) {
    Form f(d + 1, Rational(0));
    f[i + 1] = 1;
    forms.push_back(std::move(f));
  }
  const Rational inv_a0 = Rational(1) / Rational(a[0]);
  for (long t = b; t < b + m; ++t) {
    Form f(d + 1, Rational(0));
    f[0] = Rational(delta.at(t + h));
    const std::size_t n = forms.size();
    for (std::size_t j = 1; j <= d; ++j) {
      if (a[j] == 0) continue;
      const Rational aj(a[j]);
      const Form& g = forms[n - j];
      for (std::size_t c = 0; c <= d; ++c)
        if (g[c] != 0) f[c] -= aj * g[c];
    }
    for (auto& v : f) v *= inv_a0;
    forms.push_back(std::move(f));
  }
  std::vector<Rational> state;
  if (d > 0) {
    DenseMatrix<Rational> lhs(d, std::vector<Rational>(d, Rational(0)));
    std::vector<Rational> rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Form& last = forms[static_cast<std::size_t>(m) + i];
      for (std::size_t c = 0; c < d; ++c) lhs[i][c] = (c == i ? Rational(1) : Rational(0)) - last[c + 1];
      rhs[i] = last[0];
    }
    auto sol = solve_linear(std::move(lhs), std::move(rhs));
    if (!sol) throw NotHyperbolic("no unique periodic solution: a root of unity divides " + p.to_string());
    state = std::move(*sol);
  }
  TorusSeq x{b, {}, true};
  for (long t = 0; t < m; ++t) {
    const Form& f = forms[d + static_cast<std::size_t>(t)];
    Rational v = f[0];
    for (std::size_t c = 0; c < d; ++c) v += f[c + 1] * state[c];
    x.values.push_back(v);
  }
  return x;
}

/// P^-1 x delta for a finite word: exact finite part plus tails.
inline GeometricTails preimage_finite(const LaurentPoly& p, const CodeWord& delta, double precision = 1e-12) {
  if (delta.periodic) throw std::invalid_argument("word is periodic");
  LaurentPoly::Coeffs c;
  for (long i = delta.start; i <= delta.end(); ++i) c[i] += delta.at(i);
  return rational_inverse(LaurentPoly(std::move(c)), p, precision);
}

namespace detail {

inline bool in_unit_interval(const Rational& v) { return v >= 0 && v < 1; }

inline void require_hyperbolic(const LaurentPoly& p) {
  if (!is_hyperbolic(p).hyperbolic) throw NotHyperbolic(p.to_string() + " has a root on the unit circle");
}

}  // namespace detail

/// Exact decoding on [lo, hi]: periodic words, or finite words whose
/// preimage is finitely supported. Throws NotAdmissible when a value falls
/// outside [0, 1).
inline TorusSeq decode(const LaurentPoly& p, const CodeWord& delta, long lo, long hi) {
  detail::require_hyperbolic(p);
  TorusSeq out{lo, {}, false};
  if (delta.periodic) {
    TorusSeq x = preimage_periodic(p, delta);
    for (const auto& v : x.values)
      if (!detail::in_unit_interval(v)) throw NotAdmissible("preimage value " + to_string(v) + " outside [0,1)");
    return x.window(lo, hi);
  }
  GeometricTails g = preimage_finite(p, delta);
  if (!g.tails.empty()) throw ExactnessUnavailable("preimage has geometric tails; use float decoding");
  for (const auto& [n, v] : g.finite.entries())
    if (!detail::in_unit_interval(v)) throw NotAdmissible("preimage value " + to_string(v) + " at index " + std::to_string(n));
  for (long n = lo; n <= hi; ++n) out.values.push_back(g.finite.at(n));
  return out;
}

/// Float decoding on [lo, hi] within `precision`.
inline TorusSeqF decode_float(const LaurentPoly& p, const CodeWord& delta, long lo, long hi, double precision = 1e-12) {
  TorusSeqF out{lo, {}, false};
  if (delta.periodic) {
    TorusSeq x = decode(p, delta, lo, hi);
    for (const auto& v : x.values) out.values.push_back(to_double(v));
    return out;
  }
  GeometricTails g = preimage_finite(p, delta, precision);
  const double err = g.evaluation_error();
  if (err > precision) throw InsufficientWindow("evaluation error exceeds precision");
  for (long n = lo; n <= hi; ++n) {
    double v = g.at(n);
    if (v < -err || v >= 1.0 + err) throw NotAdmissible("preimage value " + std::to_string(v) + " at index " + std::to_string(n));
    out.values.push_back(std::clamp(v, 0.0, std::nextafter(1.0, 0.0)));
  }
  return out;
}

enum class Verdict { yes, no, boundary };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "boundary";
  }
}

namespace detail {

/// Sign behaviour of the tails on one side far from the core.
struct SideAnalysis {
  Verdict verdict = Verdict::yes;
  long cutoff = 0;  ///< beyond this index (outward) every value is certified in (0, 1)
};

inline SideAnalysis analyse_side(const GeometricTails& g, TailSide side, long inner_edge) {
  const long dir = side == TailSide::causal ? 1 : -1;
  std::vector<const Tail*> mine;
  for (const auto& t : g.tails)
    if (t.side == side) mine.push_back(&t);
  SideAnalysis out{Verdict::yes, inner_edge};
  if (mine.empty()) return out;
  long double rho = 0;
  for (auto* t : mine) rho = std::max(rho, t->modulus());
  std::vector<const Tail*> dom;
  for (auto* t : mine)
    if (t->modulus() >= rho * (1.0L - 1e-9L)) dom.push_back(t);
  int top = 0;
  for (auto* t : dom) top = std::max(top, t->order);
  std::vector<const Tail*> lead;
  for (auto* t : dom)
    if (t->order == top) lead.push_back(t);
  if (lead.size() != 1) {
    bool pair = lead.size() == 2 && lead[0]->root.imag() != 0 && std::abs(lead[0]->root - std::conj(lead[1]->root)) <= 1e-9 * std::abs(lead[0]->root);
    if (pair && dom.size() == 2) return {Verdict::no, inner_edge};
    return {Verdict::boundary, inner_edge};
  }
  const Tail& T = *lead[0];
  if (T.root.imag() != 0) return {Verdict::no, inner_edge};
  if (T.root.real() < 0) return {Verdict::no, inner_edge};
  if (T.coeff.real() < 0) return {Verdict::no, inner_edge};
  for (long step = 0; step < 2'000'000; ++step) {
    long n = inner_edge + dir * step;
    long d = T.offset(n);
    if (d < 0) continue;
    long double dv = T.magnitude(d);
    long double others = 0;
    bool monotone = T.growth(d) <= 1.0L;
    for (auto* t : mine) {
      if (t == &T) continue;
      long dt = t->offset(n);
      if (dt < 0) continue;
      others += t->magnitude(dt);
      if (t->growth(dt) > T.growth(d)) monotone = false;
    }
    if (monotone && others <= dv / 2 && dv * 1.5L < 1.0L && dv > 0) return {Verdict::yes, n};
  }
  return {Verdict::boundary, inner_edge};
}

}  // namespace detail

/// Whether delta is the code of a point of Omega_P. Periodic words are
/// decided exactly; finite words use the exact finite part, certified tail
/// asymptotics and a float core, and may return `boundary`.
inline Verdict is_admissible(const LaurentPoly& p, const CodeWord& delta, double precision = 1e-12) {
  Alphabet k = alphabet(p);
  for (long l : delta.letters)
    if (!k.contains(l)) return Verdict::no;
  detail::require_hyperbolic(p);
  if (delta.periodic) {
    TorusSeq x = preimage_periodic(p, delta);
    for (const auto& v : x.values)
      if (!detail::in_unit_interval(v)) return Verdict::no;
    return Verdict::yes;
  }
  LaurentPoly::Coeffs c;
  for (long i = delta.start; i <= delta.end(); ++i) c[i] += delta.at(i);
  LaurentPoly num_poly(std::move(c));
  if (num_poly.is_zero()) return Verdict::yes;
  LaurentPoly g = poly_gcd(num_poly, p);
  LaurentPoly num_r = *poly_divide_exact(num_poly, g);
  LaurentPoly p_r = *poly_divide_exact(p, g);
  GeometricTails x = rational_inverse(num_r, p_r, precision);
  if (x.tails.empty()) {
    for (const auto& [n, v] : x.finite.entries())
      if (!detail::in_unit_interval(v)) return Verdict::no;
    return Verdict::yes;
  }
  long core_lo = x.finite.empty() ? x.tails.front().start : x.finite.lo();
  long core_hi = x.finite.empty() ? x.tails.front().start : x.finite.hi();
  for (const auto& t : x.tails) {
    core_lo = std::min(core_lo, t.start);
    core_hi = std::max(core_hi, t.start);
  }
  auto right = detail::analyse_side(x, TailSide::causal, core_hi + 1);
  auto left = detail::analyse_side(x, TailSide::anticausal, core_lo - 1);
  if (right.verdict == Verdict::no || left.verdict == Verdict::no) return Verdict::no;
  bool undecided = right.verdict == Verdict::boundary || left.verdict == Verdict::boundary;
  long lo = left.cutoff, hi = right.cutoff;
  if (hi - lo > 2'000'000) return Verdict::boundary;
  const double err = x.evaluation_error();
  for (long n = lo; n <= hi; ++n) {
    double v = x.at(n);
    if (v < -err || v >= 1.0 + err) return Verdict::no;
    if (v < err || v >= 1.0 - err) {
      Rational exact = x.finite.at(n);
      bool tails_vanish = true;
      for (const auto& t : x.tails)
        if (t.offset(n) >= 0) tails_vanish = false;
      if (!tails_vanish) undecided = true;
      else if (!detail::in_unit_interval(exact)) return Verdict::no;
    }
  }
  return undecided ? Verdict::boundary : Verdict::yes;
}

/// Topological entropy of sigma on Omega_P: log|leading coefficient| plus
/// the sum of log|theta| over roots outside the unit circle (equivalently the
/// sum of log|lambda| over eigenvalues of M_P exceeding 1 in form (3)).
inline double entropy_exact(const LaurentPoly& p) {
  RootSet rs = find_roots(p);
  long double h = std::log(std::fabs(to_long_double(rs.leading_coeff)));
  for (const auto& r : rs.roots) h += r.multiplicity * std::max(0.0L, std::log(static_cast<long double>(std::abs(r.value))));
  return static_cast<double>(h);
}

struct EntropyRow {
  long n = 0;
  std::uint64_t count = 0;
  double estimate = 0;     ///< (1/n) log count
  double conditional = 0;  ///< log(count_n / count_(n-1))
};

struct EntropyOptions {
  /// Backward steps enumerated over all |a_k| branches before reading words;
  /// negative selects the largest depth keeping the seed count <= 2^24.
  long branch_depth = -1;
  unsigned threads = 0;  ///< 0 selects default_threads()
};

struct EntropyEstimate {
  std::vector<EntropyRow> rows;
  long branch_depth = 0;
  std::uint64_t seeds = 0;
};

/// Counts distinct length-n words over all orbits seeded on the grid
/// (i_1/grid, ..., i_k/grid), each extended backward over every branch for
/// `branch_depth` steps; words are read from the start of the extended block.
inline EntropyEstimate entropy_estimate(const LaurentPoly& p, long word_len, long grid, EntropyOptions opts = {}) {
  FormThree f = form_three(p);
  const std::size_t k = f.degree();
  if (grid < 2) throw std::invalid_argument("grid must be at least 2");
  if (word_len < 1) throw std::invalid_argument("word length must be positive");
  if (k == 0) {
    EntropyEstimate e;
    for (long n = 1; n <= word_len; ++n) e.rows.push_back({n, 1, 0.0, 0.0});
    e.seeds = 1;
    return e;
  }
  std::vector<std::int64_t> a;
  for (const auto& v : f.a) a.push_back(to_long(v));
  const std::int64_t branches = std::llabs(a[k]);
  std::uint64_t base_seeds = 1;
  for (std::size_t i = 0; i < k; ++i) base_seeds *= static_cast<std::uint64_t>(grid);
  long depth = opts.branch_depth;
  if (branches == 1) depth = 0;
  if (depth < 0) {
    depth = 0;
    std::uint64_t total = base_seeds;
    while (depth < word_len && total * static_cast<std::uint64_t>(branches) <= (1ULL << 24)) {
      total *= static_cast<std::uint64_t>(branches);
      ++depth;
    }
  }
  std::int64_t scale = 1;
  for (long i = 0; i < depth; ++i) scale *= branches;
  const std::int64_t G = grid * scale;
  std::int64_t coeff_sum = 0;
  for (auto v : a) coeff_sum += std::llabs(v);
  if (static_cast<long double>(G) * static_cast<long double>(coeff_sum) > 4e18L) throw Overflow("grid too fine for 64-bit arithmetic");
  const Alphabet alpha = alphabet(LaurentPoly::from_dense(f.a));
  const std::uint64_t K = static_cast<std::uint64_t>(alpha.size());
  if (std::pow(static_cast<long double>(K), word_len) > 1.8e19L) throw Overflow("word length too large for 64-bit word codes");
  const std::uint64_t total_seeds = base_seeds * static_cast<std::uint64_t>(std::pow(static_cast<long double>(branches), depth) + 0.5L);
  const unsigned threads = opts.threads ? opts.threads : default_threads();
  auto mod = [G](std::int64_t v) { v %= G; return v < 0 ? v + G : v; };

  auto blocks = parallel_blocks(static_cast<std::size_t>(base_seeds), threads, [&](std::size_t b, std::size_t e, std::size_t) {
    std::vector<std::uint64_t> codes;
    std::vector<std::int64_t> window(k + static_cast<std::size_t>(depth));
    std::vector<std::int64_t> state(k);
    for (std::size_t s = b; s < e; ++s) {
      std::size_t rest = s;
      for (std::size_t i = 0; i < k; ++i) {
        window[static_cast<std::size_t>(depth) + i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(grid)) * scale;
        rest /= static_cast<std::size_t>(grid);
      }
      // Enumerate backward branches by a mixed-radix counter.
      std::uint64_t combos = 1;
      for (long i = 0; i < depth; ++i) combos *= static_cast<std::uint64_t>(branches);
      for (std::uint64_t c = 0; c < combos; ++c) {
        std::uint64_t digits = c;
        for (long pos = depth - 1; pos >= 0; --pos) {
          // a_k x_pos = -(sum_{j<k} a_j x_(pos+k-j)) mod 1, in units of 1/G.
          std::int64_t rhs = 0;
          for (std::size_t j = 0; j < k; ++j) rhs -= a[j] * window[static_cast<std::size_t>(pos) + k - j];
          rhs = mod(rhs);
          const std::int64_t t = static_cast<std::int64_t>(digits % static_cast<std::uint64_t>(branches));
          digits /= static_cast<std::uint64_t>(branches);
          std::int64_t x = rhs / branches + t * (G / branches);
          window[static_cast<std::size_t>(pos)] = mod(a[k] < 0 ? -x : x);
        }
        for (std::size_t i = 0; i < k; ++i) state[i] = window[i];
        std::uint64_t code = 0;
        for (long step = 0; step < word_len; ++step) {
          std::int64_t sum = 0;
          for (std::size_t j = 1; j <= k; ++j) sum += a[j] * state[k - j];
          const std::int64_t xi = mod(-sum);
          const std::int64_t letter = (xi + sum) / G;
          code = code * K + static_cast<std::uint64_t>(letter - alpha.lo);
          for (std::size_t i = 0; i + 1 < k; ++i) state[i] = state[i + 1];
          state[k - 1] = xi;
        }
        codes.push_back(code);
      }
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
  });
  std::vector<std::uint64_t> all;
  for (auto& blk : blocks) all.insert(all.end(), blk.begin(), blk.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  EntropyEstimate out;
  out.branch_depth = depth;
  out.seeds = total_seeds;
  std::uint64_t prev = 1;
  for (long n = 1; n <= word_len; ++n) {
    std::uint64_t div = 1;
    for (long i = n; i < word_len; ++i) div *= K;
    std::uint64_t count = 0;
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::uint64_t pre = all[i] / div;
      if (i == 0 || pre != last) ++count;
      last = pre;
    }
    out.rows.push_back({n, count, std::log(static_cast<double>(count)) / static_cast<double>(n),
                        std::log(static_cast<double>(count) / static_cast<double>(prev))});
    prev = count;
  }
  return out;
}

}  // namespace streamzero
