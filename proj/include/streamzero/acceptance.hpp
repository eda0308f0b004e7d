#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "streamzero/automorphisms.hpp"
#include "streamzero/inverse.hpp"
#include "streamzero/structure.hpp"

namespace streamzero {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;

  CriterionResult() = default;
  CriterionResult(int i, std::string n) : id(i), name(std::move(n)) {}
};

/// Reference values computed without the library's algorithms.
namespace oracle {

/// Entry n of (z^2 - 3z + 1)^-1 from the closed form
/// -(1/sqrt5)(..., w_-^2, w_-, 1; w_+^-1, w_+^-2, ...), the ';' sitting between n = -1 and n = 0.
inline double golden_inverse_entry(long n) {
  const long double s5 = std::sqrt(5.0L);
  const long double wp = (3.0L + s5) / 2.0L, wm = (3.0L - s5) / 2.0L;
  long double v = n <= -1 ? std::pow(wm, static_cast<long double>(-1 - n)) : std::pow(wp, static_cast<long double>(-(n + 1)));
  return static_cast<double>(-v / s5);
}

using QPoly = std::vector<Rational>;  // ascending

inline Rational power(const Rational& b, long e) {
  Rational r(1);
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Classical resultant by the Euclidean remainder sequence over Q,
/// res(A, B) = prod over roots a of A of lc(A)^deg B * B(a).
inline Rational euclid_resultant(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
  if (db == 0) return power(b[0], da);
  if (da == 0) return power(a[0], db);
  QPoly r = a;
  while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
    Rational f = r.back() / b.back();
    std::size_t off = r.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= f * b[i];
    r.pop_back();
    trim(r);
  }
  if (r.empty()) return 0;
  long dr = static_cast<long>(r.size()) - 1;
  Rational sign = (da * db) % 2 ? Rational(-1) : Rational(1);
  return sign * power(b.back(), da - dr) * euclid_resultant(b, r);
}

/// The library's Sylvester layout (ascending coefficient rows) equals the
/// classical resultant of the coefficient-reversed polynomials.
inline Integer sylvester_delta(const LaurentPoly& p, const LaurentPoly& q) {
  QPoly a, b;
  for (const auto& c : p.dense()) a.push_back(Rational(c));
  for (const auto& c : q.dense()) b.push_back(Rational(c));
  std::reverse(a.begin(), a.end());
  std::reverse(b.begin(), b.end());
  // Reversal drops no degree: both ends of a normalized dense form are nonzero.
  Rational r = euclid_resultant(a, b);
  if (den(r) != 1) throw std::logic_error("non-integral resultant");
  return num(r);
}

/// Exact product of Laurent polynomials by the schoolbook double loop.
inline std::map<long, Integer> naive_product(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<long, Integer> out;
  for (const auto& [i, x] : a.coeffs())
    for (const auto& [j, y] : b.coeffs()) out[i + j] += x * y;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace oracle

namespace detail {

inline bool periodic_equal(const TorusSeq& x, const TorusSeq& y, long lo, long hi) {
  for (long n = lo; n <= hi; ++n)
    if (x.at(n) != y.at(n)) return false;
  return true;
}

inline bool in_class(const IntMatrix& g, const IntMatrix& ref) {
  IntMatrix inv = ref.inverse2();
  return g == ref || g == -ref || g == inv || g == -inv;
}

inline FiniteSupport random_finite(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> len(0, 5), pos(-6, 6), nd(-9, 9), dd(1, 6);
  FiniteSupport f;
  long n = len(rng);
  for (long i = 0; i < n; ++i) f.set(pos(rng), Rational(nd(rng), dd(rng)));
  return f;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace detail

/// Pinned tolerances.
struct AcceptanceTolerances {
  double golden_entry = 1e-10;
  double inverse_identity = 1e-9;
  double inverse_seconds = 1.0;
  double entropy_exact = 1e-6;
  double entropy_estimate_golden = 0.05;
  double entropy_estimate_three = 0.07;
  double entropy_seconds = 60.0;
  double additivity = 1e-9;
};

inline CriterionResult criterion_inverse(const AcceptanceTolerances& tol) {
  CriterionResult r{1, "golden inverse closed form"};
  auto t0 = std::chrono::steady_clock::now();
  LaurentPoly p = parse_poly("z^2-3z+1");
  Stream inv = inverse(p);
  double worst = 0;
  for (long n = -20; n <= 20; ++n) worst = std::max(worst, std::fabs(value_at(inv, n) - oracle::golden_inverse_entry(n)));
  bool ident = verify_inverse(p, inv, -20, 20, tol.inverse_identity);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = worst <= tol.golden_entry && ident && secs < tol.inverse_seconds;
  r.detail = "max entry error " + detail::fmt(worst) + ", P x P^-1 = I on [-20,20]: " + (ident ? "yes" : "no") +
             ", " + detail::fmt(secs) + " s";
  return r;
}

inline CriterionResult criterion_coding() {
  CriterionResult r{2, "alphabet and coding"};
  LaurentPoly p = parse_poly("z^2-3z+1");
  Alphabet al = alphabet(p);
  bool alpha_ok = al.lo == -2 && al.hi == 1;
  TorusSeq x{0, {Rational(0), Rational(1, 2), Rational(1, 2)}, true};
  CodeWord w = encode(p, x);
  bool word_ok = w.periodic && w.letters == std::vector<long>{-1, -1, 1};
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> dpick(1, 1000);
  int round_trips = 0;
  for (int t = 0; t < 50; ++t) {
    long q = dpick(rng);
    std::uniform_int_distribution<long> npick(0, q - 1);
    std::vector<Rational> seed{Rational(npick(rng), q), Rational(npick(rng), q)};
    auto orb = periodic_orbit(p, seed);
    if (!orb) continue;
    CodeWord cw = encode(p, *orb);
    TorusSeq back = decode(p, cw, orb->start, orb->end());
    TorusSeq back_per{back.start, back.values, true};
    if (detail::periodic_equal(*orb, back_per, orb->start - 3, orb->end() + 3)) ++round_trips;
  }
  r.pass = alpha_ok && word_ok && round_trips == 50;
  std::string letters;
  for (long l : w.letters) letters += (letters.empty() ? "" : ",") + std::to_string(l);
  r.detail = "alphabet [" + std::to_string(al.lo) + "," + std::to_string(al.hi) + "], word (" + letters +
             "), round trips " + std::to_string(round_trips) + "/50";
  return r;
}

inline CriterionResult criterion_entropy(const AcceptanceTolerances& tol, unsigned threads) {
  CriterionResult r{3, "entropy"};
  auto t0 = std::chrono::steady_clock::now();
  const double golden = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  const double three = std::log(3.0);
  LaurentPoly p = parse_poly("z^2-3z+1"), q = parse_poly("-3z^2+1");
  double hp = entropy_exact(p), hq = entropy_exact(q);
  EntropyOptions opts;
  opts.threads = threads;
  EntropyEstimate ep = entropy_estimate(p, 10, 1024, opts);
  EntropyEstimate eq = entropy_estimate(q, 10, 1024, opts);
  double est_p = ep.rows.back().estimate, est_q = eq.rows.back().estimate;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool exact_ok = std::fabs(hp - golden) <= tol.entropy_exact && std::fabs(hq - three) <= tol.entropy_exact;
  bool est_p_ok = std::fabs(est_p - golden) <= tol.entropy_estimate_golden;
  bool est_q_ok = std::fabs(est_q - three) <= tol.entropy_estimate_three;
  r.pass = exact_ok && est_p_ok && est_q_ok && secs < tol.entropy_seconds;
  r.detail = "exact " + detail::fmt(hp) + " / " + detail::fmt(hq) + "; estimate n=10 " + detail::fmt(est_p) + " (gap " +
             detail::fmt(std::fabs(est_p - golden)) + (est_p_ok ? " ok" : " > 0.05") + "), " + detail::fmt(est_q) +
             " (gap " + detail::fmt(std::fabs(est_q - three)) + (est_q_ok ? " ok" : " > 0.07") + "); " +
             detail::fmt(secs) + " s";
  return r;
}

inline CriterionResult criterion_admissibility() {
  CriterionResult r{4, "admissibility"};
  LaurentPoly p = parse_poly("z^2-3z+1");
  long agree = 0, total = 0;
  for (long i = 0; i < 64; ++i)
    for (long j = 0; j < 64; ++j) {
      auto orb = periodic_orbit(p, {Rational(i, 64), Rational(j, 64)});
      ++total;
      if (orb && is_admissible(p, encode(p, *orb)) == Verdict::yes) ++agree;
    }
  Verdict ones = is_admissible(p, CodeWord{0, {1, 1, 1}, true});
  r.pass = agree == total && ones == Verdict::no;
  r.detail = std::to_string(agree) + "/" + std::to_string(total) + " grid words admissible, (1,1,1) -> " + verdict_name(ones);
  return r;
}

inline CriterionResult criterion_resultant() {
  CriterionResult r{5, "resultant and Bezout"};
  bool fixed = resultant(parse_poly("z-2"), parse_poly("z-3")).delta == 1 &&
               resultant(parse_poly("z^2-3z+1"), parse_poly("z^2-3z+1")).delta == 0 &&
               resultant(parse_poly("z^2-3z+1"), parse_poly("z-1")).delta == -1;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> deg(1, 4), coef(-9, 9), common(0, 3);
  auto random_poly = [&](long d) {
    LaurentPoly::Coeffs c;
    for (long e = 0; e <= d; ++e) c[e] = coef(rng);
    while (c[d] == 0) c[d] = coef(rng);
    while (c[0] == 0) c[0] = coef(rng);
    return LaurentPoly(std::move(c));
  };
  int failures = 0, coprime = 0;
  for (int t = 0; t < 200; ++t) {
    LaurentPoly a = random_poly(deg(rng)), b = random_poly(deg(rng));
    if (common(rng) == 0) {
      LaurentPoly f = random_poly(1);
      a = a * f;
      b = b * f;
    }
    Integer delta = resultant(a, b).delta;
    if (delta != oracle::sylvester_delta(a, b)) ++failures;
    bool unit_gcd = poly_gcd(a, b).span() == 0;
    if ((delta != 0) != unit_gcd) ++failures;
    if (delta == 0) continue;
    ++coprime;
    BezoutResult bz = bezout(a, b);
    auto lhs = oracle::naive_product(bz.a, a);
    for (const auto& [e, c] : oracle::naive_product(bz.b, b)) lhs[e] += c;
    for (auto it = lhs.begin(); it != lhs.end();) it = it->second == 0 ? lhs.erase(it) : std::next(it);
    if (lhs != std::map<long, Integer>{{0, delta}} || bz.delta != delta) ++failures;
  }
  r.pass = fixed && failures == 0;
  r.detail = std::string("fixed values ") + (fixed ? "ok" : "wrong") + ", " + std::to_string(failures) +
             " failures over 200 pairs (" + std::to_string(coprime) + " coprime)";
  return r;
}

/// Polynomials used by the structure and property checks.
inline const std::vector<std::string>& structure_corpus() {
  static const std::vector<std::string> c = {
      "z^2-3z+1",  "-3z^2+1",     "z^2-2z+1",     "z-2",         "z-3",        "2z-1",          "z^2-z-1",
      "z^2+z-1",   "3z^2+4z+1",   "4z^2+5z+1",    "z^3-z-1",     "z^3-2z^2+1", "2z^2-3z+2",     "z+z^-1-3",
      "z^2-4z+1",  "z^3+z^2-z+3", "z^4-z^3-z+2",  "5z^-2+z^-1+1", "z^2+1",      "2z^3-z^2+2z-1"};
  return c;
}

inline CriterionResult criterion_structure(const AcceptanceTolerances& tol) {
  CriterionResult r{6, "structure"};
  int dim_ok = 0;
  for (const auto& s : structure_corpus()) {
    LaurentPoly p = parse_poly(s);
    long grid = 4;
    for (const auto& [e, c] : p.coeffs()) grid = std::max(grid, to_long(abs(c)) + 1);
    long d = dim_omega(p);
    if (d == p.high() - p.low() && dim_check(p, d, grid) && !dim_check(p, d + 1, grid)) ++dim_ok;
  }
  auto cz = enumerate_common_zeros(parse_poly("z-1"), parse_poly("z+1"), 0, 5);
  bool cz_ok = cz.size() == 2;
  if (cz_ok) {
    for (long n = 0; n <= 5; ++n) cz_ok = cz_ok && cz[0].at(n) == 0 && cz[1].at(n) == Rational(1, 2);
  }
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"z-2", "z-3"}, {"z^2-3z+1", "z-1"}, {"2z-1", "z^2-z-1"}, {"z^2+z-1", "3z+1"}, {"z-1", "z+1"}};
  std::mt19937_64 rng(4242);
  int dec_ok = 0, dec_total = 0;
  for (const auto& [ps, qs] : pairs) {
    LaurentPoly p = parse_poly(ps), q = parse_poly(qs);
    for (int t = 0; t < 50; ++t) {
      ++dec_total;
      TorusSeq x = random_member(p * q, rng, 0, 14, 1 + static_cast<long>(rng() % 60));
      try {
        DecompositionWitness w = decompose(p, q, x);
        bool ok = is_member(p, w.u) && is_member(q, w.v);
        for (long n = w.u.start; n <= w.u.end(); ++n) ok = ok && frac(w.u.at(n) + w.v.at(n)) == frac(Rational(w.scale) * x.at(n));
        if (ok) ++dec_ok;
      } catch (const std::exception&) {
      }
    }
  }
  double add = entropy_exact(parse_poly("z-2") * parse_poly("z-3"));
  double add_gap = std::fabs(add - (std::log(2.0) + std::log(3.0)));
  r.pass = dim_ok == 20 && cz_ok && dec_ok == dec_total && add_gap <= tol.additivity;
  r.detail = "dim " + std::to_string(dim_ok) + "/20, common zeros " + (cz_ok ? "{0,1/2}" : "wrong") + ", decompose " +
             std::to_string(dec_ok) + "/" + std::to_string(dec_total) + ", additivity gap " + detail::fmt(add_gap);
  return r;
}

inline CriterionResult criterion_saut() {
  CriterionResult r{7, "strong automorphisms"};
  bool ok = true;
  std::string notes;
  auto check = [&](const char* ps, IntMatrix ref) {
    SautReport rep = saut_group(parse_poly(ps));
    bool good = rep.cls.kind == SautKind::infinite_cyclic && rep.cls.generator && detail::in_class(*rep.cls.generator, ref);
    notes += std::string(ps) + " -> " + (rep.cls.generator ? rep.cls.generator->to_string() : "none") + "; ";
    ok = ok && good;
  };
  check("z^2-3z+1", IntMatrix{{-1, 1}, {-1, 2}});
  check("-3z^2+1", IntMatrix{{2, -1}, {-3, 2}});
  check("z^2-2z+1", IntMatrix{{0, 1}, {-1, 2}});

  LaurentPoly three = parse_poly("-3z^2+1");
  Eigendata ed = saut_eigendata(IntMatrix{{2, -1}, {-3, 2}}, three);
  QuadIrr lo = QuadIrr(2) - QuadIrr::sqrt(3), hi = QuadIrr(2) + QuadIrr::sqrt(3);
  bool eig = ed.exact_eigenvalues.size() == 2 &&
             ((ed.exact_eigenvalues[0] == lo && ed.exact_eigenvalues[1] == hi) ||
              (ed.exact_eigenvalues[0] == hi && ed.exact_eigenvalues[1] == lo));

  auto images = [](const char* ps, IntMatrix b) {
    LaurentPoly p = parse_poly(ps);
    auto y = apply_automorphism_values(b, p, symbolic_orbit(p, 3));
    return "(" + y[1].to_string() + "," + y[2].to_string() + ")";
  };
  std::string img_golden = images("z^2-3z+1", IntMatrix{{-1, 1}, {-1, 2}});
  std::string img_three = images("-3z^2+1", IntMatrix{{2, -1}, {-3, 2}});
  bool blocks = img_golden == "(-x0+2x1,-2x0+5x1)" && img_three == "(-3x0+2x1,6x0-3x1)";
  r.pass = ok && eig && blocks;
  r.detail = notes + "eigenvalues " + (eig ? "2-+sqrt3" : "wrong") + "; images " + img_golden + " " + img_three;
  return r;
}

inline CriterionResult criterion_pell_cf() {
  CriterionResult r{8, "Pell and continued fractions"};
  PellSolution p5 = pell_solve(5), p12 = pell_solve(12);
  bool pell_ok = p5.w == 1 && p5.v == 1 && p5.sign == -4 && p12.w == 4 && p12.v == 1 && p12.sign == 4;
  ContinuedFraction golden = cf_expand(parse_quad("(3+sqrt(5))/2"));
  ContinuedFraction third = cf_expand(parse_quad("1/sqrt(3)"));
  bool cf_golden = golden == ContinuedFraction{{Integer(2)}, {Integer(1)}};
  bool cf_third = third == ContinuedFraction{{Integer(0)}, {Integer(1), Integer(1), Integer(2)}};
  bool gen_ok = true;
  for (const char* ps : {"z^2-3z+1", "-3z^2+1"}) {
    SautReport rep = saut_group(parse_poly(ps));
    if (!rep.cf_generator || !rep.pell) {
      gen_ok = false;
      continue;
    }
    const IntMatrix& g = *rep.cf_generator;
    Integer w = 2 * g.p() - rep.a1 * g.pp();
    Integer v = g.pp();
    Integer val = w * w - rep.discriminant * v * v;
    gen_ok = gen_ok && (val == 4 || val == -4) && abs(w) == rep.pell->w && abs(v) == rep.pell->v;
  }
  SautReport four = saut_group(parse_poly("3z^2+4z+1"));
  bool order2 = four.discriminant == 4 && four.cls.kind == SautKind::cyclic_order2 && four.cls.generator &&
                (*four.cls.generator) * (*four.cls.generator) == IntMatrix::identity(2);
  LaurentPoly nine = parse_poly("4z^2+5z+1");
  SautReport rep9 = saut_group(nine);
  bool trivial = rep9.discriminant == 9 && rep9.cls.kind == SautKind::trivial;
  for (const auto& b : saut_elements_bounded(nine, 50)) trivial = trivial && b.pp() == 0;
  r.pass = pell_ok && cf_golden && cf_third && gen_ok && order2 && trivial;
  r.detail = std::string("pell ") + (pell_ok ? "ok" : "wrong") + ", cf((3+sqrt5)/2) = " + golden.to_string() +
             ", cf(1/sqrt3) = " + third.to_string() + (cf_third ? "" : " (expected [0;(1,1,2)])") + ", generator/Pell " +
             (gen_ok ? "ok" : "wrong") + ", D=4 order 2 " + (order2 ? "ok" : "wrong") + ", D=9 trivial " + (trivial ? "ok" : "wrong");
  return r;
}

inline CriterionResult criterion_properties() {
  CriterionResult r{9, "algebraic properties"};
  std::mt19937_64 rng(9001);
  int failures = 0;
  const FiniteSupport one = identity();
  for (int t = 0; t < 1000; ++t) {
    FiniteSupport a = detail::random_finite(rng), b = detail::random_finite(rng), c = detail::random_finite(rng);
    if (!(convolve(a, b) == convolve(b, a))) ++failures;
    if (!(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)))) ++failures;
    if (!(convolve(a, one) == a)) ++failures;
    long d = static_cast<long>(rng() % 9) - 4;
    if (!(convolve(shift(a, d), b) == shift(convolve(a, b), d))) ++failures;
  }
  LaurentPoly p = parse_poly("z^2-3z+1");
  IntMatrix b = *saut_group(p).cls.generator;
  IntMatrix b2 = b * b;
  std::uniform_int_distribution<long> dpick(2, 200);
  for (int t = 0; t < 100; ++t) {
    long q = dpick(rng);
    auto rnd = [&] { return Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(q)), q); };
    TorusSeq x = orbit<Rational>(p, {rnd(), rnd()}, 8, 0, 0);
    TorusSeq y = orbit<Rational>(p, {rnd(), rnd()}, 8, 0, 0);
    TorusSeq s = x;
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = frac(x.values[i] + y.values[i]);
    TorusSeq fx = apply_automorphism(b, p, x), fy = apply_automorphism(b, p, y), fs = apply_automorphism(b, p, s);
    for (std::size_t i = 0; i < fs.values.size(); ++i)
      if (fs.values[i] != frac(fx.values[i] + fy.values[i])) ++failures;
    if (!(apply_automorphism(b2, p, x) == apply_automorphism(b, p, fx))) ++failures;
    long d = static_cast<long>(rng() % 7) - 3;
    if (!(encode(p, shift(x, d)) == shift(encode(p, x), d))) ++failures;
  }
  r.pass = failures == 0;
  r.detail = std::to_string(failures) + " failures (1000 convolution triples, 100 orbits)";
  return r;
}

inline constexpr int kCriterionCount = 9;

/// Runs one criterion; exceptions turn into a failing result.
inline CriterionResult run_criterion(int id, unsigned threads = 0, const AcceptanceTolerances& tol = {}) {
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id must be in 1..9");
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = criterion_inverse(tol); break;
      case 2: r = criterion_coding(); break;
      case 3: r = criterion_entropy(tol, threads); break;
      case 4: r = criterion_admissibility(); break;
      case 5: r = criterion_resultant(); break;
      case 6: r = criterion_structure(tol); break;
      case 7: r = criterion_saut(); break;
      case 8: r = criterion_pell_cf(); break;
      default: r = criterion_properties(); break;
    }
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs criteria 1-9 in order.
inline std::vector<CriterionResult> run_acceptance(unsigned threads = 0, const AcceptanceTolerances& tol = {}) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, threads, tol));
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << ": " << r.detail;
  return os.str();
}

}  // namespace streamzero
