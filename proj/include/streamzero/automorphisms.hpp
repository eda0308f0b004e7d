#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "streamzero/continued_fraction.hpp"
#include "streamzero/dynamics.hpp"
#include "streamzero/int_matrix.hpp"

namespace streamzero {

inline IntMatrix companion_matrix(const LaurentPoly& p) {
  auto m = companion(p);
  if (m.empty()) throw UnsupportedDegree("companion matrix needs degree >= 1");
  return IntMatrix(m);
}

/// det B = +-1 and B M_P = M_P B.
inline bool is_saut(const IntMatrix& b, const LaurentPoly& p) {
  IntMatrix m = companion_matrix(p);
  if (b.size() != m.size()) return false;
  Integer d = b.det();
  return (d == 1 || d == -1) && b * m == m * b;
}

/// Integer linear form c_0 x_0 + ... + c_(k-1) x_(k-1), for symbolic orbits.
struct LinearForm {
  std::vector<Integer> c;

  LinearForm() = default;
  explicit LinearForm(std::size_t k) : c(k, Integer(0)) {}
  static LinearForm variable(std::size_t k, std::size_t i) {
    LinearForm f(k);
    f.c[i] = 1;
    return f;
  }
  LinearForm& operator+=(const LinearForm& o) {
    if (c.size() < o.c.size()) c.resize(o.c.size(), Integer(0));
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    LinearForm n = o;
    for (auto& v : n.c) v = -v;
    return *this += n;
  }
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(const Integer& s, LinearForm f) {
    for (auto& v : f.c) v *= s;
    return f;
  }
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < n; ++i) {
      Integer x = i < a.c.size() ? a.c[i] : Integer(0);
      Integer y = i < b.c.size() ? b.c[i] : Integer(0);
      if (x != y) return false;
    }
    return true;
  }
  /// "-x0+2x1"; "0" for the zero form.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Integer m = abs(c[i]);
      if (c[i] < 0) s += "-";
      else if (!s.empty()) s += "+";
      if (m != 1) s += m.str();
      s += "x" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }
};

/// x_0 .. x_(len-1) as linear forms in the seed x_0 .. x_(k-1), following
/// the recursion without reduction mod 1.
inline std::vector<LinearForm> symbolic_orbit(const LaurentPoly& p, std::size_t len) {
  FormThree f = form_three(p);
  const std::size_t k = f.degree();
  std::vector<LinearForm> x;
  for (std::size_t i = 0; i < std::min(k, len); ++i) x.push_back(LinearForm::variable(k, i));
  for (std::size_t n = k; n < len; ++n) {
    LinearForm v(k);
    for (std::size_t j = 1; j <= k; ++j) v -= f.a[j] * x[n - j];
    x.push_back(v);
  }
  return x;
}

namespace detail {

inline Rational reduce_value(const Rational& v) { return frac(v); }
inline LinearForm reduce_value(const LinearForm& v) { return v; }

template <class T>
T times(const Integer& s, const T& v) {
  if constexpr (std::is_same_v<T, LinearForm>) return s * v;
  else return T(s) * v;
}

}  // namespace detail

/// Image of an orbit window under B: every k-block (x_(n+1), ..., x_(n+k))
/// maps to B times it, and overlapping blocks must agree.
template <class T>
std::vector<T> apply_automorphism_values(const IntMatrix& b, const LaurentPoly& p, const std::vector<T>& x) {
  FormThree f = form_three(p);
  const std::size_t k = f.degree();
  if (b.size() != k) throw std::invalid_argument("matrix size differs from the degree");
  if (x.size() < k) throw InconsistentWindow("window shorter than the degree");
  for (std::size_t n = k; n < x.size(); ++n) {
    T s = x[n];
    for (std::size_t j = 1; j <= k; ++j) s += detail::times(f.a[j], x[n - j]);
    if constexpr (std::is_same_v<T, Rational>) {
      if (den(s) != 1) throw InconsistentWindow("window does not follow the recursion at offset " + std::to_string(n));
    } else {
      if (!(s == LinearForm(k))) throw InconsistentWindow("window does not follow the recursion at offset " + std::to_string(n));
    }
  }
  std::vector<std::optional<T>> y(x.size());
  for (std::size_t t = 0; t + k <= x.size(); ++t) {
    for (std::size_t i = 0; i < k; ++i) {
      T v = detail::times(b(i, 0), x[t]);
      for (std::size_t j = 1; j < k; ++j) v += detail::times(b(i, j), x[t + j]);
      v = detail::reduce_value(v);
      auto& slot = y[t + i];
      if (slot && !(*slot == v)) throw InconsistentWindow("overlapping blocks disagree; B does not commute with M_P");
      slot = v;
    }
  }
  std::vector<T> out;
  for (auto& v : y) out.push_back(*v);
  return out;
}

inline TorusSeq apply_automorphism(const IntMatrix& b, const LaurentPoly& p, const TorusSeq& x) {
  if (x.periodic) {
    std::vector<Rational> ext;
    const long k = static_cast<long>(b.size());
    for (long n = x.start; n < x.start + x.size() + k; ++n) ext.push_back(x.at(n));
    auto y = apply_automorphism_values(b, p, ext);
    y.resize(x.values.size());
    return TorusSeq{x.start, std::move(y), true};
  }
  return TorusSeq{x.start, apply_automorphism_values(b, p, x.values), false};
}

struct Eigendata {
  std::vector<std::complex<double>> roots;         ///< theta_i
  std::vector<std::complex<double>> eigenvalues;   ///< lambda_i paired with theta_i
  std::vector<QuadIrr> exact_roots;                ///< k = 2, real roots: theta_1 > theta_2
  std::vector<QuadIrr> exact_eigenvalues;          ///< k = 2, real roots
};

/// Eigenvalue of B on the eigenvector (theta^k, ..., theta) of M_P for each
/// root theta; exact in the quadratic field when k = 2 and D > 0.
inline Eigendata saut_eigendata(const IntMatrix& b, const LaurentPoly& p) {
  if (!is_saut(b, p)) throw std::invalid_argument("matrix is not a strong automorphism");
  FormThree f = form_three(p);
  const std::size_t k = f.degree();
  Eigendata out;
  if (k == 2) {
    const Integer& a1 = f.a[1];
    const Integer& a2 = f.a[2];
    Integer D = a1 * a1 - 4 * a2;
    if (D == 0) throw RepeatedRoots("discriminant vanishes");
    if (D > 0) {
      // theta = (-a1 +- sqrt D) / (2 a2); theta_1 the larger.
      QuadIrr r1 = (QuadIrr(-a1) + QuadIrr::sqrt(D)) / QuadIrr(2 * a2);
      QuadIrr r2 = (QuadIrr(-a1) - QuadIrr::sqrt(D)) / QuadIrr(2 * a2);
      if (r1 < r2) std::swap(r1, r2);
      out.exact_roots = {r1, r2};
      for (const auto& th : out.exact_roots) {
        QuadIrr lambda = QuadIrr(b.p()) + QuadIrr(b.pp()) / th;
        // B (theta^2, theta)^T = lambda (theta^2, theta)^T
        QuadIrr v0 = th * th, v1 = th;
        if (!(QuadIrr(b.p()) * v0 + QuadIrr(b.pp()) * v1 == lambda * v0) ||
            !(QuadIrr(b.q()) * v0 + QuadIrr(b.qp()) * v1 == lambda * v1))
          throw std::logic_error("eigenvector relation failed");
        out.exact_eigenvalues.push_back(lambda);
        out.roots.emplace_back(th.to_double(), 0.0);
        out.eigenvalues.emplace_back(lambda.to_double(), 0.0);
      }
      QuadIrr prod = out.exact_eigenvalues[0] * out.exact_eigenvalues[1];
      if (!(prod == QuadIrr(b.det()))) throw std::logic_error("eigenvalue product differs from det B");
      return out;
    }
  }
  RootSet rs = find_roots(LaurentPoly::from_dense(f.a));
  for (const auto& r : rs.roots)
    if (r.multiplicity > 1) throw RepeatedRoots("repeated root");
  std::complex<long double> prod = 1;
  for (const auto& r : rs.roots) {
    std::complex<long double> th(r.value.real(), r.value.imag());
    std::vector<std::complex<long double>> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = std::pow(th, static_cast<long double>(k - i));
    std::complex<long double> bv0 = 0;
    for (std::size_t j = 0; j < k; ++j) bv0 += to_long_double(b(0, j)) * v[j];
    std::complex<long double> lambda = bv0 / v[0];
    prod *= lambda;
    out.roots.push_back(r.value);
    out.eigenvalues.emplace_back(static_cast<double>(lambda.real()), static_cast<double>(lambda.imag()));
  }
  if (std::abs(prod - std::complex<long double>(to_long_double(b.det()), 0)) > 1e-6L) throw std::logic_error("eigenvalue product differs from det B");
  return out;
}

/// Among +-G^(+-1): positive p', then nonnegative trace, then lexicographic.
inline IntMatrix canonical_generator(const IntMatrix& g) {
  std::vector<IntMatrix> cands = {g, -g, g.inverse2(), -g.inverse2()};
  std::optional<IntMatrix> best;
  auto key = [](const IntMatrix& m) { return std::make_tuple(m.pp() > 0, m.trace() >= 0); };
  for (const auto& c : cands) {
    if (!best || key(c) > key(*best) || (key(c) == key(*best) && c < *best)) best = c;
  }
  return *best;
}

/// Every B = (p p'; -a2 p', p - a1 p') with det +-1 and |p'| <= bound.
inline std::vector<IntMatrix> saut_elements_bounded(const LaurentPoly& p, long bound) {
  FormThree f = form_three(p);
  if (f.degree() != 2) throw UnsupportedDegree("Saut enumeration is implemented for k = 2");
  const Integer a1 = f.a[1], a2 = f.a[2];
  const Integer D = a1 * a1 - 4 * a2;
  std::set<IntMatrix> found;
  for (long pp = -bound; pp <= bound; ++pp) {
    for (int sgn : {1, -1}) {
      Integer disc = D * pp * pp + 4 * sgn;
      if (!is_square(disc)) continue;
      Integer r = isqrt(disc);
      for (const Integer& numer : {Integer(a1 * pp + r), Integer(a1 * pp - r)}) {
        if (numer % 2 != 0) continue;
        Integer pv = numer / 2;
        IntMatrix b(2);
        b(0, 0) = pv;
        b(0, 1) = pp;
        b(1, 0) = -a2 * pp;
        b(1, 1) = pv - a1 * pp;
        if (is_saut(b, p)) found.insert(b);
      }
    }
  }
  return {found.begin(), found.end()};
}

enum class SautKind { infinite_cyclic, cyclic_order2, trivial };

inline const char* saut_kind_name(SautKind k) {
  switch (k) {
    case SautKind::infinite_cyclic: return "infinite_cyclic";
    case SautKind::cyclic_order2: return "cyclic_order2";
    default: return "trivial";
  }
}

struct SautClass {
  SautKind kind = SautKind::trivial;
  std::optional<IntMatrix> generator;  ///< canonical representative of the generator of Saut_P / {+-I}
};

struct SautReport {
  SautClass cls;
  Integer a1, a2, discriminant;
  bool sign_flipped = false;
  std::optional<QuadIrr> theta1;
  std::optional<ContinuedFraction> cf;
  std::optional<CFMatrices> cf_data;
  std::optional<IntMatrix> cf_generator;  ///< generator exactly as built from the continued fraction
  std::optional<PellSolution> pell;
};

/// Saut_P / {+-I} for k = 2: infinite cyclic for D = 0 or D nonsquare,
/// otherwise decided by the finite search over |p'| <= 4 (complete for square D).
inline SautReport saut_group(const LaurentPoly& p) {
  FormThree f = form_three(p);
  if (f.degree() != 2) throw UnsupportedDegree("Saut classification is implemented for k = 2");
  SautReport r;
  r.a1 = f.a[1];
  r.a2 = f.a[2];
  r.sign_flipped = f.sign_flipped;
  r.discriminant = r.a1 * r.a1 - 4 * r.a2;
  const Integer& D = r.discriminant;
  if (D < 0) throw NegativeDiscriminant("D = " + D.str());
  if (D == 0) {
    Integer c = r.a1 / 2;
    IntMatrix g(2);
    g(0, 0) = 1 + c;
    g(0, 1) = 1;
    g(1, 0) = -c * c;
    g(1, 1) = 1 - c;
    if (!is_saut(g, p)) throw std::logic_error("repeated-root generator failed the Saut test");
    r.cls = {SautKind::infinite_cyclic, canonical_generator(g)};
    return r;
  }
  if (!is_square(D)) {
    QuadIrr theta1 = r.a2 > 0 ? QuadIrr(-r.a1, 1, D, 2 * r.a2) : QuadIrr(r.a1, 1, D, -2 * r.a2);
    r.theta1 = theta1;
    r.cf = cf_expand(theta1);
    r.cf_data = cf_matrices(*r.cf);
    IntMatrix g = r.cf_data->generator();
    if (!is_saut(g, p)) throw std::logic_error("continued-fraction generator failed the Saut test");
    r.cf_generator = g;
    r.pell = pell_solve(D);
    r.cls = {SautKind::infinite_cyclic, canonical_generator(g)};
    return r;
  }
  for (const auto& b : saut_elements_bounded(p, 4)) {
    if (b.pp() == 0) continue;
    r.cls = {SautKind::cyclic_order2, canonical_generator(b)};
    return r;
  }
  r.cls = {SautKind::trivial, std::nullopt};
  return r;
}

/// No element with 0 < |p'| < |p'(gen)| exists.
inline bool saut_generator_minimal(const LaurentPoly& p, const IntMatrix& gen) {
  long bound = to_long(abs(gen.pp())) - 1;
  for (const auto& b : saut_elements_bounded(p, bound))
    if (b.pp() != 0) return false;
  return true;
}

}  // namespace streamzero
