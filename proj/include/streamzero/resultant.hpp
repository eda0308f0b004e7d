#pragma once

#include <vector>

#include "streamzero/laurent_poly.hpp"
#include "streamzero/linalg.hpp"

namespace streamzero {

struct ResultantInfo {
  DenseMatrix<Integer> matrix;  ///< Sylvester matrix, rows of P first
  Integer delta;                ///< its determinant
};

/// Sylvester resultant of the normalized polynomials z^-h P and z^-h' Q.
/// With deg P = n and deg Q = m the matrix has m rows built from the
/// coefficients of P followed by n rows built from Q.
inline ResultantInfo resultant(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("resultant with the zero polynomial");
  const auto a = p.dense();
  const auto b = q.dense();
  const std::size_t n = a.size() - 1;
  const std::size_t m = b.size() - 1;
  DenseMatrix<Integer> mat(n + m, std::vector<Integer>(n + m, Integer(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) mat[i][i + j] = a[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) mat[m + i][i + j] = b[j];
  Integer d = determinant(mat);
  return {std::move(mat), std::move(d)};
}

struct BezoutResult {
  LaurentPoly a;
  LaurentPoly b;
  Integer delta;
};

/// Integer Bezout identity a*P + b*Q = delta, delta the resultant.
/// The spans satisfy span(a) < span(Q) and span(b) < span(P); the identity
/// holds for the Laurent inputs as given.
inline BezoutResult bezout(const LaurentPoly& p, const LaurentPoly& q) {
  ResultantInfo info = resultant(p, q);
  if (info.delta == 0) throw NotCoprime("resultant vanishes for " + p.to_string() + " and " + q.to_string());
  const std::size_t n = static_cast<std::size_t>(p.span());
  const std::size_t m = static_cast<std::size_t>(q.span());
  const std::size_t size = n + m;
  std::vector<Integer> alpha, beta;
  if (size == 0) {
    throw UnsupportedDegree("Bezout identity needs at least one nonconstant polynomial");
  }
  DenseMatrix<Rational> mt(size, std::vector<Rational>(size));
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) mt[r][c] = Rational(info.matrix[c][r]);
  std::vector<Rational> rhs(size, Rational(0));
  rhs[0] = Rational(info.delta);
  auto sol = solve_linear(std::move(mt), std::move(rhs));
  if (!sol) throw NotCoprime("singular Sylvester system");
  for (std::size_t i = 0; i < size; ++i) {
    if (den((*sol)[i]) != 1) throw std::logic_error("Bezout coefficients not integral");
    (i < m ? alpha : beta).push_back(num((*sol)[i]));
  }
  BezoutResult out{LaurentPoly::from_dense(alpha, -p.low()), LaurentPoly::from_dense(beta, -q.low()), info.delta};
  if (out.a * p + out.b * q != LaurentPoly::constant(out.delta))
    throw std::logic_error("Bezout identity check failed");
  return out;
}

}  // namespace streamzero
