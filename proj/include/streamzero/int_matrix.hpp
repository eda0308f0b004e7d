#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "streamzero/linalg.hpp"

namespace streamzero {

/// Square integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), e_(n * n, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) throw std::invalid_argument("matrix must be square");
      for (long v : r) e_.emplace_back(v);
    }
  }
  explicit IntMatrix(const DenseMatrix<Integer>& rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) throw std::invalid_argument("matrix must be square");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  // 2x2 names (p p'; q q').
  const Integer& p() const { return (*this)(0, 0); }
  const Integer& pp() const { return (*this)(0, 1); }
  const Integer& q() const { return (*this)(1, 0); }
  const Integer& qp() const { return (*this)(1, 1); }

  DenseMatrix<Integer> rows() const {
    DenseMatrix<Integer> r(n_, std::vector<Integer>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
  }
  Integer det() const { return determinant(rows()); }
  Integer trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t t = 0; t < a.n_; ++t)
        if (a(i, t) != 0)
          for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, t) * b(t, j);
    return c;
  }
  IntMatrix operator-() const {
    IntMatrix m = *this;
    for (auto& v : m.e_) v = -v;
    return m;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b) { return a.e_ < b.e_; }

  /// Inverse of a 2x2 matrix with determinant +-1.
  IntMatrix inverse2() const {
    if (n_ != 2) throw std::invalid_argument("inverse2 needs a 2x2 matrix");
    Integer d = det();
    if (abs(d) != 1) throw NotUnimodular("determinant " + d.str());
    IntMatrix m(2);
    m(0, 0) = qp() * d;
    m(0, 1) = -pp() * d;
    m(1, 0) = -q() * d;
    m(1, 1) = p() * d;
    return m;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) s += ";";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
    }
    return s + ")";
  }

 private:
  std::size_t n_ = 0;
  std::vector<Integer> e_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

}  // namespace streamzero
