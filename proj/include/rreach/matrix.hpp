#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rreach/numeric.hpp"

namespace rreach {

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool operator==(const RationalMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
  }

  RationalMatrix operator+(const RationalMatrix& other) const {
    require_same_shape(other);
    RationalMatrix out(rows_, cols_);
    for (std::size_t t = 0; t < entries_.size(); ++t) out.entries_[t] = entries_[t] + other.entries_[t];
    return out;
  }

  RationalMatrix operator-(const RationalMatrix& other) const {
    require_same_shape(other);
    RationalMatrix out(rows_, cols_);
    for (std::size_t t = 0; t < entries_.size(); ++t) out.entries_[t] = entries_[t] - other.entries_[t];
    return out;
  }

  // this + s * other
  RationalMatrix plus_scaled(const Rational& s, const RationalMatrix& other) const {
    require_same_shape(other);
    RationalMatrix out(rows_, cols_);
    for (std::size_t t = 0; t < entries_.size(); ++t) out.entries_[t] = entries_[t] + s * other.entries_[t];
    return out;
  }

  RationalMatrix transposed() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

 private:
  void require_same_shape(const RationalMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Rational> entries_;
};

// v (length rows) * m, as a plain vector.
inline std::vector<Rational> row_times_matrix(const std::vector<Rational>& v,
                                              const RationalMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("row vector length mismatch");
  std::vector<Rational> out(m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& e = m.at(i, j);
      if (e != 0) out[j] += v[i] * e;
    }
  }
  return out;
}

// Exact determinant. Rows are scaled to integers first, then eliminated with
// the fraction-free (exact-division) Bareiss scheme, which keeps every
// intermediate value a minor of the integer matrix.
inline Rational det(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);

  std::vector<BigInt> a(n * n);
  BigInt scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l(1);
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, denominator(m.at(i, j)));
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = m.at(i, j);
      a[i * n + j] = numerator(q) * (l / denominator(q));
    }
    scale *= l;
  }

  int sign = 1;
  BigInt prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
      sign = -sign;
    }
    const BigInt& pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i * n + j] * pivot - a[i * n + k] * a[k * n + j];
        mpz_divexact(t.backend().data(), t.backend().data(), prev.backend().data());
        a[i * n + j] = std::move(t);
      }
      a[i * n + k] = 0;
    }
    prev = pivot;
  }
  BigInt result = a[n * n - 1];
  if (sign < 0) result = -result;
  return make_rational(result, scale);
}

// Exact basis of { v : v * m = 0 } as 1 x n row vectors; empty when trivial.
inline std::vector<RationalMatrix> left_nullspace(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("left nullspace of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m.transposed();

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t p = rank;
    while (p < n && a.at(p, col) == 0) ++p;
    if (p == n) continue;
    if (p != rank)
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(rank, j));
    const Rational inv_pivot = Rational(1) / a.at(rank, col);
    for (std::size_t j = col; j < n; ++j) a.at(rank, j) *= inv_pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || a.at(i, col) == 0) continue;
      const Rational f = a.at(i, col);
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(rank, j);
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<RationalMatrix> basis;
  std::size_t next_pivot = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (next_pivot < pivot_col.size() && pivot_col[next_pivot] == col) {
      ++next_pivot;
      continue;
    }
    RationalMatrix v(1, n);
    v.at(0, col) = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v.at(0, pivot_col[i]) = -a.at(i, col);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rreach
