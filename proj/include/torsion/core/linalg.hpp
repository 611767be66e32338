#pragma once

#include <cstddef>
#include <vector>

#include "torsion/core/complex.hpp"

namespace torsion {

/// Dense row-major complex matrix.
template <Field T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex<T>& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Complex<T>& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex<T>> a_;
};

/// G = L D L^* for a Hermitian matrix, L unit lower triangular, D real.
template <Field T>
struct LdlFactor {
  Matrix<T> lower;
  std::vector<T> diag;
};

/// Hermitian LDL^* without square roots, so it stays exact over the rationals.
/// Throws precision_exhausted(k) when pivot k is not safely positive: exactly positive
/// for rationals, above 2^(-bits/2) relative to G(k,k) for floats.
template <Field T>
LdlFactor<T> ldl_hermitian(const Matrix<T>& g) {
  const std::size_t n = g.rows();
  LdlFactor<T> f{Matrix<T>(n, n), std::vector<T>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    T d = g(j, j).re;
    for (std::size_t k = 0; k < j; ++k) d -= f.lower(j, k).norm() * f.diag[k];
    bool ok;
    if constexpr (is_exact_v<T>) {
      ok = d > 0;
    } else {
      ok = d > g(j, j).re * half_precision_tolerance<T>();
    }
    if (!ok) throw precision_exhausted(static_cast<int>(j), "Gram pivot not positive");
    f.diag[j] = d;
    f.lower(j, j) = Complex<T>(T(1));
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex<T> s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.lower(i, k) * f.lower(j, k).conj() * f.diag[k];
      f.lower(i, j) = s / d;
    }
  }
  return f;
}

/// Inverse of a unit lower triangular matrix by forward substitution.
template <Field T>
Matrix<T> unit_lower_inverse(const Matrix<T>& l) {
  const std::size_t n = l.rows();
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    inv(i, i) = Complex<T>(T(1));
    for (std::size_t j = 0; j < i; ++j) {
      Complex<T> s;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s;
    }
  }
  return inv;
}

/// Determinant by Gaussian elimination: first nonzero pivot for rationals,
/// largest-modulus pivot for floats.
template <Field T>
Complex<T> determinant(Matrix<T> a) {
  const std::size_t n = a.rows();
  Complex<T> det(T(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    if constexpr (is_exact_v<T>) {
      for (std::size_t r = col; r < n; ++r) {
        if (!a(r, col).is_zero()) {
          piv = r;
          break;
        }
      }
    } else {
      T best(0);
      for (std::size_t r = col; r < n; ++r) {
        T m = a(r, col).norm();
        if (m > best) {
          best = m;
          piv = r;
        }
      }
    }
    if (piv == n) return Complex<T>();
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      Complex<T> factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

}  // namespace torsion
