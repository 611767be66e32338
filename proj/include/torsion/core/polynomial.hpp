#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "torsion/core/complex.hpp"

namespace torsion {

/// Complex polynomial in the monomial basis, coefficients lowest degree first.
template <Field T>
class Polynomial {
 public:
  using coeff_type = Complex<T>;

  Polynomial() = default;
  explicit Polynomial(std::vector<coeff_type> coeffs) : c_(std::move(coeffs)) {}
  Polynomial(std::initializer_list<coeff_type> coeffs) : c_(coeffs) {}

  static Polynomial monomial(int n) {
    std::vector<coeff_type> c(static_cast<std::size_t>(n) + 1);
    c.back() = coeff_type(T(1));
    return Polynomial(std::move(c));
  }

  const std::vector<coeff_type>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }

  /// Coefficient of z^k, zero beyond the stored range.
  coeff_type operator[](std::size_t k) const { return k < c_.size() ? c_[k] : coeff_type(); }
  coeff_type& at(std::size_t k) {
    if (k >= c_.size()) c_.resize(k + 1);
    return c_[k];
  }

  /// Degree after discarding exactly-zero leading coefficients; -1 for the zero polynomial.
  int degree() const {
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
      if (!c_[static_cast<std::size_t>(k)].is_zero()) return k;
    }
    return -1;
  }

  coeff_type leading() const {
    int d = degree();
    return d < 0 ? coeff_type() : c_[static_cast<std::size_t>(d)];
  }

  Polynomial& trim() {
    c_.resize(static_cast<std::size_t>(degree() + 1));
    return *this;
  }

  coeff_type operator()(const coeff_type& z) const {
    coeff_type acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<coeff_type> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial times_z() const {
    std::vector<coeff_type> out(c_.size() + 1);
    std::copy(c_.begin(), c_.end(), out.begin() + 1);
    return Polynomial(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Polynomial& operator*=(const coeff_type& s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  Polynomial& operator/=(const coeff_type& s) {
    for (auto& c : c_) c /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const coeff_type& s) { return a *= s; }
  friend Polynomial operator*(const coeff_type& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const coeff_type& s) { return a /= s; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<coeff_type> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  /// Equality of the trimmed coefficient lists.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!(a[k] == b[k])) return false;
    }
    return true;
  }

 private:
  std::vector<coeff_type> c_;
};

/// max_k |a_k - b_k| for inexact fields.
template <Inexact T>
T max_coeff_distance(const Polynomial<T>& a, const Polynomial<T>& b) {
  T worst(0);
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    T d = abs(a[k] - b[k]);
    if (d > worst) worst = d;
  }
  return worst;
}

template <Field U, Field T>
Polynomial<U> convert(const Polynomial<T>& p) {
  std::vector<Complex<U>> c;
  c.reserve(p.size());
  for (const auto& a : p.coeffs()) c.push_back(convert<U>(a));
  return Polynomial<U>(std::move(c));
}

/// Ratio of two polynomials; no cancellation of common factors is attempted.
template <Field T>
struct RationalFunction {
  Polynomial<T> numerator;
  Polynomial<T> denominator;

  Complex<T> operator()(const Complex<T>& z) const { return numerator(z) / denominator(z); }

  /// Equal as functions: num_a * den_b == num_b * den_a.
  bool same_function(const RationalFunction& o) const {
    return numerator * o.denominator == o.numerator * denominator;
  }

  /// Leading Taylor coefficients at 0 (requires denominator(0) != 0).
  std::vector<Complex<T>> taylor(std::size_t count) const {
    std::vector<Complex<T>> out(count);
    Complex<T> d0 = denominator[0];
    for (std::size_t k = 0; k < count; ++k) {
      Complex<T> acc = numerator[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= denominator[j] * out[k - j];
      out[k] = acc / d0;
    }
    return out;
  }
};

}  // namespace torsion
