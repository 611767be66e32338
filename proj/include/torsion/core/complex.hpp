#pragma once

#include <ostream>

#include "torsion/core/scalar.hpp"

namespace torsion {

/// Complex number over any of the supported fields. std::complex is unspecified for
/// non-builtin element types, so exact and multiprecision arithmetic go through here.
template <Field T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT: implicit real embedding
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT

  static Complex i() { return {T(0), T(1)}; }

  /// i^k, reduced mod 4 without touching trigonometry.
  static Complex i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return {T(1), T(0)};
      case 1: return {T(0), T(1)};
      case 2: return {T(-1), T(0)};
      default: return {T(0), T(-1)};
    }
  }

  Complex conj() const { return {re, -im}; }
  /// |z|^2
  T norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    T d = o.norm();
    T r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const T& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const T& s) {
    re /= s;
    im /= s;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const T& s) { return a *= s; }
  friend Complex operator*(const T& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const T& s) { return a /= s; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << "(" << z.re << ", " << z.im << ")";
  }
};

template <Field T>
Complex<T> conj(const Complex<T>& z) {
  return z.conj();
}

template <Inexact T>
T abs(const Complex<T>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

template <Inexact T>
T arg(const Complex<T>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

/// Principal square root.
template <Inexact T>
Complex<T> sqrt(const Complex<T>& z) {
  using std::sqrt;
  using std::abs;
  if (z.is_zero()) return {};
  T r = abs(z);
  T a = sqrt((r + abs(z.re)) / 2);
  if (z.re >= 0) return {a, z.im / (2 * a)};
  T b = z.im >= 0 ? a : T(-a);
  return {abs(z.im) / (2 * a), b};
}

template <Inexact T>
Complex<T> polar(const T& r, const T& theta) {
  using std::cos;
  using std::sin;
  return {r * cos(theta), r * sin(theta)};
}

template <Field T>
Complex<T> pow(Complex<T> z, unsigned n) {
  Complex<T> out(T(1));
  while (n) {
    if (n & 1u) out *= z;
    z *= z;
    n >>= 1u;
  }
  return out;
}

template <Field U, Field T>
Complex<U> convert(const Complex<T>& z) {
  if constexpr (std::is_same_v<U, T>) {
    return z;
  } else if constexpr (std::is_same_v<T, Rational>) {
    return {from_rational<U>(z.re), from_rational<U>(z.im)};
  } else if constexpr (std::is_same_v<U, double>) {
    return {to_double(z.re), to_double(z.im)};
  } else {
    return {U(z.re), U(z.im)};
  }
}

}  // namespace torsion
