#pragma once

#include <limits>
#include <utility>

#include "torsion/core/scalar.hpp"
#include "torsion/regions.hpp"

namespace torsion {

template <Inexact T>
struct SeriesValue {
  /// partial sum
  T value;
  /// rigorous bound on the omitted terms (all terms are positive)
  T tail;
};

/// Rectangle with sides a and b:
///   rho = 256 a^3 b^3 / pi^6 sum_{j,k>=0} 1 / ((2j+1)^2 (2k+1)^2 ((2j+1)^2 a^2 + (2k+1)^2 b^2)),
/// summed over j <= J, k <= K. Omitted terms with j > J are at most
/// 1/((2j+1)^4 a^2 (2k+1)^2), and sum_k (2k+1)^{-2} = pi^2/8, sum_{j>J} (2j+1)^{-4} <= 1/(6(2J+1)^3).
template <Inexact T>
SeriesValue<T> rectangle_rho_series(const T& a, const T& b, int J, int K) {
  if (!(a > 0) || !(b > 0)) throw torsion_error(errc::domain_error, "rectangle sides must be positive");
  if (J < 0 || K < 0) throw torsion_error(errc::precondition, "series caps must be nonnegative");
  const T a2 = a * a, b2 = b * b;
  std::vector<T> kk(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) kk[k] = T((2 * k + 1) * (2 * k + 1));
  T s(0);
  for (int j = 0; j <= J; ++j) {
    T jj((2 * j + 1) * (2 * j + 1));
    for (int k = 0; k <= K; ++k) s += T(1) / (jj * kk[k] * (jj * a2 + kk[k] * b2));
  }
  const T p6 = pow(pi<T>(), 6);
  const T pref = T(256) * a2 * a * b2 * b / p6;
  auto cube = [](int n) { return T(n) * T(n) * T(n); };
  T tail = pref * pi<T>() * pi<T>() / 8 * (T(1) / (a2 * 6 * cube(2 * J + 1)) + T(1) / (b2 * 6 * cube(2 * K + 1)));
  return {pref * s, tail};
}

/// The degree-one bracket a^3 b^3 / (4(a^2+b^2)) <= rho <= a^3 b^3 / (3(a^2+b^2)).
template <Field T>
std::pair<T, T> rectangle_rho_bracket(const T& a, const T& b) {
  if (!(a > 0) || !(b > 0)) throw torsion_error(errc::domain_error, "rectangle sides must be positive");
  T num = a * a * a * b * b * b;
  T s = a * a + b * b;
  return {num / (T(4) * s), num / (T(3) * s)};
}

/// R(a): the area-one rectangle with sides a and 1/a, truncated at j, k <= 85.
template <Inexact T>
SeriesValue<T> rectangle_R(const T& a, int cap = 85) {
  return rectangle_rho_series(a, T(1) / a, cap, cap);
}

/// Isosceles right triangle with unit legs:
///   rho = 2^10 / pi^6 sum_{m,n>=1} m^2 / (k^2 (4m^2 - k^2)(16m^4 - k^4)),  k = 2n-1,
/// summed over m <= M, n <= N. Every term equals m^2 / (k^2 (4m^2-k^2)^2 (4m^2+k^2)) > 0.
///
/// Row tail: with c = 2m and odd k, partial fractions and the odd-k sums of 1/(c^2-k^2) (zero
/// for even c) and 1/(c^2-k^2)^2 (= pi^2/(16c^2)) give sum_k 1/(k^2 (c^2-k^2)^2) = 3 pi^2/(16 c^4),
/// so row m is at most 3 pi^2/(1024 m^4) and rows m > M add at most pi^2/(1024 M^3).
/// Column tail, valid when N >= M: k >= 2m+1 makes k^2 - 4m^2 >= k, so a term is at most m^2/k^6
/// and columns n > N add at most (sum_{m<=M} m^2) / (10 (2N-1)^5).
/// Both tails are before the 2^10/pi^6 factor.
template <Inexact T>
SeriesValue<T> isosceles_right_triangle_rho_series(int M, int N) {
  if (M < 1 || N < 1) throw torsion_error(errc::precondition, "series caps must be at least 1");
  T s(0);
  for (int m = 1; m <= M; ++m) {
    const T m2(static_cast<long>(m) * m);
    const T four_m2 = 4 * m2;
    for (int n = 1; n <= N; ++n) {
      const T k2(static_cast<long>(2 * n - 1) * (2 * n - 1));
      const T d = four_m2 - k2;
      s += m2 / (k2 * d * d * (four_m2 + k2));
    }
  }
  const T pref = T(1024) / pow(pi<T>(), 6);
  T tail;
  if (N >= M) {
    const T Mt(M);
    T sum_sq = Mt * (Mt + 1) * (2 * Mt + 1) / 6;
    T row_tail = pi<T>() * pi<T>() / (T(1024) * Mt * Mt * Mt);
    T col_tail = sum_sq / (T(10) * pow(T(2 * N - 1), 5));
    tail = pref * (row_tail + col_tail);
  } else {
    tail = T(std::numeric_limits<double>::infinity());
  }
  return {pref * s, tail};
}

/// rho(rD) = pi r^4 / 2.
template <Inexact T>
T disk_rho(const T& r) {
  if (!(r > 0)) throw torsion_error(errc::domain_error, "disk radius must be positive");
  return pi<T>() * r * r * r * r / 2;
}

}  // namespace torsion
