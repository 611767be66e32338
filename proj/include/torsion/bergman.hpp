#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "torsion/core/polynomial.hpp"
#include "torsion/moments.hpp"

namespace torsion {

/// <f, g> = \int f conj(g) dA evaluated through the moment table.
template <Field T>
Complex<T> bergman_inner(const MomentTable<T>& table, const Polynomial<T>& f, const Polynomial<T>& g) {
  Complex<T> s;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j].is_zero()) continue;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k].is_zero()) continue;
      s += f[j] * g[k].conj() * table(static_cast<int>(j), static_cast<int>(k));
    }
  }
  return s;
}

/// Monic Bergman polynomials P_0..P_N with their squared norms D_n = ||P_n||^2.
template <Field T>
struct OrthonormalBasis {
  int degree = 0;
  std::vector<Polynomial<T>> monic;
  std::vector<T> norm_sq;

  /// p_n = P_n / ||P_n||.
  Polynomial<T> orthonormal(int n) const
    requires Inexact<T>
  {
    using std::sqrt;
    return monic[n] / Complex<T>(sqrt(norm_sq[n]));
  }

  /// Largest squared deviation of the normalized Gram matrix of the basis from the identity:
  /// |<P_m,P_n>|^2 / (D_m D_n) - delta_mn, measured as a square so it stays exact.
  T gram_residual_sq(const MomentTable<T>& table) const {
    T worst(0);
    for (int m = 0; m <= degree; ++m) {
      for (int n = 0; n <= m; ++n) {
        Complex<T> g = bergman_inner(table, monic[m], monic[n]);
        T dev;
        if (m == n) {
          T r = g.re / norm_sq[n] - 1;
          dev = r * r + (g.im / norm_sq[n]) * (g.im / norm_sq[n]);
        } else {
          dev = g.norm() / (norm_sq[m] * norm_sq[n]);
        }
        if (dev > worst) worst = dev;
      }
    }
    return worst;
  }
};

/// Bergman polynomials from the Hermitian factorization G = L D L^* of the Gram matrix:
/// the rows of L^{-1} are the monic coefficients and D holds the squared norms.
template <Field T>
OrthonormalBasis<T> orthonormalize(const MomentTable<T>& table, int N) {
  if (N < 0 || N > table.degree + 1) throw torsion_error(errc::invalid_spec, "degree exceeds the moment table");
  LdlFactor<T> f = ldl_hermitian(table.gram(N));
  Matrix<T> inv = unit_lower_inverse(f.lower);
  OrthonormalBasis<T> b;
  b.degree = N;
  b.norm_sq = std::move(f.diag);
  for (int n = 0; n <= N; ++n) {
    std::vector<Complex<T>> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[k] = inv(n, k);
    b.monic.emplace_back(std::move(c));
  }
  return b;
}

/// The determinant form of P_n: R_n is the (n+1)x(n+1) determinant whose rows r < n are
/// (c_{k,r})_k and whose last row is (1, z, ..., z^n); its leading coefficient is sigma_n.
template <Field T>
struct DeterminantRoute {
  Polynomial<T> monic;
  T sigma;
  Complex<T> zbar_R;  ///< <zbar, R_n>
  Complex<T> wn_R;    ///< <w^n, R_n> = sigma_n ||P_n||^2

  /// |d_n|^2 = |<zbar,R_n>|^2 / (sigma_n <w^n,R_n>).
  T dn_sq() const { return zbar_R.norm() / (sigma * wn_R.re); }
};

template <Field T>
DeterminantRoute<T> monic_via_determinant(const MomentTable<T>& table, int n) {
  if (n < 1) throw torsion_error(errc::precondition, "determinant route needs n >= 1");
  if (n > table.degree) throw torsion_error(errc::invalid_spec, "degree exceeds the moment table");
  const std::size_t sz = static_cast<std::size_t>(n) + 1;

  // Conjugated rows (c_{r,k})_k: the conjugate of each functional <R_n, g> is a determinant
  // with these rows and last row conj(<z^k, g>).
  auto with_last_row = [&](auto last) {
    Matrix<T> m(sz, sz);
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k <= n; ++k) m(r, k) = table(r, k);
    }
    for (int k = 0; k <= n; ++k) m(n, k) = last(k);
    return determinant(std::move(m));
  };

  Matrix<T> lead(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) lead(r, k) = table(k, r);
  }
  Complex<T> sigma = determinant(lead);
  if (!(sigma.re > 0)) throw precision_exhausted(n, "sigma_n is not positive");

  // coefficient of z^k is the cofactor (-1)^{n+k} M_{n,k}
  std::vector<Complex<T>> coeff(sz);
  for (int k = 0; k <= n; ++k) {
    Matrix<T> minor(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      int cc = 0;
      for (int col = 0; col <= n; ++col) {
        if (col == k) continue;
        minor(r, cc++) = table(col, r);
      }
    }
    Complex<T> m = determinant(std::move(minor));
    coeff[k] = ((n + k) % 2 ? -m : m) / sigma.re;
  }

  DeterminantRoute<T> out;
  out.monic = Polynomial<T>(std::move(coeff));
  out.sigma = sigma.re;
  out.zbar_R = with_last_row([&](int k) { return table(0, k + 1); });
  out.wn_R = with_last_row([&](int k) { return table(n, k); });
  return out;
}

/// Projection of zbar onto polynomials of degree <= N.
template <Field T>
struct ProjectionResult {
  /// e_n = <zbar, P_n>; the orthonormal coefficient is d_n = e_n / ||P_n||.
  std::vector<Complex<T>> e;
  /// |d_n|^2 = |e_n|^2 / D_n
  std::vector<T> dn_sq;
  /// rho_n for n = 0..N
  std::vector<T> rho_partial;
  /// Q_N = sum_n (e_n / D_n) P_n
  Polynomial<T> Q;
  T rho;

  Complex<T> d(int n, const OrthonormalBasis<T>& basis) const
    requires Inexact<T>
  {
    using std::sqrt;
    return e[n] / sqrt(basis.norm_sq[n]);
  }
};

template <Field T>
ProjectionResult<T> project_zbar(const MomentTable<T>& table, const OrthonormalBasis<T>& basis) {
  if (basis.degree + 1 > table.degree + 1) throw torsion_error(errc::invalid_spec, "basis exceeds the moment table");
  ProjectionResult<T> r;
  T rho = table(1, 1).re;
  for (int n = 0; n <= basis.degree; ++n) {
    const Polynomial<T>& P = basis.monic[n];
    Complex<T> e;
    for (std::size_t k = 0; k < P.size(); ++k) e += P[k].conj() * table(0, static_cast<int>(k) + 1);
    T dsq = e.norm() / basis.norm_sq[n];
    rho -= dsq;
    r.Q += P * (e / basis.norm_sq[n]);
    r.e.push_back(e);
    r.dn_sq.push_back(dsq);
    r.rho_partial.push_back(rho);
  }
  r.rho = rho;
  return r;
}

/// rho_N straight from a moment table.
template <Field T>
ProjectionResult<T> rho_upper(const MomentTable<T>& table, int N) {
  return project_zbar(table, orthonormalize(table, N));
}

template <Field T>
struct Rho1 {
  T rho;
  /// Q_1(z) = alpha z
  Complex<T> alpha;
};

/// Degree-1 bound for a region with zero centroid: 4(I20 I02 - I11^2)/(I20 + I02).
template <Field T>
Rho1<T> rho1_closed(const T& I20, const T& I02, const T& I11) {
  T polar = I20 + I02;
  if (polar == 0) throw torsion_error(errc::degenerate_region, "zero polar moment");
  Complex<T> c02(I20 - I02, T(-2) * I11);
  return {T(4) * (I20 * I02 - I11 * I11) / polar, c02 / Complex<T>(polar)};
}

namespace detail {

/// Squared test |v| <= tol * I00^{order/2 + 1}, exact when tol is zero.
template <Field T>
bool moment_vanishes(const T& v, int order, const T& I00, const T& tol) {
  T scale(1);
  for (int k = 0; k < order + 2; ++k) scale *= I00;
  return v * v <= tol * tol * scale;
}

}  // namespace detail

template <Field T>
struct Rho2 {
  /// value from the real-moment formula of the theorem statement
  T rho_I;
  /// value from c_{ij} via the projection in the proof
  T rho_c;
  Polynomial<T> Q;
};

/// Degree-2 bound for a region with zero centroid and I_21 = 0. Both displayed forms are
/// evaluated and must agree: exactly over the rationals, to 2^(-bits/2) relatively otherwise.
template <Field T>
Rho2<T> rho2_closed(const RealMoments<T>& I) {
  if (I.order() < 4) throw torsion_error(errc::precondition, "degree-2 bound needs moments through order 4");
  T tol(0);
  if constexpr (!is_exact_v<T>) tol = half_precision_tolerance<T>();
  const T& I00 = I(0, 0);
  if (!detail::moment_vanishes(I(1, 0), 1, I00, tol) || !detail::moment_vanishes(I(0, 1), 1, I00, tol)) {
    throw torsion_error(errc::precondition, "centroid is not at the origin");
  }
  if (!detail::moment_vanishes(I(2, 1), 3, I00, tol)) {
    throw torsion_error(errc::precondition, "I_21 is not zero; rotate the region first");
  }
  const T I20 = I(2, 0), I02 = I(0, 2), I11 = I(1, 1);
  const T I30 = I(3, 0), I12 = I(1, 2), I03 = I(0, 3);
  const T I40 = I(4, 0), I22 = I(2, 2), I04 = I(0, 4);
  const T polar = I20 + I02;
  if (polar == 0) throw torsion_error(errc::degenerate_region, "zero polar moment");

  Rho2<T> out;
  {
    T u = I02 * (I30 - I12) - 2 * I20 * I12 + I11 * I03;
    T v = I20 * I03 + I11 * (I30 + I12);
    T inner = I00 * (I40 + 2 * I22 + I04 - ((I12 + I30) * (I12 + I30) + I03 * I03) / polar) -
              (I20 - I02) * (I20 - I02) - 4 * I11 * I11;
    out.rho_I = 4 * ((I20 * I02 - I11 * I11) / polar - I00 * (u * u + v * v) / (polar * polar * inner));
  }

  BinomialTable<T> C(3);
  auto c = [&](int i, int j) { return complex_moment(I, i, j, C); };
  const Complex<T> c00 = c(0, 0), c11 = c(1, 1), c22 = c(2, 2);
  const Complex<T> c02 = c(0, 2), c20 = c(2, 0), c21 = c(2, 1), c12 = c(1, 2), c03 = c(0, 3);
  T denom = c00.re * c11.re * c22.re - c00.re * c21.norm() - c11.re * c20.norm();
  Complex<T> e2 = c03 - c12 * c02 / c11;
  T weight = c00.re * c11.re / denom;
  out.rho_c = c11.re - c02.norm() / c11.re - weight * e2.norm();

  Polynomial<T> P2{-(c20 / c00), -(c21 / c11), Complex<T>(T(1))};
  out.Q = Polynomial<T>{Complex<T>(), c02 / c11} + P2 * (e2 * weight);

  bool agree;
  if constexpr (is_exact_v<T>) {
    agree = out.rho_I == out.rho_c;
  } else {
    using std::abs;
    agree = abs(out.rho_I - out.rho_c) <= tol * abs(out.rho_c);
  }
  if (!agree) throw torsion_error(errc::inconsistency, "the two degree-2 forms disagree");
  return out;
}

/// Gaps rho_n - rho_true and the geometric ratio fitted to them.
struct ConvergenceProbe {
  std::vector<int> n;
  std::vector<double> gap;
  /// exp of the least-squares slope of log(gap) against n over the fit window
  std::optional<double> ratio;
  int fit_lo = 0;
  int fit_hi = 0;
};

/// rho_true must come from elsewhere (a closed form or a reference series). Gaps at or
/// below rho_true * 2^(-bits/2) are treated as noise and left out of the fit. The default
/// fit window is the final third of 1..N.
template <Inexact T>
ConvergenceProbe convergence_probe(const MomentTable<T>& table, int N, const T& rho_true,
                                   std::optional<std::pair<int, int>> window = std::nullopt) {
  ProjectionResult<T> pr = rho_upper(table, N);
  ConvergenceProbe out;
  out.fit_lo = window ? window->first : N - N / 3;
  out.fit_hi = window ? window->second : N;
  using std::abs;
  T floor = abs(rho_true) * half_precision_tolerance<T>();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int k = 0; k <= N; ++k) {
    T gap = pr.rho_partial[k] - rho_true;
    out.n.push_back(k);
    out.gap.push_back(to_double(gap));
    if (k < out.fit_lo || k > out.fit_hi || !(gap > floor)) continue;
    double y = std::log(to_double(gap));
    sx += k;
    sy += y;
    sxx += double(k) * k;
    sxy += k * y;
    ++count;
  }
  if (count >= 2) {
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    out.ratio = std::exp(slope);
  }
  return out;
}

template <Field U, Field T>
MomentTable<U> convert(const MomentTable<T>& t) {
  MomentTable<U> out(t.degree);
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) out(i, j) = convert<U>(t(i, j));
  }
  return out;
}

/// Runs fn(bits) at 256 bits, doubling on precision exhaustion up to 4096 bits.
/// Returns the result together with the precision that succeeded.
template <class Fn>
auto with_precision_retry(Fn&& fn, unsigned start_bits = kDefaultPrecisionBits,
                          unsigned max_bits = kMaxPrecisionBits) {
  for (unsigned bits = start_bits;; bits *= 2) {
    try {
      precision_scope scope(bits);
      return std::make_pair(fn(bits), bits);
    } catch (const precision_exhausted& e) {
      if (bits * 2 > max_bits) throw;
    }
  }
}

}  // namespace torsion
