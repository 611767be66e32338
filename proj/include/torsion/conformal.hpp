#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "torsion/core/polynomial.hpp"
#include "torsion/core/rigidity.hpp"
#include "torsion/moments.hpp"
#include "torsion/opuc.hpp"

namespace torsion {

/// Taylor coefficients a_0..a_M of a map on the unit disk.
template <Inexact T>
struct TaylorSeries {
  Polynomial<T> coeffs;
  /// declared radius of convergence (>= 1)
  double radius = 1;
  /// true when the coefficients are the whole function rather than a truncation
  bool finite = false;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex<T> operator()(const Complex<T>& z) const { return coeffs(z); }
  const Complex<T>& operator[](std::size_t k) const { return coeffs.coeffs()[k]; }

  /// The declared radius promises |a_M|^{1/M} ~ 1/radius < 1; report when the tail
  /// coefficients do not decay that way.
  bool decay_suspicious() const {
    if (finite || radius <= 1 || order() < 1) return false;
    double last = to_double(abs(coeffs[static_cast<std::size_t>(order())]));
    if (last == 0) return false;
    return std::pow(last, 1.0 / order()) > 0.5 * (1 + 1 / radius);
  }
};

template <Inexact T>
struct TailedValue {
  T value;
  /// estimated truncation error; +inf when the coefficients show no geometric decay
  double tail = 0;
};

/// Geometric decay ratio of a coefficient list, from the last `window` indices:
/// (|c_K| / |c_L|)^{1/(K-L)} with K the last nonzero index and L the last nonzero index
/// at least `window` places earlier (or the first nonzero index).
template <Inexact T>
double geometric_ratio(const std::vector<Complex<T>>& c, int window = 20) {
  int K = -1;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (!c[k].is_zero()) {
      K = k;
      break;
    }
  }
  if (K <= 0) return 0;
  int L = -1;
  for (int k = K - window; k >= 0; --k) {
    if (!c[k].is_zero()) {
      L = k;
      break;
    }
  }
  if (L < 0) {
    for (int k = 0; k < K; ++k) {
      if (!c[k].is_zero()) {
        L = k;
        break;
      }
    }
  }
  if (L < 0) return 0;
  double lk = std::log(to_double(abs(c[K]))) - std::log(to_double(abs(c[L])));
  return std::exp(lk / (K - L));
}

/// \int_D |sum b_k z^k|^2 dA = pi sum |b_k|^2 / (k+1), with a geometric tail estimate.
template <Inexact T>
TailedValue<T> disk_l2_normsq(const std::vector<Complex<T>>& b, bool finite = false) {
  T s(0);
  for (std::size_t k = 0; k < b.size(); ++k) s += b[k].norm() / T(static_cast<long>(k) + 1);
  TailedValue<T> out{pi<T>() * s, 0};
  if (finite || b.empty()) return out;
  double r = geometric_ratio(b);
  if (r >= 1) {
    out.tail = std::numeric_limits<double>::infinity();
  } else if (r > 0) {
    double last = to_double(b.back().norm());
    out.tail = M_PI * last * r * r / ((1 - r * r) * (b.size() + 1));
  }
  return out;
}

template <Inexact T>
TailedValue<T> disk_l2_normsq(const TaylorSeries<T>& s) {
  return disk_l2_normsq(s.coeffs.coeffs(), s.finite);
}

/// Product of two series truncated at degree `deg`.
template <Inexact T>
std::vector<Complex<T>> series_product(const std::vector<Complex<T>>& a, const std::vector<Complex<T>>& b, int deg) {
  std::vector<Complex<T>> out(static_cast<std::size_t>(deg) + 1);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= deg; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= deg; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// h_j = (1/2) \int e^{-ij theta} |psi(e^{i theta})|^2 d theta / 2 pi = (1/2) sum_n a_{n+j} conj(a_n).
template <Inexact T>
Complex<T> fourier_h(const TaylorSeries<T>& psi, int j) {
  Complex<T> s;
  const int M = psi.order();
  for (int n = 0; n + j <= M; ++n) s += psi[n + j] * psi[n].conj();
  return s / T(2);
}

/// F(z) = h_0 + 2 sum_{j>=1} h_j z^j.
template <Inexact T>
struct HerglotzSeries {
  std::vector<Complex<T>> h;
  Polynomial<T> F;

  T h0() const { return h[0].re; }
  Polynomial<T> derivative() const { return F.derivative(); }
};

template <Inexact T>
HerglotzSeries<T> herglotz_series(const TaylorSeries<T>& psi) {
  HerglotzSeries<T> out;
  const int M = psi.order();
  std::vector<Complex<T>> f(static_cast<std::size_t>(M) + 1);
  for (int j = 0; j <= M; ++j) {
    out.h.push_back(fourier_h(psi, j));
    f[j] = j == 0 ? out.h[0] : out.h[j] * T(2);
  }
  out.F = Polynomial<T>(std::move(f));
  return out;
}

template <Inexact T>
struct ConformalRho {
  T value;
  T psi_term;  ///< ||psi psi'||^2 over the disk
  T F_term;    ///< ||F'||^2 over the disk
  double tail;
  int truncation;
};

/// rho = ||psi psi'||^2 - ||F'||^2 over the disk, with F' supplied as a coefficient list.
template <Inexact T>
ConformalRho<T> rho_conformal(const TaylorSeries<T>& psi, const std::vector<Complex<T>>& Fprime, bool Fprime_finite) {
  const int M = psi.order();
  std::vector<Complex<T>> dpsi = psi.coeffs.derivative().coeffs();
  // coefficients through degree M-1 are unaffected by the truncation of psi
  std::vector<Complex<T>> pp = series_product(psi.coeffs.coeffs(), dpsi, psi.finite ? 2 * M : M - 1);
  auto a = disk_l2_normsq(pp, psi.finite);
  auto b = disk_l2_normsq(Fprime, Fprime_finite);
  ConformalRho<T> out{a.value - b.value, a.value, b.value, a.tail + b.tail, M};
  if (out.value < 0 && -to_double(out.value) > out.tail) {
    throw torsion_error(errc::inconsistency, "negative torsional rigidity: the map is probably not univalent");
  }
  return out;
}

/// rho from the Taylor series of psi alone: F' has coefficient 2j h_j at z^{j-1}.
template <Inexact T>
ConformalRho<T> rho_conformal(const TaylorSeries<T>& psi) {
  const int M = psi.order();
  std::vector<Complex<T>> fp(static_cast<std::size_t>(M > 0 ? M : 0));
  for (int j = 1; j <= M; ++j) fp[j - 1] = fourier_h(psi, j) * T(2 * j);
  return rho_conformal(psi, fp, psi.finite);
}

/// Doubles the truncation from `start` until the tail estimate drops below rel_tol * rho.
template <Inexact T>
ConformalRho<T> rho_conformal_adaptive(const std::function<TaylorSeries<T>(int)>& make_series, double rel_tol,
                                       int start = 200, int max_order = 12800) {
  for (int M = start;; M *= 2) {
    ConformalRho<T> r = rho_conformal(make_series(M));
    if (r.tail <= rel_tol * std::abs(to_double(r.value)) || M * 2 > max_order) return r;
  }
}

template <Inexact T>
using ComplexFn = std::function<Complex<T>(const Complex<T>&)>;

/// Theorem-form evaluators: Q(z) = F'(phi(z)) phi'(z) and nu(z) = Re F(phi(z)) - |z|^2/2.
template <Inexact T>
struct StressProjection {
  ComplexFn<T> Q;
  std::function<T(const Complex<T>&)> nu;
  /// max |nu| over boundary samples psi(e^{i theta})
  double boundary_residual = 0;
  bool flagged = false;
};

template <Inexact T>
StressProjection<T> stress_and_projection(ComplexFn<T> F, ComplexFn<T> dF, ComplexFn<T> phi, ComplexFn<T> dphi,
                                          ComplexFn<T> boundary_psi, int samples = 64, double tol = 1e-12) {
  StressProjection<T> out;
  out.Q = [dF, phi, dphi](const Complex<T>& z) { return dF(phi(z)) * dphi(z); };
  out.nu = [F, phi](const Complex<T>& z) { return F(phi(z)).re - z.norm() / 2; };
  for (int s = 0; s < samples; ++s) {
    T t = T(2) * pi<T>() * T(s) / T(samples);
    Complex<T> z = boundary_psi(polar(T(1), t));
    using std::abs;
    double r = std::abs(to_double(out.nu(z)));
    if (r > out.boundary_residual) out.boundary_residual = r;
  }
  out.flagged = !(out.boundary_residual <= tol);
  return out;
}

/// All roots of a polynomial by Aberth-Ehrlich iteration.
template <Inexact T>
std::vector<Complex<T>> polynomial_roots(const Polynomial<T>& p_in) {
  Polynomial<T> p = p_in;
  p.trim();
  const int n = p.degree();
  if (n < 1) return {};
  p /= p.leading();
  Polynomial<T> dp = p.derivative();
  T bound(0);
  for (int k = 0; k < n; ++k) {
    T m = abs(p[k]);
    if (m > bound) bound = m;
  }
  bound += 1;
  std::vector<Complex<T>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[k] = polar(bound * T(0.5), T(2) * pi<T>() * (T(k) + T(0.25)) / T(n));
  T tol = half_precision_tolerance<T>();
  tol *= tol;
  for (int iter = 0; iter < 500; ++iter) {
    T worst(0);
    for (int k = 0; k < n; ++k) {
      Complex<T> ratio = p(z[k]) / dp(z[k]);
      Complex<T> s;
      for (int j = 0; j < n; ++j) {
        if (j != k) s += Complex<T>(T(1)) / (z[k] - z[j]);
      }
      Complex<T> step = ratio / (Complex<T>(T(1)) - ratio * s);
      z[k] -= step;
      T m = abs(step) / (T(1) + abs(z[k]));
      if (m > worst) worst = m;
    }
    if (worst <= tol) break;
  }
  return z;
}

/// The root of minimal modulus, which is the preimage in the disk for a univalent map.
template <Inexact T>
Complex<T> smallest_root(const std::vector<Complex<T>>& roots) {
  Complex<T> best = roots.front();
  for (const auto& r : roots) {
    if (r.norm() < best.norm()) best = r;
  }
  return best;
}

// ---------------------------------------------------------------------------------------
// Dented disk: psi(z) = z + a/(z - b)

struct DentedDiskValidity {
  bool cond_i = false;    ///< a != 0, |b| > 1
  bool cond_ii = false;   ///< |b +- sqrt(a)| > 1
  bool cond_iii = false;  ///< |b + a/(e^{it} - b)| > 1 for all t
  /// grid minimum of |b + a/(e^{it}-b)| minus 1, less the Lipschitz allowance
  double margin_iii = 0;

  bool valid() const { return cond_i && cond_ii && cond_iii; }
  std::string failures() const {
    std::string s;
    auto add = [&](bool ok, const char* what) {
      if (!ok) s += (s.empty() ? "" : ", ") + std::string(what);
    };
    add(cond_i, "condition (i) a != 0 and |b| > 1");
    add(cond_ii, "condition (ii) |b +- sqrt(a)| > 1");
    add(cond_iii, "condition (iii) |b + a/(e^{it}-b)| > 1");
    return s;
  }
};

/// Condition (iii) is checked on a uniform t-grid. Between grid points the function moves by
/// at most |a|/(|b|-1)^2 per unit t, so a grid minimum above 1 + L h / 2 certifies the bound.
template <Inexact T>
DentedDiskValidity dented_disk_validity(const Complex<T>& a, const Complex<T>& b, int grid = 4096) {
  DentedDiskValidity v;
  T babs = abs(b);
  v.cond_i = !a.is_zero() && babs > 1;
  Complex<T> ra = sqrt(a);
  v.cond_ii = abs(b + ra) > 1 && abs(b - ra) > 1;
  if (!(babs > 1)) {
    v.cond_iii = false;
    v.margin_iii = -std::numeric_limits<double>::infinity();
    return v;
  }
  double lip = to_double(abs(a)) / std::pow(to_double(babs) - 1, 2);
  double h = 2 * M_PI / grid;
  double least = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    T t = T(2) * pi<T>() * T(k) / T(grid);
    Complex<T> e = polar(T(1), t);
    double g = to_double(abs(b + a / (e - b)));
    least = std::min(least, g);
  }
  v.margin_iii = least - 1 - lip * h / 2;
  v.cond_iii = v.margin_iii > 0;
  return v;
}

template <Inexact T>
struct DentedDisk {
  Complex<T> a, b;
  DentedDiskValidity validity;
  TaylorSeries<T> psi;
  TailedValue<T> rho_closed;
  /// F = h0 + A1 z - A2 z^2 / (b (z - b))
  RationalFunction<T> F;
  T h0;
  Complex<T> A1, A2;

  /// closed-form Fourier data h_j
  Complex<T> h(int j) const {
    if (j == 0) return Complex<T>(h0);
    if (j == 1) return A1 / T(2);
    return A2 / (pow(b, static_cast<unsigned>(j)) * T(2));
  }
  Complex<T> psi_at(const Complex<T>& z) const { return z + a / (z - b); }
  Complex<T> dpsi_at(const Complex<T>& z) const {
    Complex<T> d = z - b;
    return Complex<T>(T(1)) - a / (d * d);
  }
  /// the root of w^2 - (b+z) w + (a + b z) = 0 inside the disk
  Complex<T> phi(const Complex<T>& z) const {
    Complex<T> s = sqrt((b + z) * (b + z) - (a + b * z) * T(4));
    Complex<T> w1 = (b + z + s) / T(2), w2 = (b + z - s) / T(2);
    return w1.norm() < w2.norm() ? w1 : w2;
  }
  Complex<T> dphi(const Complex<T>& z) const { return Complex<T>(T(1)) / dpsi_at(phi(z)); }
};

/// Taylor data, validity, Fourier table, Herglotz function and the closed-form rho. In the
/// closed form pi multiplies the whole expression, which is the placement that agrees with
/// the series route and has the limit pi/2 as b grows.
template <Inexact T>
DentedDisk<T> dented_disk_family(const Complex<T>& a, const Complex<T>& b, int M = 200) {
  DentedDisk<T> d;
  d.a = a;
  d.b = b;
  d.validity = dented_disk_validity(a, b);
  if (!d.validity.valid()) throw torsion_error(errc::invalid_parameters, "dented disk: " + d.validity.failures());

  std::vector<Complex<T>> c(static_cast<std::size_t>(M) + 1);
  Complex<T> binv = Complex<T>(T(1)) / b;
  Complex<T> p = binv;  // b^{-(k+1)}
  for (int k = 0; k <= M; ++k) {
    c[k] = -(a * p);
    p *= binv;
  }
  if (M >= 1) c[1] += Complex<T>(T(1));
  d.psi.coeffs = Polynomial<T>(std::move(c));
  d.psi.radius = to_double(abs(b));

  const T aa = a.norm(), bb = b.norm();
  const Complex<T> b2 = b * b, b3 = b2 * b;
  d.h0 = (T(1) - T(2) * (a / b2).re + aa / (bb - 1)) / 2;
  d.A1 = Complex<T>(aa) / (b * (bb - 1)) - a / b3 - a.conj() / b.conj();
  d.A2 = Complex<T>(aa / (bb - 1)) - a / b2;

  // F = [(h0 + A1 z) b (z - b) - A2 z^2] / (b (z - b))
  Polynomial<T> lin{Complex<T>(d.h0), d.A1};
  Polynomial<T> den{-(b * b), b};
  d.F = RationalFunction<T>{lin * den - Polynomial<T>{Complex<T>(), Complex<T>(), d.A2}, den};

  // j >= 2 sum: terms t_j = (j+1)|a|^2/|b|^{2j+2} |a(j+2)/b^2 - 2|^2, bounded by
  // u_j = (j+1)|a|^2/|b|^{2j+2} (|a|(j+2)/|b|^2 + 2)^2 whose ratio decreases to 1/|b|^2
  const T babs = abs(b), aabs = abs(a);
  T s(0);
  T q = T(1) / bb;
  T geo = aa / (bb * bb * bb);  // |a|^2 / |b|^{2j+2} at j = 2
  int J = 2;
  auto upper = [&](int j, const T& g) {
    T f = aabs * T(j + 2) / bb + 2;
    return T(j + 1) * g * f * f;
  };
  T tail_bound;
  for (;; ++J) {
    Complex<T> w = a * T(J + 2) / b2 - Complex<T>(T(2));
    s += T(J + 1) * geo * w.norm();
    T next_geo = geo * q;
    T u_next = upper(J + 1, next_geo);
    T ratio = q * T(J + 3) / T(J + 2);
    {
      T f1 = aabs * T(J + 4) / bb + 2, f0 = aabs * T(J + 3) / bb + 2;
      ratio *= (f1 / f0) * (f1 / f0);
    }
    geo = next_geo;
    if (ratio < 1) {
      tail_bound = u_next / (T(1) - ratio);
      if (tail_bound <= abs(s) * half_precision_tolerance<T>() * half_precision_tolerance<T>() || J > 100000) break;
    }
  }
  Complex<T> t1c = a / b * (a / b2 - Complex<T>(T(1)));
  T t1 = t1c.norm() - (d.A1.norm() + d.A2.norm() * (T(2) - T(1) / bb) / ((bb - 1) * (bb - 1)));
  Complex<T> last = Complex<T>(T(1)) + a * (a * T(3) / b2 - Complex<T>(T(2))) / b2;
  T total = t1 + s / 4 + last.norm() / 2;
  d.rho_closed = {pi<T>() * total, to_double(pi<T>() * tail_bound / 4)};
  (void)babs;
  return d;
}

// ---------------------------------------------------------------------------------------
// Neumann's oval: psi(z) = (R^4 - 1) z / (R (R^2 - z^2)), R = (a + sqrt(a^2 + 4)) / 2

template <Inexact T>
struct NeumannOval {
  T a, R;
  TaylorSeries<T> psi;
  /// pi (a^4/2 + 2a^2 + 1)
  T rho_closed;
  /// F = (R^4-1)/(2R^2) + (R^4-1) z^2 / (R^2 (R^2 - z^2))
  RationalFunction<T> F;

  Complex<T> psi_at(const Complex<T>& z) const {
    T R4 = R * R * R * R;
    return z * (R4 - 1) / (Complex<T>(R * R) - z * z) / R;
  }
  Complex<T> dpsi_at(const Complex<T>& z) const {
    T R2 = R * R, R4 = R2 * R2;
    Complex<T> d = Complex<T>(R2) - z * z;
    return (Complex<T>(R2) + z * z) * ((R4 - 1) / R) / (d * d);
  }
  /// the root of z R w^2 + (R^4 - 1) w - z R^3 = 0 inside the disk
  Complex<T> phi(const Complex<T>& z) const {
    if (z.is_zero()) return {};
    T R4 = R * R * R * R;
    Complex<T> A = z * R, B(R4 - 1), C = -(z * (R * R * R));
    Complex<T> s = sqrt(B * B - A * C * T(4));
    Complex<T> w1 = (-B + s) / (A * T(2)), w2 = (-B - s) / (A * T(2));
    return w1.norm() < w2.norm() ? w1 : w2;
  }
  Complex<T> dphi(const Complex<T>& z) const { return Complex<T>(T(1)) / dpsi_at(phi(z)); }
};

/// Univalent for every a > 0: psi(z1) = psi(z2) with z1 != z2 forces z1 z2 = -R^2.
template <Inexact T>
NeumannOval<T> neumann_oval_family(const T& a, int M = 200) {
  if (!(a > 0)) throw torsion_error(errc::domain_error, "Neumann oval parameter must be positive");
  using std::sqrt;
  NeumannOval<T> n;
  n.a = a;
  n.R = (a + sqrt(a * a + 4)) / 2;
  const T R2 = n.R * n.R, R4 = R2 * R2;
  std::vector<Complex<T>> c(static_cast<std::size_t>(M) + 1);
  T coef = (R4 - 1) / (R2 * n.R);  // (R^4-1)/R^{2k+3} at z^{2k+1}
  for (int k = 1; k <= M; k += 2) {
    c[k] = Complex<T>(coef);
    coef /= R2;
  }
  n.psi.coeffs = Polynomial<T>(std::move(c));
  n.psi.radius = to_double(n.R);
  n.rho_closed = pi<T>() * (a * a * a * a / 2 + 2 * a * a + 1);
  Polynomial<T> den{Complex<T>(R4), Complex<T>(), Complex<T>(-R2)};  // R^2 (R^2 - z^2)
  Polynomial<T> num = den * Complex<T>((R4 - 1) / (2 * R2)) + Polynomial<T>{Complex<T>(), Complex<T>(), Complex<T>(R4 - 1)};
  n.F = RationalFunction<T>{num, den};
  return n;
}

// ---------------------------------------------------------------------------------------
// Reciprocal polynomial maps psi = sqrt(2) / p, p = s q

template <Inexact T>
struct ReciprocalMap {
  Polynomial<T> q;
  T scale;  ///< s
  TaylorSeries<T> psi;
  RationalFunction<T> F;

  Complex<T> psi_at(const Complex<T>& z) const {
    using std::sqrt;
    return Complex<T>(sqrt(T(2))) / (q(z) * scale);
  }
  Complex<T> dpsi_at(const Complex<T>& z) const {
    using std::sqrt;
    Complex<T> qz = q(z);
    return -(q.derivative()(z) * sqrt(T(2))) / (qz * qz * scale);
  }
  /// preimage in the disk: the root of s q(w) z - sqrt(2) = 0 of least modulus
  Complex<T> phi(const Complex<T>& z) const {
    using std::sqrt;
    Polynomial<T> eq = q * (z * scale);
    eq.at(0) -= Complex<T>(sqrt(T(2)));
    return smallest_root(polynomial_roots(eq));
  }
  Complex<T> dphi(const Complex<T>& z) const { return Complex<T>(T(1)) / dpsi_at(phi(z)); }
};

/// The Herglotz function comes from the exact OPUC shortcut, the Taylor series of psi from
/// the reciprocal of q.
template <Inexact T>
ReciprocalMap<T> reciprocal_map_family(const Polynomial<Rational>& shape, std::optional<Rational> scale_squared,
                                       int M = 200) {
  auto h = herglotz_from_reciprocal_poly<Rational>(shape, scale_squared);
  ReciprocalMap<T> m;
  m.q = convert<T>(shape);
  m.q.trim();
  using std::sqrt;
  m.scale = sqrt(from_rational<T>(h.scale_squared));
  m.F = RationalFunction<T>{convert<T>(h.F.numerator), convert<T>(h.F.denominator)};
  RationalFunction<T> inv{Polynomial<T>{Complex<T>(sqrt(T(2)) / m.scale)}, m.q};
  m.psi.coeffs = Polynomial<T>(inv.taylor(static_cast<std::size_t>(M) + 1));
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& r : polynomial_roots(m.q)) nearest = std::min(nearest, to_double(abs(r)));
  m.psi.radius = nearest;
  return m;
}

/// Taylor coefficients of F' for a rational F.
template <Inexact T>
std::vector<Complex<T>> rational_derivative_taylor(const RationalFunction<T>& F, int count) {
  Polynomial<T> t(F.taylor(static_cast<std::size_t>(count) + 1));
  auto d = t.derivative().coeffs();
  d.resize(static_cast<std::size_t>(count));
  return d;
}

// ---------------------------------------------------------------------------------------
// Equilateral triangle (1,0), (-1/2, +-sqrt(3)/2): the projection of zbar is z^2.

template <Inexact T>
struct EquilateralExact {
  Polynomial<T> Q;
  /// c_11 - ||z^2||^2 = c_11 - c_22
  T rho;
  /// largest |2 Re[z^3/3 + 1/6] - |z|^2| over sampled boundary points
  double boundary_residual;
  /// the same residual at the vertices from the factored form (2/3)(x+1/2)(x-1-sqrt3 y)(x-1+sqrt3 y)
  double vertex_residual;
};

template <Inexact T>
EquilateralExact<T> equilateral_triangle_exact(int samples_per_edge = 64) {
  auto poly = realize_polygon<T>(RegionSpec{family::EquilateralTriangle{}});
  EquilateralExact<T> out;
  out.Q = Polynomial<T>::monomial(2);
  RealMoments<T> I = real_moments(poly, 4);
  out.rho = complex_moment(I, 1, 1).re - complex_moment(I, 2, 2).re;
  using std::sqrt;
  const T s3 = sqrt(T(3));
  auto complex_form = [](const Complex<T>& z) {
    Complex<T> z3 = z * z * z;
    return T(2) * (z3.re / 3 + T(1) / 6) - z.norm();
  };
  auto factored = [&](const Point<T>& p) {
    return T(2) / 3 * (p.x + T(1) / 2) * (p.x - (1 + s3 * p.y)) * (p.x - (1 - s3 * p.y));
  };
  out.boundary_residual = 0;
  out.vertex_residual = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const auto& p = poly[k];
    const auto& q = poly.next(k);
    out.vertex_residual = std::max(out.vertex_residual, std::abs(to_double(factored(p))));
    for (int s = 0; s < samples_per_edge; ++s) {
      T t = T(s) / T(samples_per_edge);
      Complex<T> z(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t);
      out.boundary_residual = std::max(out.boundary_residual, std::abs(to_double(complex_form(z))));
    }
  }
  return out;
}

/// Moment table of psi(D) from its Taylor series:
///   c_{ij} = <psi^i psi', psi^j psi'>_D = pi sum_k g^{(i)}_k conj(g^{(j)}_k) / (k+1).
template <Inexact T>
MomentTable<T> conformal_moment_table(const TaylorSeries<T>& psi, int N) {
  const int M = psi.order();
  MomentTable<T> t(N);
  std::vector<std::vector<Complex<T>>> g;
  std::vector<Complex<T>> dpsi = psi.coeffs.derivative().coeffs();
  std::vector<Complex<T>> power{Complex<T>(T(1))};
  for (int i = 0; i < t.size(); ++i) {
    g.push_back(series_product(power, dpsi, M - 1));
    power = series_product(power, psi.coeffs.coeffs(), M);
  }
  std::vector<T> w(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) w[k] = pi<T>() / T(k + 1);
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      Complex<T> s;
      for (int k = 0; k < M; ++k) s += g[i][k] * g[j][k].conj() * w[k];
      t(i, j) = s;
    }
  }
  return t;
}

}  // namespace torsion
