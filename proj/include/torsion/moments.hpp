#pragma once

#include <array>
#include <mutex>
#include <vector>

#include "torsion/core/linalg.hpp"
#include "torsion/regions.hpp"

namespace torsion {

/// Binomial coefficient C(n, k) as an exact integer, from a cached Pascal triangle.
inline const Integer& binomial_integer(int n, int k) {
  static std::vector<std::vector<Integer>> rows;
  static std::mutex guard;
  static const Integer zero(0);
  if (k < 0 || k > n || n < 0) return zero;
  std::lock_guard<std::mutex> lock(guard);
  while (static_cast<int>(rows.size()) <= n) {
    std::size_t r = rows.size();
    std::vector<Integer> row(r + 1, Integer(1));
    for (std::size_t j = 1; j < r; ++j) row[j] = rows[r - 1][j - 1] + rows[r - 1][j];
    rows.push_back(std::move(row));
  }
  return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

template <Field T>
T binomial(int n, int k) {
  const Integer& b = binomial_integer(n, k);
  if constexpr (std::is_same_v<T, double>) {
    return b.template convert_to<double>();
  } else if constexpr (std::is_same_v<T, Rational>) {
    return Rational(b);
  } else {
    Real r;
    mpfr_set_z(r.backend().data(), b.backend().data(), MPFR_RNDN);
    return r;
  }
}

/// Binomial coefficients C(n, k), 0 <= k <= n <= max_n, converted once into T.
template <Field T>
class BinomialTable {
 public:
  explicit BinomialTable(int max_n) : rows_(static_cast<std::size_t>(max_n) + 1) {
    for (int n = 0; n <= max_n; ++n) {
      rows_[n].reserve(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) rows_[n].push_back(binomial<T>(n, k));
    }
  }
  const T& operator()(int n, int k) const { return rows_[n][k]; }

 private:
  std::vector<std::vector<T>> rows_;
};

template <Field T>
using Triangle = std::array<Point<T>, 3>;

/// Integral of x^m y^n over a triangle, from the barycentric closed form
///   2|A| m! n! / (m+n+2)! * sum_{|alpha|=m, |beta|=n} prod_k C(alpha_k+beta_k, alpha_k) x_k^alpha_k y_k^beta_k.
/// A degenerate triangle integrates to zero and sets *degenerate when given.
template <Field T>
T triangle_monomial_moment(const Triangle<T>& tri, int m, int n, bool* degenerate = nullptr) {
  T twice_area = cross(tri[0], tri[1], tri[2]);
  if (degenerate) *degenerate = twice_area == 0;
  if (twice_area == 0) return T(0);
  if (twice_area < 0) twice_area = -twice_area;

  auto powers = [](const T& v, int count) {
    std::vector<T> p(static_cast<std::size_t>(count) + 1, T(1));
    for (int k = 1; k <= count; ++k) p[k] = p[k - 1] * v;
    return p;
  };
  std::array<std::vector<T>, 3> xp, yp;
  for (int k = 0; k < 3; ++k) {
    xp[k] = powers(tri[k].x, m);
    yp[k] = powers(tri[k].y, n);
  }
  T sum(0);
  for (int a0 = 0; a0 <= m; ++a0) {
    for (int a1 = 0; a0 + a1 <= m; ++a1) {
      int a2 = m - a0 - a1;
      for (int b0 = 0; b0 <= n; ++b0) {
        for (int b1 = 0; b0 + b1 <= n; ++b1) {
          int b2 = n - b0 - b1;
          T term = binomial<T>(a0 + b0, a0) * binomial<T>(a1 + b1, a1) * binomial<T>(a2 + b2, a2);
          term *= xp[0][a0] * xp[1][a1] * xp[2][a2] * yp[0][b0] * yp[1][b1] * yp[2][b2];
          sum += term;
        }
      }
    }
  }
  // m! n! / (m+n+2)! = 1 / ((m+n+2)(m+n+1) C(m+n, m))
  T denom = T((m + n + 2) * (m + n + 1)) * binomial<T>(m + n, m);
  return twice_area * sum / denom;
}

/// Real area moments I_mn = \int x^m y^n dA for all m+n <= order.
template <Field T>
class RealMoments {
 public:
  RealMoments() = default;
  explicit RealMoments(int order) : order_(order), v_(static_cast<std::size_t>((order + 1) * (order + 2) / 2)) {}

  int order() const { return order_; }
  T& operator()(int m, int n) { return v_[index(m, n)]; }
  const T& operator()(int m, int n) const { return v_[index(m, n)]; }

 private:
  std::size_t index(int m, int n) const {
    if (m < 0 || n < 0 || m + n > order_) throw torsion_error(errc::internal, "real moment index out of range");
    int d = m + n;
    return static_cast<std::size_t>(d * (d + 1) / 2 + n);
  }
  int order_ = -1;
  std::vector<T> v_;
};

/// All I_mn with m+n <= order over a polygon, as a signed fan of triangles (0, v_k, v_{k+1})
/// from the origin. With one apex at the origin the triangle closed form collapses to a single
/// double sum per edge; signed areas make the fan valid for non-convex polygons.
template <Field T>
RealMoments<T> real_moments(const PolygonRegion<T>& poly, int order) {
  RealMoments<T> out(order);
  const std::size_t nv = poly.size();
  std::vector<std::vector<T>> xp(nv), yp(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    xp[k].assign(static_cast<std::size_t>(order) + 1, T(1));
    yp[k].assign(static_cast<std::size_t>(order) + 1, T(1));
    for (int e = 1; e <= order; ++e) {
      xp[k][e] = xp[k][e - 1] * poly[k].x;
      yp[k][e] = yp[k][e - 1] * poly[k].y;
    }
  }
  BinomialTable<T> C(order);
  std::vector<T> edge_cross(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    const auto& p = poly[k];
    const auto& q = poly.next(k);
    edge_cross[k] = p.x * q.y - q.x * p.y;
  }
  for (int d = 0; d <= order; ++d) {
    for (int n = 0; n <= d; ++n) {
      int m = d - n;
      T total(0);
      for (std::size_t k = 0; k < nv; ++k) {
        if (edge_cross[k] == 0) continue;
        std::size_t l = (k + 1) % nv;
        T s(0);
        for (int i = 0; i <= m; ++i) {
          for (int j = 0; j <= n; ++j) {
            s += C(i + j, i) * C(d - i - j, m - i) * xp[k][i] * xp[l][m - i] * yp[k][j] *
                 yp[l][n - j];
          }
        }
        total += edge_cross[k] * s;
      }
      out(m, n) = total / (T((d + 2) * (d + 1)) * C(d, m));
    }
  }
  return out;
}

template <Field T>
T polygon_real_moment(const PolygonRegion<T>& poly, int m, int n) {
  return real_moments(poly, m + n)(m, n);
}

/// c_{i,j} = \int z^i zbar^j dA from real moments:
///   sum_{a,b} C(i,a) C(j,b) i^{(i-a)} (-i)^{(j-b)} I_{a+b, i+j-a-b}.
template <Field T>
Complex<T> complex_moment(const RealMoments<T>& I, int i, int j, const BinomialTable<T>& C) {
  Complex<T> out;
  for (int a = 0; a <= i; ++a) {
    for (int b = 0; b <= j; ++b) {
      T w = C(i, a) * C(j, b) * I(a + b, i + j - a - b);
      out += Complex<T>::i_pow((i - a) + 3L * (j - b)) * w;
    }
  }
  return out;
}

template <Field T>
Complex<T> complex_moment(const RealMoments<T>& I, int i, int j) {
  return complex_moment(I, i, j, BinomialTable<T>(i > j ? i : j));
}

template <Field T>
Complex<T> complex_moment(const PolygonRegion<T>& poly, int i, int j) {
  return complex_moment(real_moments(poly, i + j), i, j);
}

/// 2F1(-N, b; c; x) as the finite sum over k = 0..N.
template <Field T>
T gauss_2F1_terminating(int negN, const T& b, const T& c, const T& x) {
  if (negN > 0) throw torsion_error(errc::domain_error, "first 2F1 parameter must be a nonpositive integer");
  const int N = -negN;
  // (c)_k vanishes for some k <= N exactly when c is in {0, -1, ..., 1-N}
  for (int k = 0; k < N; ++k) {
    if (c == T(-k)) throw torsion_error(errc::domain_error, "2F1 lower parameter hits a nonpositive integer");
  }
  T term(1), sum(1);
  for (int k = 0; k < N; ++k) {
    term *= T(negN + k) * (b + T(k)) / ((c + T(k)) * T(k + 1)) * x;
    sum += term;
  }
  return sum;
}

namespace detail {

/// Coefficient C(n,j) C(m,k) (-1)^(m-k) i^(n+m-j-k) of x^(j+k) y^(n+m-j-k) in z^n zbar^m.
template <Field T>
Complex<T> zn_zbarm_coefficient(int n, int m, int j, int k) {
  T w = binomial<T>(n, j) * binomial<T>(m, k);
  if ((m - k) % 2) w = -w;
  return Complex<T>::i_pow(n + m - j - k) * w;
}

}  // namespace detail

/// House-region moment c_{n,m}. Each term integrates x^p y^q over the two halves; the
/// right half is (1-a)^(q+1) 2F1(-(q+1), p+1; p+2; (1-2a)/(1-a)) / ((p+1)(q+1)) and the
/// left half is its mirror image, weighted by (-1)^p.
template <Field T>
Complex<T> house_moment_closed(const Param& a_param, int n, int m) {
  Rational a2 = a_param.square();
  if (a_param.sign() < 0 || a2 * 4 > 1) {
    throw torsion_error(errc::domain_error, "house parameter must lie in [0, 1/2]");
  }
  T a = a_param.template as<T>();
  T one_minus_a = T(1) - a;
  T r = (T(1) - 2 * a) / one_minus_a;
  Complex<T> out;
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= m; ++k) {
      int p = j + k;
      if (p % 2) continue;  // the halves cancel
      int q = n + m - p;
      T pw(1);
      for (int e = 0; e <= q; ++e) pw *= one_minus_a;
      T half = pw * gauss_2F1_terminating<T>(-(q + 1), T(p + 1), T(p + 2), r) / T((p + 1) * (q + 1));
      out += detail::zn_zbarm_coefficient<T>(n, m, j, k) * (2 * half);
    }
  }
  return out;
}

/// Moment c_{n,m} of the area-one right triangle (0,0), (a,0), (a,2/a):
///   I_{p,q} = 2^(q+1) a^(p-q) / ((q+1)(p+q+2)).
template <Field T>
Complex<T> right_triangle_moment_closed(const Param& a_param, int n, int m) {
  if (a_param.sign() <= 0) throw torsion_error(errc::domain_error, "right triangle parameter must be positive");
  T a = a_param.template as<T>();
  Complex<T> out;
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= m; ++k) {
      int p = j + k, q = n + m - p;
      T v = T(1);
      for (int e = 0; e <= q; ++e) v *= 2;
      int expo = p - q;
      T apow(1);
      for (int e = 0; e < (expo < 0 ? -expo : expo); ++e) apow *= a;
      v = expo < 0 ? v / apow : v * apow;
      v /= T((q + 1) * (p + q + 2));
      out += detail::zn_zbarm_coefficient<T>(n, m, j, k) * v;
    }
  }
  return out;
}

/// Complex moments c[i][j], 0 <= i,j <= N+1, for a degree-N computation.
template <Field T>
struct MomentTable {
  int degree = 0;
  Matrix<T> c;
  bool exact = is_exact_v<T>;
  /// Working precision in bits; zero for exact tables.
  unsigned precision_bits = 0;

  MomentTable() = default;
  explicit MomentTable(int N) : degree(N), c(static_cast<std::size_t>(N) + 2, static_cast<std::size_t>(N) + 2) {
    if constexpr (std::is_same_v<T, Real>) precision_bits = working_bits();
    if constexpr (std::is_same_v<T, double>) precision_bits = 53;
  }

  int size() const { return degree + 2; }
  const Complex<T>& operator()(int i, int j) const { return c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
  Complex<T>& operator()(int i, int j) { return c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

  /// Largest |c_ij - conj(c_ji)|^2 / (c_ii c_jj) over the table. By Cauchy-Schwarz
  /// sqrt(c_ii c_jj) bounds |c_ij|, so this is the defect relative to the entry's natural scale.
  T hermiticity_defect() const {
    T worst(0);
    for (int i = 0; i < size(); ++i) {
      for (int j = 0; j <= i; ++j) {
        T d = ((*this)(i, j) - (*this)(j, i).conj()).norm() / ((*this)(i, i).re * (*this)(j, j).re);
        if (d > worst) worst = d;
      }
    }
    return worst;
  }

  /// Leading (n+1) x (n+1) Gram block (c[j][k]).
  Matrix<T> gram(int n) const {
    Matrix<T> g(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) g(j, k) = (*this)(j, k);
    }
    return g;
  }

  /// Moments of r*Omega for real r > 0: c_ij scales by r^(i+j+2).
  MomentTable scaled(const T& r) const {
    MomentTable out = *this;
    for (int i = 0; i < size(); ++i) {
      for (int j = 0; j < size(); ++j) {
        T f(1);
        for (int e = 0; e < i + j + 2; ++e) f *= r;
        out(i, j) *= f;
      }
    }
    return out;
  }
};

template <Field T>
MomentTable<T> moment_table(const PolygonRegion<T>& poly, int N) {
  MomentTable<T> t(N);
  RealMoments<T> I = real_moments(poly, 2 * (N + 1));
  BinomialTable<T> C(N + 1);
  // every entry is computed on its own, so Hermiticity is a check rather than an assumption
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) t(i, j) = complex_moment(I, i, j, C);
  }
  return t;
}

/// Moment table for a region spec: closed forms for the house and right-triangle families,
/// the polygon pipeline for other polygons, and pi/(n+1) on the diagonal for the disk.
template <Field T>
MomentTable<T> moment_table(const RegionSpec& spec, int N) {
  if (N < 0) throw torsion_error(errc::invalid_spec, "degree must be nonnegative");
  validate_parameters(spec);
  if (std::holds_alternative<family::UnitDisk>(spec)) {
    if constexpr (is_exact_v<T>) {
      throw torsion_error(errc::inexact_parameter, "disk moments involve pi and have no exact form");
    } else {
      MomentTable<T> t(N);
      for (int n = 0; n < t.size(); ++n) t(n, n) = Complex<T>(pi<T>() / T(n + 1));
      return t;
    }
  }
  if (const auto* h = std::get_if<family::House>(&spec)) {
    MomentTable<T> t(N);
    for (int i = 0; i < t.size(); ++i) {
      for (int j = 0; j < t.size(); ++j) t(i, j) = house_moment_closed<T>(h->a, i, j);
    }
    return t;
  }
  if (const auto* rt = std::get_if<family::RightTriangle>(&spec)) {
    MomentTable<T> t(N);
    for (int i = 0; i < t.size(); ++i) {
      for (int j = 0; j < t.size(); ++j) t(i, j) = right_triangle_moment_closed<T>(rt->a, i, j);
    }
    return t;
  }
  if (!is_polygonal(spec)) {
    throw torsion_error(errc::unsupported_variant,
                        family_name(spec) + " has no moment table here; use the conformal route");
  }
  return moment_table(realize_polygon<T>(spec), N);
}

/// Rotation about the origin, chosen so that I_21 of the rotated polygon vanishes.
/// Rotating by pi negates every odd-order moment, so theta -> I_21(e^{i theta} Omega) changes
/// sign on [0, pi] and bisection down to width 2^(-bits/2) locates a root.
template <Inexact T>
std::pair<PolygonRegion<T>, T> rotate_to_zero_I21(const PolygonRegion<T>& poly) {
  RealMoments<T> I = real_moments(poly, 3);
  const T I30 = I(3, 0), I21 = I(2, 1), I12 = I(1, 2), I03 = I(0, 3);
  auto f = [&](const T& theta) {
    using std::cos;
    using std::sin;
    T c = cos(theta), s = sin(theta);
    return c * c * s * I30 + (c * c * c - 2 * c * s * s) * I21 + (s * s * s - 2 * c * c * s) * I12 + s * s * c * I03;
  };
  // I_21 scales like I_00^{5/2}; rounding noise below that level needs no rotation
  const T tol = half_precision_tolerance<T>();
  const T I00 = I(0, 0);
  if (I21 * I21 <= tol * tol * I00 * I00 * I00 * I00 * I00) return {poly, T(0)};
  T lo(0), hi = pi<T>();
  T flo = f(lo), fhi = f(hi);
  if (!((flo < 0 && fhi > 0) || (flo > 0 && fhi < 0))) {
    throw torsion_error(errc::internal, "I_21 rotation root is not bracketed");
  }
  T width = half_precision_tolerance<T>();
  while (hi - lo > width) {
    T mid = (lo + hi) / 2;
    T fm = f(mid);
    if (fm == 0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  T theta = (lo + hi) / 2;
  return {rotate(poly, theta), theta};
}

}  // namespace torsion
