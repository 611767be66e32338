#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "torsion/core/rigidity.hpp"
#include "torsion/moments.hpp"
#include "torsion/regions.hpp"

namespace torsion {

/// Real bivariate polynomial sum c[i][j] x^i y^j.
template <Field T>
class Poly2 {
 public:
  Poly2() = default;
  Poly2(T constant) : c_{{std::move(constant)}} {}  // NOLINT

  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }
  static Poly2 monomial(int i, int j, T coeff = T(1)) {
    Poly2 p;
    p.at(i, j) = std::move(coeff);
    return p;
  }

  int x_degree() const { return static_cast<int>(c_.size()) - 1; }
  int y_degree() const { return c_.empty() ? -1 : static_cast<int>(c_[0].size()) - 1; }

  /// highest i + j carrying a nonzero coefficient, -1 for the zero polynomial
  int total_degree() const {
    int d = -1;
    for (int i = 0; i <= x_degree(); ++i) {
      for (int j = 0; j <= y_degree(); ++j) {
        if (c_[i][j] != 0 && i + j > d) d = i + j;
      }
    }
    return d;
  }
  bool is_zero() const { return total_degree() < 0; }

  T coeff(int i, int j) const {
    if (i > x_degree() || j > y_degree()) return T(0);
    return c_[i][j];
  }
  T& at(int i, int j) {
    grow(i, j);
    return c_[i][j];
  }

  T operator()(const T& x, const T& y) const {
    T out(0);
    for (int i = x_degree(); i >= 0; --i) {
      T row(0);
      for (int j = y_degree(); j >= 0; --j) row = row * y + c_[i][j];
      out = out * x + row;
    }
    return out;
  }
  T operator()(const Point<T>& p) const { return (*this)(p.x, p.y); }

  Poly2 dx() const {
    Poly2 out;
    for (int i = 1; i <= x_degree(); ++i) {
      for (int j = 0; j <= y_degree(); ++j) {
        if (c_[i][j] != 0) out.at(i - 1, j) = c_[i][j] * T(i);
      }
    }
    return out;
  }
  Poly2 dy() const {
    Poly2 out;
    for (int i = 0; i <= x_degree(); ++i) {
      for (int j = 1; j <= y_degree(); ++j) {
        if (c_[i][j] != 0) out.at(i, j - 1) = c_[i][j] * T(j);
      }
    }
    return out;
  }

  friend Poly2 operator+(Poly2 a, const Poly2& b) {
    for (int i = 0; i <= b.x_degree(); ++i) {
      for (int j = 0; j <= b.y_degree(); ++j) {
        if (b.c_[i][j] != 0) a.at(i, j) += b.c_[i][j];
      }
    }
    return a;
  }
  friend Poly2 operator-(const Poly2& a) { return a * T(-1); }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
  friend Poly2 operator*(Poly2 a, const T& s) {
    for (auto& row : a.c_) {
      for (auto& v : row) v *= s;
    }
    return a;
  }
  friend Poly2 operator*(const T& s, Poly2 a) { return std::move(a) * s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    if (a.c_.empty() || b.c_.empty()) return out;
    out.grow(a.x_degree() + b.x_degree(), a.y_degree() + b.y_degree());
    for (int i = 0; i <= a.x_degree(); ++i) {
      for (int j = 0; j <= a.y_degree(); ++j) {
        if (a.c_[i][j] == 0) continue;
        for (int k = 0; k <= b.x_degree(); ++k) {
          for (int l = 0; l <= b.y_degree(); ++l) {
            if (b.c_[k][l] != 0) out.c_[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
          }
        }
      }
    }
    return out;
  }

  /// \int_cell p dA from the cell's exact area moments
  T integrate(const RealMoments<T>& I) const {
    T s(0);
    for (int i = 0; i <= x_degree(); ++i) {
      for (int j = 0; j <= y_degree(); ++j) {
        if (c_[i][j] != 0) s += c_[i][j] * I(i, j);
      }
    }
    return s;
  }

 private:
  void grow(int i, int j) {
    int rows = std::max(i, x_degree()) + 1;
    int cols = std::max(j, y_degree()) + 1;
    c_.resize(static_cast<std::size_t>(rows));
    for (auto& row : c_) row.resize(static_cast<std::size_t>(cols), T(0));
  }

  std::vector<std::vector<T>> c_;
};

template <Field T>
struct TrialCell {
  PolygonRegion<T> cell;
  Poly2<T> u;
};

namespace detail {

template <Field T>
T sample_tolerance(const T& scale) {
  if constexpr (is_exact_v<T>) {
    return T(0);
  } else {
    return half_precision_tolerance<T>() * (T(1) + scale);
  }
}

template <Field T>
bool on_segment(const Point<T>& p, const Point<T>& a, const Point<T>& b, const T& tol) {
  using std::abs;
  T len = abs(b.x - a.x) + abs(b.y - a.y);
  if (abs(cross(a, b, p)) > tol * (T(1) + len)) return false;
  T dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  T len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  return dot >= -tol && dot <= len2 + tol;
}

template <Field T>
std::vector<Point<T>> edge_samples(const Point<T>& a, const Point<T>& b, int count) {
  std::vector<Point<T>> out;
  for (int s = 0; s <= count; ++s) {
    T t = T(s) / T(count);
    out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
  }
  return out;
}

}  // namespace detail

/// A trial function given cell by cell. Cells must have disjoint interiors, cover the region,
/// and the pieces must agree on shared cell edges.
template <Field T>
class PiecewisePolynomial2D {
 public:
  explicit PiecewisePolynomial2D(std::vector<TrialCell<T>> cells, int samples_per_edge = 8)
      : cells_(std::move(cells)) {
    if (cells_.empty()) throw torsion_error(errc::precondition, "trial function has no cells");
    check_continuity(samples_per_edge);
  }
  /// one cell: a single polynomial over the whole region
  PiecewisePolynomial2D(const PolygonRegion<T>& region, Poly2<T> u)
      : PiecewisePolynomial2D(std::vector<TrialCell<T>>{{region, std::move(u)}}) {}

  const std::vector<TrialCell<T>>& cells() const { return cells_; }

  /// value at a point of the closure of some cell; nullopt when no cell contains it on its boundary
  std::optional<T> value_on_cell_boundaries(const Point<T>& p) const {
    for (const auto& c : cells_) {
      for (std::size_t k = 0; k < c.cell.size(); ++k) {
        if (detail::on_segment(p, c.cell[k], c.cell.next(k), detail::sample_tolerance(T(1)))) return c.u(p);
      }
    }
    return std::nullopt;
  }

 private:
  void check_continuity(int samples) const {
    using std::abs;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const auto& ci = cells_[i];
      for (std::size_t k = 0; k < ci.cell.size(); ++k) {
        for (const auto& p : detail::edge_samples(ci.cell[k], ci.cell.next(k), samples)) {
          const T here = ci.u(p);
          for (std::size_t j = 0; j < cells_.size(); ++j) {
            if (j == i) continue;
            const auto& cj = cells_[j];
            for (std::size_t l = 0; l < cj.cell.size(); ++l) {
              if (!detail::on_segment(p, cj.cell[l], cj.cell.next(l), detail::sample_tolerance(T(1)))) continue;
              if (abs(cj.u(p) - here) > detail::sample_tolerance(abs(here))) {
                throw torsion_error(errc::precondition, "trial function is discontinuous across a cell edge");
              }
            }
          }
        }
      }
    }
  }

  std::vector<TrialCell<T>> cells_;
};

/// The two integrals of the Rayleigh quotient.
template <Field T>
struct RayleighParts {
  T integral_u;
  T dirichlet;  ///< \int |grad u|^2
  T quotient;   ///< 4 (\int u)^2 / \int |grad u|^2
  double boundary_residual = 0;
};

/// 4 (\int u)^2 / \int |grad u|^2, with both integrals exact over each polygonal cell.
template <Field T>
RayleighParts<T> rayleigh_parts(const PiecewisePolynomial2D<T>& u, const PolygonRegion<T>& region,
                                int samples_per_edge = 16) {
  using std::abs;
  RayleighParts<T> out{T(0), T(0), T(0)};
  T cell_area(0);
  for (const auto& c : u.cells()) {
    Poly2<T> gx = c.u.dx(), gy = c.u.dy();
    Poly2<T> grad = gx * gx + gy * gy;
    int order = std::max(c.u.total_degree(), grad.total_degree());
    if (order < 0) order = 0;
    RealMoments<T> I = real_moments(c.cell, order);
    out.integral_u += c.u.integrate(I);
    out.dirichlet += grad.integrate(I);
    cell_area += c.cell.signed_area();
  }
  if (abs(cell_area - region.signed_area()) > detail::sample_tolerance(abs(region.signed_area()))) {
    throw torsion_error(errc::precondition, "trial cells do not cover the region");
  }
  if (!(out.dirichlet > 0)) throw torsion_error(errc::degenerate_trial, "trial function is constant");

  for (std::size_t k = 0; k < region.size(); ++k) {
    for (const auto& p : detail::edge_samples(region[k], region.next(k), samples_per_edge)) {
      auto v = u.value_on_cell_boundaries(p);
      if (!v) throw torsion_error(errc::precondition, "region boundary point lies on no cell boundary");
      out.boundary_residual = std::max(out.boundary_residual, std::abs(to_double(*v)));
    }
  }
  out.quotient = T(4) * out.integral_u * out.integral_u / out.dirichlet;
  return out;
}

/// Rayleigh lower bound. A nonzero boundary residual is reported as a flag rather than an
/// error; the bound is only valid when u vanishes on the boundary.
template <Field T>
RigidityEstimate rayleigh_lower(const PiecewisePolynomial2D<T>& u, const PolygonRegion<T>& region) {
  RayleighParts<T> parts = rayleigh_parts(u, region);
  RigidityEstimate est;
  est.bound = BoundDirection::lower;
  est.method = Method::lower;
  for (const auto& c : u.cells()) est.order = std::max(est.order, c.u.total_degree());
  if constexpr (is_exact_v<T>) {
    est.exact_value = parts.quotient;
    est.value = from_rational<Real>(parts.quotient);
  } else {
    est.value = to_real(parts.quotient);
    est.precision_bits = working_bits();
  }
  double tol = 0;
  if constexpr (!is_exact_v<T>) tol = to_double(detail::sample_tolerance(T(1)));
  if (parts.boundary_residual > tol) {
    est.flags.push_back("boundary residual " + std::to_string(parts.boundary_residual));
  }
  if (u.cells().size() > 1) est.flags.push_back("piecewise trial, continuous across cells");
  return est;
}

/// The three house trial functions. With the roof lines
///   y = tl(x) = 1 - a + (1 - 2a) x  (left),   y = tr(x) = 1 - a - (1 - 2a) x  (right):
///   u1 = y (2 - y)(1 - x^8)(y^2 - tr^2)(y^2 - tl^2)
///   u2 = y (1 - x^4)(y^2 - tr^2)(y^2 - tl^2)
///   u3 = y (1 - y)(1 - x^4)(y^2 - tl^2) on x <= 0 and y (1 - y)(1 - x^4)(y^2 - tr^2) on x >= 0,
/// so that each half of u3 vanishes on the roof edge above it.
template <Field T>
struct HouseTrials {
  PolygonRegion<T> region;
  PiecewisePolynomial2D<T> u1, u2, u3;
};

template <Field T>
HouseTrials<T> house_trials(const Param& a_param) {
  RegionSpec spec{family::House{a_param}};
  PolygonRegion<T> region = realize_polygon<T>(spec);
  const T a = a_param.template as<T>();
  using P = Poly2<T>;
  const P x = P::x(), y = P::y(), one(T(1));
  const P tl = P(T(1) - a) + x * (T(1) - T(2) * a);
  const P tr = P(T(1) - a) - x * (T(1) - T(2) * a);
  const P roof_l = y * y - tl * tl, roof_r = y * y - tr * tr;
  const P x2 = x * x, x4 = x2 * x2, x8 = x4 * x4;

  P u1 = y * (P(T(2)) - y) * (one - x8) * roof_r * roof_l;
  P u2 = y * (one - x4) * roof_r * roof_l;
  P base3 = y * (one - y) * (one - x4);

  std::vector<Point<T>> left, right;
  const Point<T> o{T(0), T(0)}, peak{T(0), T(1) - a};
  if (a_param.sign() == 0) {
    left = {{T(-1), T(0)}, o, peak};
    right = {o, {T(1), T(0)}, peak};
  } else {
    left = {{T(-1), T(0)}, o, peak, {T(-1), a}};
    right = {o, {T(1), T(0)}, {T(1), a}, peak};
  }
  std::vector<TrialCell<T>> cells{{PolygonRegion<T>(left), base3 * roof_l}, {PolygonRegion<T>(right), base3 * roof_r}};
  return HouseTrials<T>{region, PiecewisePolynomial2D<T>(region, u1), PiecewisePolynomial2D<T>(region, u2),
                        PiecewisePolynomial2D<T>(std::move(cells))};
}

struct HouseLower {
  RigidityEstimate best;
  std::array<RigidityEstimate, 3> trials;
  /// 0, 1, 2 for u1, u2, u3
  int best_index = 0;
};

/// The largest of the three Rayleigh bounds.
template <Field T>
HouseLower house_lower(const Param& a) {
  HouseTrials<T> t = house_trials<T>(a);
  HouseLower out;
  out.trials = {rayleigh_lower(t.u1, t.region), rayleigh_lower(t.u2, t.region), rayleigh_lower(t.u3, t.region)};
  for (int k = 1; k < 3; ++k) {
    if (out.trials[k].value > out.trials[out.best_index].value) out.best_index = k;
  }
  out.best = out.trials[out.best_index];
  out.best.flags.push_back("best trial u" + std::to_string(out.best_index + 1));
  return out;
}

}  // namespace torsion
