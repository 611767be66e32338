#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "torsion/core/complex.hpp"

namespace torsion {

/// A family parameter: an exact rational, or sqrt of a nonnegative rational
/// (e.g. "sqrt(2)") which only floating fields can realize.
class Param {
 public:
  Param() = default;
  Param(Rational value) : value_(std::move(value)) {}  // NOLINT
  Param(long long value) : value_(Rational(value)) {}  // NOLINT

  static Param sqrt_of(Rational radicand) {
    if (radicand < 0) throw torsion_error(errc::invalid_spec, "sqrt of a negative number");
    Param p;
    p.value_ = std::move(radicand);
    p.radical_ = true;
    return p;
  }

  /// Accepts "p/q", decimals, and "sqrt(<rational>)".
  static Param parse(std::string_view text) {
    std::string s(text);
    auto open = s.find("sqrt(");
    if (open != std::string::npos) {
      auto close = s.rfind(')');
      if (open != 0 || close != s.size() - 1) {
        throw torsion_error(errc::invalid_spec, "malformed parameter '" + s + "'");
      }
      return sqrt_of(parse_rational(s.substr(5, close - 5)));
    }
    return Param(parse_rational(s));
  }

  bool is_exact() const {
    if (!radical_) return true;
    // perfect squares of rationals are exact
    Integer n = mp::numerator(value_), d = mp::denominator(value_);
    Integer rn = mp::sqrt(n), rd = mp::sqrt(d);
    return rn * rn == n && rd * rd == d;
  }

  /// Exact value; throws inexact_parameter for irrational radicals.
  Rational rational() const {
    if (!radical_) return value_;
    if (!is_exact()) throw torsion_error(errc::inexact_parameter, "parameter " + text() + " is irrational");
    return Rational(mp::sqrt(mp::numerator(value_))) / Rational(mp::sqrt(mp::denominator(value_)));
  }

  /// Exact square of the parameter (always available).
  Rational square() const { return radical_ ? value_ : value_ * value_; }

  template <Field T>
  T as() const {
    if constexpr (is_exact_v<T>) {
      return rational();
    } else {
      using std::sqrt;
      if (radical_) return sqrt(from_rational<T>(value_));
      return from_rational<T>(value_);
    }
  }

  int sign() const { return value_ > 0 ? 1 : (value_ < 0 ? -1 : 0); }

  std::string text() const { return radical_ ? "sqrt(" + to_string(value_) + ")" : to_string(value_); }

 private:
  Rational value_{0};
  bool radical_ = false;
};

namespace family {
struct Polygon {
  std::vector<std::array<Param, 2>> vertices;
};
/// (-a/2, a/2) x (-b/2, b/2)
struct Rectangle {
  Param a, b;
};
/// Pentagon with vertices (-1,0), (1,0), (1,a), (0,1-a), (-1,a); area 1, a in [0, 1/2].
struct House {
  Param a;
};
/// Vertices (0,0), (a,0), (a,2/a); area 1.
struct RightTriangle {
  Param a;
};
/// Vertices (1,0), (-1/2, +-sqrt(3)/2).
struct EquilateralTriangle {};
struct UnitDisk {};
/// Image of the disk under z + a/(z - b).
struct DentedDisk {
  Param a, b;
};
/// Image of the disk under (R^4-1) z / (R (R^2 - z^2)), R = (a + sqrt(a^2+4))/2.
struct NeumannOval {
  Param a;
};
/// Image of the disk under sqrt(2)/p, p = sqrt(scale_squared) * shape.
/// When scale_squared is absent the normalizing scale is used.
struct ReciprocalPolyMap {
  std::vector<Complex<Rational>> shape;
  std::optional<Rational> scale_squared;
};
}  // namespace family

using RegionSpec = std::variant<family::Polygon, family::Rectangle, family::House, family::RightTriangle,
                                family::EquilateralTriangle, family::UnitDisk, family::DentedDisk,
                                family::NeumannOval, family::ReciprocalPolyMap>;

inline std::string family_name(const RegionSpec& spec) {
  static constexpr const char* names[] = {"polygon",    "rectangle",   "house",        "right_triangle",
                                          "equilateral_triangle", "unit_disk", "dented_disk", "neumann_oval",
                                          "reciprocal_poly_map"};
  return names[spec.index()];
}

inline bool is_polygonal(const RegionSpec& spec) {
  return std::holds_alternative<family::Polygon>(spec) || std::holds_alternative<family::Rectangle>(spec) ||
         std::holds_alternative<family::House>(spec) || std::holds_alternative<family::RightTriangle>(spec) ||
         std::holds_alternative<family::EquilateralTriangle>(spec);
}

/// Range checks for the simple families. Map families with nontrivial validity
/// (dented disk, reciprocal polynomial) are checked where they are built.
inline void validate_parameters(const RegionSpec& spec) {
  auto positive = [](const Param& p, const char* what) {
    if (p.sign() <= 0) throw torsion_error(errc::domain_error, std::string(what) + " must be positive, got " + p.text());
  };
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Rectangle>) {
          if (f.a.sign() == 0 || f.b.sign() == 0) {
            throw torsion_error(errc::degenerate_region, "rectangle with a zero side");
          }
          positive(f.a, "rectangle a");
          positive(f.b, "rectangle b");
        } else if constexpr (std::is_same_v<F, family::House>) {
          Rational a2 = f.a.square();
          if (f.a.sign() < 0 || a2 * 4 > 1) {
            throw torsion_error(errc::domain_error, "house parameter must lie in [0, 1/2], got " + f.a.text());
          }
        } else if constexpr (std::is_same_v<F, family::RightTriangle>) {
          positive(f.a, "right triangle a");
        } else if constexpr (std::is_same_v<F, family::NeumannOval>) {
          positive(f.a, "Neumann oval a");
        } else if constexpr (std::is_same_v<F, family::Polygon>) {
          if (f.vertices.size() < 3) throw torsion_error(errc::degenerate_region, "polygon needs at least 3 vertices");
        }
      },
      spec);
}

template <Field T>
struct Point {
  T x{};
  T y{};
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

template <Field T>
T cross(const Point<T>& o, const Point<T>& a, const Point<T>& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

namespace detail {

template <Field T>
int orientation(const Point<T>& a, const Point<T>& b, const Point<T>& c) {
  T v = cross(a, b, c);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <Field T>
bool on_segment(const Point<T>& a, const Point<T>& b, const Point<T>& p) {
  using std::max;
  using std::min;
  return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y && p.y <= max(a.y, b.y);
}

template <Field T>
bool segments_intersect(const Point<T>& p1, const Point<T>& p2, const Point<T>& q1, const Point<T>& q2) {
  int o1 = orientation(p1, p2, q1), o2 = orientation(p1, p2, q2);
  int o3 = orientation(q1, q2, p1), o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace detail

/// Simple counter-clockwise polygon; first vertex is not repeated at the end.
template <Field T>
class PolygonRegion {
 public:
  explicit PolygonRegion(std::vector<Point<T>> vertices) : v_(std::move(vertices)) { validate(); }

  const std::vector<Point<T>>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Point<T>& operator[](std::size_t k) const { return v_[k]; }
  const Point<T>& next(std::size_t k) const { return v_[(k + 1) % v_.size()]; }

  T signed_area() const {
    T twice(0);
    for (std::size_t k = 0; k < v_.size(); ++k) twice += v_[k].x * next(k).y - next(k).x * v_[k].y;
    return twice / 2;
  }

 private:
  void validate() const {
    const std::size_t n = v_.size();
    if (n < 3) throw torsion_error(errc::degenerate_region, "polygon needs at least 3 vertices");
    for (std::size_t k = 0; k < n; ++k) {
      if (v_[k] == next(k)) throw torsion_error(errc::degenerate_region, "consecutive vertices coincide");
    }
    // Non-adjacent edges must not meet; adjacent edges may only share their common vertex.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        if (adjacent) {
          std::size_t shared = (j == i + 1) ? j : i;
          const Point<T>& a = v_[shared == j ? i : j];
          const Point<T>& mid = v_[shared];
          const Point<T>& b = next(shared);
          // folding back onto the previous edge
          if (detail::orientation(a, mid, b) == 0) {
            T dot = (mid.x - a.x) * (b.x - mid.x) + (mid.y - a.y) * (b.y - mid.y);
            if (dot < 0) throw torsion_error(errc::degenerate_region, "polygon edge folds back");
          }
          continue;
        }
        if (detail::segments_intersect(v_[i], next(i), v_[j], next(j))) {
          throw torsion_error(errc::degenerate_region, "polygon boundary self-intersects");
        }
      }
    }
    if (!(signed_area() > 0)) {
      throw torsion_error(errc::degenerate_region, "polygon must be counter-clockwise with positive area");
    }
  }

  std::vector<Point<T>> v_;
};

/// Explicit vertex list for the polygonal families, in counter-clockwise boundary order.
template <Field T>
PolygonRegion<T> realize_polygon(const RegionSpec& spec) {
  validate_parameters(spec);
  using P = Point<T>;
  return std::visit(
      [](const auto& f) -> PolygonRegion<T> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Polygon>) {
          std::vector<P> v;
          for (const auto& xy : f.vertices) v.push_back({xy[0].template as<T>(), xy[1].template as<T>()});
          return PolygonRegion<T>(std::move(v));
        } else if constexpr (std::is_same_v<F, family::Rectangle>) {
          T ha = f.a.template as<T>() / 2, hb = f.b.template as<T>() / 2;
          return PolygonRegion<T>({{-ha, -hb}, {ha, -hb}, {ha, hb}, {-ha, hb}});
        } else if constexpr (std::is_same_v<F, family::House>) {
          T a = f.a.template as<T>();
          // at a = 0 the walls vanish and the house is a triangle
          if (f.a.sign() == 0) return PolygonRegion<T>({{T(-1), T(0)}, {T(1), T(0)}, {T(0), T(1)}});
          return PolygonRegion<T>({{T(-1), T(0)}, {T(1), T(0)}, {T(1), a}, {T(0), T(1) - a}, {T(-1), a}});
        } else if constexpr (std::is_same_v<F, family::RightTriangle>) {
          T a = f.a.template as<T>();
          return PolygonRegion<T>({{T(0), T(0)}, {a, T(0)}, {a, T(2) / a}});
        } else if constexpr (std::is_same_v<F, family::EquilateralTriangle>) {
          if constexpr (is_exact_v<T>) {
            throw torsion_error(errc::inexact_parameter, "equilateral triangle vertices are irrational");
          } else {
            using std::sqrt;
            T h = sqrt(T(3)) / 2;
            return PolygonRegion<T>({{T(1), T(0)}, {T(-0.5), h}, {T(-0.5), -h}});
          }
        } else {
          throw torsion_error(errc::unsupported_variant, "region family is not polygonal");
        }
      },
      spec);
}

template <Field T>
struct AreaCentroid {
  T area;
  Point<T> centroid;
};

/// Shoelace area and centroid.
template <Field T>
AreaCentroid<T> area_and_centroid(const PolygonRegion<T>& poly) {
  T twice_area(0), cx(0), cy(0);
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const auto& p = poly[k];
    const auto& q = poly.next(k);
    T c = p.x * q.y - q.x * p.y;
    twice_area += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  T area = twice_area / 2;
  return {area, {cx / (3 * twice_area), cy / (3 * twice_area)}};
}

template <Field T>
PolygonRegion<T> translate(const PolygonRegion<T>& poly, const Point<T>& shift) {
  std::vector<Point<T>> v;
  v.reserve(poly.size());
  for (const auto& p : poly.vertices()) v.push_back({p.x + shift.x, p.y + shift.y});
  return PolygonRegion<T>(std::move(v));
}

template <Field T>
PolygonRegion<T> scale(const PolygonRegion<T>& poly, const T& r) {
  std::vector<Point<T>> v;
  v.reserve(poly.size());
  for (const auto& p : poly.vertices()) v.push_back({p.x * r, p.y * r});
  return PolygonRegion<T>(std::move(v));
}

template <Field T>
PolygonRegion<T> translate_to_zero_centroid(const PolygonRegion<T>& poly) {
  auto c = area_and_centroid(poly).centroid;
  return translate(poly, Point<T>{-c.x, -c.y});
}

/// Multiplication by e^{i theta}.
template <Inexact T>
PolygonRegion<T> rotate(const PolygonRegion<T>& poly, const T& theta) {
  using std::cos;
  using std::sin;
  T c = cos(theta), s = sin(theta);
  std::vector<Point<T>> v;
  v.reserve(poly.size());
  for (const auto& p : poly.vertices()) v.push_back({p.x * c - p.y * s, p.x * s + p.y * c});
  return PolygonRegion<T>(std::move(v));
}

template <Field T>
PolygonRegion<T> convert(const PolygonRegion<Rational>& poly) {
  std::vector<Point<T>> v;
  for (const auto& p : poly.vertices()) v.push_back({from_rational<T>(p.x), from_rational<T>(p.y)});
  return PolygonRegion<T>(std::move(v));
}

}  // namespace torsion
