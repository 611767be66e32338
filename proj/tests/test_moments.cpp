#include <gtest/gtest.h>

#include <random>

#include "torsion/lowerbound.hpp"
#include "torsion/moments.hpp"

using namespace torsion;

namespace {

using P = Point<Rational>;

Rational factorial(int n) {
  Rational f(1);
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Affine pull-back to the unit simplex: expand x^m y^n in (s, t) and integrate each
/// s^i t^j exactly as i! j! / (i+j+2)!.
Rational simplex_oracle(const Triangle<Rational>& tri, int m, int n) {
  using Q = Poly2<Rational>;
  const Q s = Q::x(), t = Q::y();
  Q x = Q(tri[0].x) + s * (tri[1].x - tri[0].x) + t * (tri[2].x - tri[0].x);
  Q y = Q(tri[0].y) + s * (tri[1].y - tri[0].y) + t * (tri[2].y - tri[0].y);
  Q integrand(Rational(1));
  for (int k = 0; k < m; ++k) integrand = integrand * x;
  for (int k = 0; k < n; ++k) integrand = integrand * y;
  Rational det = cross(tri[0], tri[1], tri[2]);
  if (det < 0) det = -det;
  Rational sum(0);
  for (int i = 0; i <= integrand.x_degree(); ++i) {
    for (int j = 0; j <= integrand.y_degree(); ++j) {
      sum += integrand.coeff(i, j) * factorial(i) * factorial(j) / factorial(i + j + 2);
    }
  }
  return det * sum;
}

/// Vertex-0 fan of signed triangles, summed through the triangle formula.
Rational vertex_fan(const PolygonRegion<Rational>& poly, int m, int n) {
  Rational s(0);
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    Triangle<Rational> tri{poly[0], poly[k], poly[k + 1]};
    Rational v = triangle_monomial_moment(tri, m, n);
    s += cross(poly[0], poly[k], poly[k + 1]) >= 0 ? v : -v;
  }
  return s;
}

/// z^i zbar^j expanded directly: (x + iy)^i (x - iy)^j.
Complex<Rational> complex_oracle(const PolygonRegion<Rational>& poly, int i, int j) {
  std::vector<Complex<Rational>> coeff{Complex<Rational>(Rational(1))};  // coefficient of x^{d-q} y^q
  auto mul = [&](Complex<Rational> yfac) {
    std::vector<Complex<Rational>> out(coeff.size() + 1);
    for (std::size_t q = 0; q < coeff.size(); ++q) {
      out[q] += coeff[q];
      out[q + 1] += coeff[q] * yfac;
    }
    coeff = out;
  };
  for (int k = 0; k < i; ++k) mul(Complex<Rational>(Rational(0), Rational(1)));
  for (int k = 0; k < j; ++k) mul(Complex<Rational>(Rational(0), Rational(-1)));
  Complex<Rational> s;
  const int d = i + j;
  for (int q = 0; q <= d; ++q) s += coeff[q] * polygon_real_moment(poly, d - q, q);
  return s;
}

}  // namespace

TEST(TriangleMoment, UnitRightTriangle) {
  Triangle<Rational> t{P{0, 0}, P{1, 0}, P{0, 1}};
  EXPECT_EQ(triangle_monomial_moment(t, 0, 0), Rational(1, 2));
  EXPECT_EQ(triangle_monomial_moment(t, 1, 0), Rational(1, 6));
  EXPECT_EQ(triangle_monomial_moment(t, 1, 1), Rational(1, 24));
}

TEST(TriangleMoment, DegenerateIsZeroAndFlagged) {
  Triangle<Rational> t{P{0, 0}, P{1, 1}, P{2, 2}};
  bool degenerate = false;
  EXPECT_EQ(triangle_monomial_moment(t, 2, 1, &degenerate), 0);
  EXPECT_TRUE(degenerate);
}

TEST(TriangleMoment, MatchesSimplexPullBackOnRandomTriangles) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-9, 9), den(1, 5);
  for (int trial = 0; trial < 25; ++trial) {
    Triangle<Rational> t;
    for (auto& p : t) p = P{Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng))};
    if (cross(t[0], t[1], t[2]) == 0) continue;
    for (int m = 0; m <= 4; ++m) {
      for (int n = 0; m + n <= 5; ++n) EXPECT_EQ(triangle_monomial_moment(t, m, n), simplex_oracle(t, m, n));
    }
  }
}

TEST(PolygonMoment, CentredUnitSquare) {
  auto sq = realize_polygon<Rational>(RegionSpec{family::Rectangle{Rational(1), Rational(1)}});
  EXPECT_EQ(polygon_real_moment(sq, 2, 0), Rational(1, 12));
  EXPECT_EQ(polygon_real_moment(sq, 1, 1), 0);
  EXPECT_EQ(complex_moment(sq, 0, 0), Complex<Rational>(Rational(1)));
  EXPECT_EQ(complex_moment(sq, 1, 1), Complex<Rational>(Rational(1, 6)));
  EXPECT_EQ(complex_moment(sq, 1, 0), Complex<Rational>());
}

TEST(PolygonMoment, HouseHasAreaOne) {
  auto h = realize_polygon<Rational>(RegionSpec{family::House{Rational(1, 4)}});
  EXPECT_EQ(polygon_real_moment(h, 0, 0), 1);
}

TEST(PolygonMoment, OriginFanEqualsVertexFanOnNonConvexPolygon) {
  PolygonRegion<Rational> l({P{0, 0}, P{2, 0}, P{2, 1}, P{1, 1}, P{1, 2}, P{0, 2}});
  PolygonRegion<Rational> arrow({P{Rational(3), Rational(1)}, P{5, 2}, P{3, 3}, P{Rational(7, 2), Rational(2)}});
  for (const auto* poly : {&l, &arrow}) {
    auto I = real_moments(*poly, 6);
    for (int m = 0; m <= 6; ++m) {
      for (int n = 0; m + n <= 6; ++n) EXPECT_EQ(I(m, n), vertex_fan(*poly, m, n)) << m << "," << n;
    }
  }
}

TEST(ComplexMoment, HermitianAndMatchesDirectExpansion) {
  auto h = realize_polygon<Rational>(RegionSpec{family::House{Rational(1, 3)}});
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) {
      auto c = complex_moment(h, i, j);
      EXPECT_EQ(c, complex_oracle(h, i, j));
      EXPECT_EQ(c, complex_moment(h, j, i).conj());
    }
  }
}

TEST(ComplexMoment, TranslationCovariance) {
  auto base = realize_polygon<Rational>(RegionSpec{family::House{Rational(1, 4)}});
  const Complex<Rational> t(Rational(2, 3), Rational(-1, 5));
  auto shifted = translate(base, Point<Rational>{t.re, t.im});
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      Complex<Rational> expected;
      for (int p = 0; p <= i; ++p) {
        for (int q = 0; q <= j; ++q) {
          expected += complex_moment(base, p, q) * binomial<Rational>(i, p) * binomial<Rational>(j, q) *
                      pow(t, static_cast<unsigned>(i - p)) * pow(t.conj(), static_cast<unsigned>(j - q));
        }
      }
      EXPECT_EQ(complex_moment(shifted, i, j), expected);
    }
  }
}

TEST(ComplexMoment, ScalingLaw) {
  auto base = realize_polygon<Rational>(RegionSpec{family::RightTriangle{Rational(3, 2)}});
  const Rational r(5, 3);
  auto big = scale(base, r);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      Rational f(1);
      for (int k = 0; k < i + j + 2; ++k) f *= r;
      EXPECT_EQ(complex_moment(big, i, j), complex_moment(base, i, j) * f);
    }
  }
  auto t = moment_table(base, 3);
  auto ts = t.scaled(r);
  auto direct = moment_table(big, 3);
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) EXPECT_EQ(ts(i, j), direct(i, j));
  }
}

TEST(Gauss2F1, TerminatingSums) {
  EXPECT_EQ(gauss_2F1_terminating(-4, Rational(3), Rational(5), Rational(0)), 1);
  Rational b(7, 3), c(5, 2), x(2, 9);
  EXPECT_EQ(gauss_2F1_terminating(-1, b, c, x), 1 - b * x / c);
  // (-3)_k (2)_k / ((4)_k k!) (1/2)^k for k = 0..3
  Rational direct = Rational(1) + Rational(-3 * 2, 4) * Rational(1, 2) +
                    Rational(-3 * -2 * 2 * 3, 4 * 5 * 2) * Rational(1, 4) +
                    Rational(-3 * -2 * -1 * 2 * 3 * 4, 4 * 5 * 6 * 6) * Rational(1, 8);
  EXPECT_EQ(gauss_2F1_terminating(-3, Rational(2), Rational(4), Rational(1, 2)), direct);
  EXPECT_THROW(gauss_2F1_terminating(-3, Rational(1), Rational(-1), Rational(1, 2)), torsion_error);
  EXPECT_NO_THROW(gauss_2F1_terminating(-1, Rational(1), Rational(-1), Rational(1, 2)));
}

TEST(ClosedForms, HouseMatchesPolygonPipeline) {
  for (Rational a : {Rational(0), Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 2)}) {
    auto poly = realize_polygon<Rational>(RegionSpec{family::House{Param(a)}});
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; n + m <= 6; ++m) {
        EXPECT_EQ(house_moment_closed<Rational>(Param(a), n, m), complex_moment(poly, n, m))
            << "a=" << a << " n=" << n << " m=" << m;
      }
    }
  }
  EXPECT_EQ(house_moment_closed<Rational>(Param(Rational(1, 5)), 0, 0), Complex<Rational>(Rational(1)));
  EXPECT_THROW(house_moment_closed<Rational>(Param(Rational(2, 3)), 1, 1), torsion_error);
}

TEST(ClosedForms, HouseAtOneHalfIsTheRectangle) {
  auto rect = realize_polygon<Rational>(RegionSpec{family::Rectangle{Rational(2), Rational(1, 2)}});
  auto moved = translate(rect, P{Rational(0), Rational(1, 4)});
  EXPECT_EQ(house_moment_closed<Rational>(Param(Rational(1, 2)), 1, 1), complex_moment(moved, 1, 1));
}

TEST(ClosedForms, RightTriangleMatchesPolygonPipeline) {
  for (Rational a : {Rational(1, 2), Rational(1), Rational(2), Rational(3)}) {
    auto poly = realize_polygon<Rational>(RegionSpec{family::RightTriangle{Param(a)}});
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; n + m <= 6; ++m) {
        EXPECT_EQ(right_triangle_moment_closed<Rational>(Param(a), n, m), complex_moment(poly, n, m));
      }
    }
  }
  precision_scope scope(256);
  Param s2 = Param::sqrt_of(2);
  auto poly = realize_polygon<Real>(RegionSpec{family::RightTriangle{s2}});
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; n + m <= 6; ++m) {
      EXPECT_LT(abs(right_triangle_moment_closed<Real>(s2, n, m) - complex_moment(poly, n, m)), Real(1e-60));
    }
  }
  EXPECT_THROW(right_triangle_moment_closed<Rational>(Param(Rational(-1)), 0, 0), torsion_error);
}

TEST(MomentTable, UnitDiskIsDiagonal) {
  precision_scope scope(256);
  auto t = moment_table<Real>(RegionSpec{family::UnitDisk{}}, 2);
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      Real expected = i == j ? pi<Real>() / (i + 1) : Real(0);
      EXPECT_LT(abs(t(i, j) - Complex<Real>(expected)), Real(1e-70));
    }
  }
  EXPECT_THROW(moment_table<Rational>(RegionSpec{family::UnitDisk{}}, 2), torsion_error);
}

TEST(MomentTable, RectangleDegreeOne) {
  auto t = moment_table<Rational>(RegionSpec{family::Rectangle{Rational(2), Rational(1, 2)}}, 1);
  // I_20 = a^3 b / 12, I_02 = a b^3 / 12
  EXPECT_EQ(t(0, 0), Complex<Rational>(Rational(1)));
  EXPECT_EQ(t(1, 1), Complex<Rational>(Rational(1, 3) + Rational(1, 48)));
  EXPECT_EQ(t(2, 0), Complex<Rational>(Rational(1, 3) - Rational(1, 48)));
  EXPECT_EQ(t(1, 0), Complex<Rational>());
  EXPECT_EQ(t.hermiticity_defect(), 0);
}

TEST(MomentTable, UnsupportedFamilies) {
  EXPECT_THROW(moment_table<Rational>(RegionSpec{family::NeumannOval{Param(1)}}, 3), torsion_error);
}
