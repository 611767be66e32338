#include <gtest/gtest.h>

#include <random>

#include "torsion/conformal.hpp"
#include "torsion/opuc.hpp"

using namespace torsion;

namespace {

using C = Complex<Rational>;

Polynomial<Rational> cubic_shape() { return Polynomial<Rational>{C(8), C(12), C(6), C(1)}; }

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const torsion_error& e) {
    return e.code();
  }
  return errc::internal;
}

/// Moments c_k = \int e^{-ik theta} |p(e^{i theta})|^{-2} d theta / 2 pi by the trapezoid rule,
/// which converges geometrically for this analytic weight.
std::vector<Complex<Real>> trapezoid_moments(const Polynomial<Rational>& q, const Rational& scale_sq, int count,
                                             int nodes = 512) {
  auto qr = convert<Real>(q);
  Real s2 = from_rational<Real>(scale_sq);
  std::vector<Complex<Real>> c(static_cast<std::size_t>(count));
  for (int m = 0; m < nodes; ++m) {
    Real theta = 2 * pi<Real>() * m / nodes;
    Complex<Real> z = polar(Real(1), theta);
    Real w = Real(1) / (s2 * qr(z).norm() * nodes);
    for (int k = 0; k < count; ++k) c[k] += polar(w, -theta * k);
  }
  return c;
}

}  // namespace

TEST(Szego, ForwardRecursionOfTheCubicExample) {
  VerblunskySequence<Rational> alphas{C(Rational(-10, 11)), C(Rational(-4, 7)), C(Rational(-1, 8))};
  auto phis = szego_forward_all(alphas);
  ASSERT_EQ(phis.size(), 4u);
  EXPECT_EQ(phis[1], (Polynomial<Rational>{C(Rational(10, 11)), C(1)}));
  EXPECT_EQ(phis[2], (Polynomial<Rational>{C(Rational(4, 7)), C(Rational(10, 7)), C(1)}));
  // Phi_3 is (z + 2)^3 reversed and normalized: (1 + 2z)^3 / 8
  EXPECT_EQ(phis[3], (Polynomial<Rational>{C(Rational(1, 8)), C(Rational(3, 4)), C(Rational(3, 2)), C(1)}));
}

TEST(Szego, SecondKindPolynomial) {
  VerblunskySequence<Rational> alphas{C(Rational(-10, 11)), C(Rational(-4, 7)), C(Rational(-1, 8))};
  EXPECT_EQ(second_kind(alphas),
            (Polynomial<Rational>{C(Rational(-1, 8)), C(Rational(-23, 44)), C(Rational(-7, 22)), C(1)}));
}

TEST(Szego, InverseRoundTripOnRandomCoefficients) {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> num(-60, 60);
  for (int trial = 0; trial < 20; ++trial) {
    VerblunskySequence<Rational> alphas;
    int n = 1 + trial % 6;
    while (static_cast<int>(alphas.size()) < n) {
      C a(Rational(num(rng), 64), Rational(num(rng), 64));
      if (a.norm() < 1) alphas.push_back(a);
    }
    auto phis = szego_forward_all(alphas);
    auto inv = szego_inverse(phis.back());
    EXPECT_EQ(inv.alphas, alphas);
    for (int k = 0; k < n; ++k) EXPECT_EQ(inv.phis[k], phis[k]);
  }
}

TEST(Szego, StarReversesCoefficients) {
  Polynomial<Rational> p{C(Rational(1), Rational(2)), C(Rational(3)), C(Rational(0), Rational(-1))};
  EXPECT_EQ(star(p, 2), (Polynomial<Rational>{C(Rational(0), Rational(1)), C(Rational(3)), C(Rational(1), Rational(-2))}));
  EXPECT_EQ(star(p, 3)[0], C());
  EXPECT_THROW(star(p, 1), torsion_error);
}

TEST(Szego, ErrorCodes) {
  EXPECT_EQ(code_of([] { szego_forward(VerblunskySequence<Rational>{C(Rational(1, 2)), C(Rational(1))}); }),
            errc::invalid_coefficient);
  EXPECT_EQ(code_of([] { szego_inverse(Polynomial<Rational>{C(1), C(2)}); }), errc::not_opuc);
  // monic, but |Phi_1(0)| = 2 puts the coefficient outside the disk
  EXPECT_EQ(code_of([] { szego_inverse(Polynomial<Rational>{C(2), C(1)}); }), errc::not_opuc);
  EXPECT_EQ(code_of([] { szego_inverse(Polynomial<Rational>{}); }), errc::not_opuc);
}

TEST(ReciprocalPoly, CubicExampleIsExact) {
  auto h = herglotz_from_reciprocal_poly<Rational>(cubic_shape(), Rational(11, 81));
  EXPECT_EQ(h.mass, 1);
  EXPECT_EQ(h.normalizing_scale_squared, Rational(11, 81));
  EXPECT_EQ(h.inverse.alphas, (VerblunskySequence<Rational>{C(Rational(-10, 11)), C(Rational(-4, 7)), C(Rational(-1, 8))}));
  auto defaulted = herglotz_from_reciprocal_poly<Rational>(cubic_shape());
  EXPECT_EQ(defaulted.scale_squared, Rational(11, 81));
  EXPECT_EQ(defaulted.F.numerator, h.F.numerator);
}

TEST(ReciprocalPoly, CaratheodoryFunctionMatchesQuadratureMoments) {
  precision_scope scope(256);
  auto h = herglotz_from_reciprocal_poly<Rational>(cubic_shape(), Rational(11, 81));
  auto taylor = h.F.taylor(12);
  auto c = trapezoid_moments(cubic_shape(), Rational(11, 81), 12);
  EXPECT_EQ(taylor[0], C(1));
  EXPECT_LT(abs(c[0] - Complex<Real>(Real(1))), Real(1e-40));
  for (int k = 1; k < 12; ++k) {
    Complex<Real> got = convert<Real>(taylor[k]);
    EXPECT_LT(abs(got - c[k] * Real(2)), Real(1e-40)) << "k=" << k;
  }
}

TEST(ReciprocalPoly, CaratheodoryFunctionHasPositiveRealPart) {
  auto h = herglotz_from_reciprocal_poly<Rational>(cubic_shape());
  EXPECT_GT(herglotz_min_real_part(h.F), 0);
  auto other = herglotz_from_reciprocal_poly<Rational>(Polynomial<Rational>{C(3), C(Rational(1), Rational(1))});
  EXPECT_GT(herglotz_min_real_part(other.F), 0);
}

TEST(ReciprocalPoly, AgreesWithTheConformalFourierCoefficients) {
  // F = h_0 + 2 sum h_j z^j for the map psi = sqrt(2) / p
  precision_scope scope(256);
  auto map = reciprocal_map_family<Real>(cubic_shape(), Rational(11, 81), 400);
  auto hs = herglotz_series(map.psi);
  auto taylor = map.F.taylor(10);
  EXPECT_LT(abs(taylor[0] - Complex<Real>(hs.h0())), Real(1e-40));
  for (int j = 1; j < 10; ++j) EXPECT_LT(abs(taylor[j] - hs.h[j] * Real(2)), Real(1e-40)) << j;
}

TEST(ReciprocalPoly, ErrorCodes) {
  EXPECT_EQ(code_of([] { herglotz_from_reciprocal_poly<Rational>(Polynomial<Rational>{C(1), C(2)}); }),
            errc::invalid_map);  // zero at -1/2
  EXPECT_EQ(code_of([] { herglotz_from_reciprocal_poly<Rational>(Polynomial<Rational>{C(1), C(1)}); }),
            errc::invalid_map);  // zero on the circle
  EXPECT_EQ(code_of([] { herglotz_from_reciprocal_poly<Rational>(Polynomial<Rational>{C(0), C(1)}); }),
            errc::invalid_map);
  EXPECT_EQ(code_of([] { herglotz_from_reciprocal_poly<Rational>(Polynomial<Rational>{}); }), errc::invalid_map);
  EXPECT_EQ(code_of([] { herglotz_from_reciprocal_poly<Rational>(cubic_shape(), Rational(1, 8)); }),
            errc::normalization);
  EXPECT_EQ(code_of([] { herglotz_from_reciprocal_poly<Rational>(cubic_shape(), Rational(-1)); }), errc::invalid_map);
}
