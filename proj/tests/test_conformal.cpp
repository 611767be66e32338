#include <gtest/gtest.h>

#include "torsion/bergman.hpp"
#include "torsion/conformal.hpp"

using namespace torsion;

namespace {

using C = Complex<Real>;

class Conformal : public ::testing::Test {
 protected:
  precision_scope scope_{256};
};

Real tiny() { return Real(1e-40); }

template <class Family>
StressProjection<Real> stress_of(const Family& f) {
  auto dF = [&f](const C& z) {
    C d = f.F.denominator(z);
    return (f.F.numerator.derivative()(z) * d - f.F.numerator(z) * f.F.denominator.derivative()(z)) / (d * d);
  };
  return stress_and_projection<Real>([&f](const C& z) { return f.F(z); }, dF, [&f](const C& z) { return f.phi(z); },
                                     [&f](const C& z) { return f.dphi(z); }, [&f](const C& z) { return f.psi_at(z); });
}

}  // namespace

TEST_F(Conformal, IdentityMapGivesTheDisk) {
  TaylorSeries<Real> psi;
  psi.coeffs = Polynomial<Real>{C(), C(Real(1))};
  psi.finite = true;
  auto r = rho_conformal(psi);
  EXPECT_LT(abs(r.value - pi<Real>() / 2), tiny());
  EXPECT_EQ(r.tail, 0);
  auto hs = herglotz_series(psi);
  EXPECT_LT(abs(hs.h0() - Real(1) / 2), tiny());
  for (std::size_t j = 1; j < hs.h.size(); ++j) EXPECT_LT(abs(hs.h[j]), tiny());
}

TEST_F(Conformal, DiskStressFunction) {
  // F = 1/2 and phi = identity: Q vanishes and nu = (1 - |z|^2) / 2
  ComplexFn<Real> F = [](const C&) { return C(Real(1) / 2); };
  ComplexFn<Real> zero = [](const C&) { return C(); };
  ComplexFn<Real> id = [](const C& z) { return z; };
  ComplexFn<Real> one = [](const C&) { return C(Real(1)); };
  auto sp = stress_and_projection<Real>(F, zero, id, one, id);
  EXPECT_LT(sp.boundary_residual, 1e-60);
  EXPECT_FALSE(sp.flagged);
  C w(Real("0.3"), Real("-0.4"));
  EXPECT_LT(abs(sp.nu(w) - (1 - w.norm()) / 2), tiny());
  EXPECT_LT(abs(sp.Q(w)), tiny());
}

TEST_F(Conformal, L2NormOfAGeometricSeries) {
  // sum_k r^{2k} / (k+1) = -log(1 - r^2) / r^2
  Real r(Real(1) / 2);
  std::vector<C> b;
  Real p(1);
  for (int k = 0; k <= 60; ++k, p *= r) b.push_back(C(p));
  EXPECT_NEAR(geometric_ratio(b), 0.5, 1e-12);
  auto v = disk_l2_normsq(b);
  Real exact = -pi<Real>() * log(1 - r * r) / (r * r);
  EXPECT_LE(v.value, exact);
  EXPECT_GE(to_double(v.value) + v.tail * (1 + 1e-9), to_double(exact));
  EXPECT_LT(v.tail, 1e-30);

  std::vector<C> flat(30, C(Real(1)));
  EXPECT_TRUE(std::isinf(disk_l2_normsq(flat).tail));
}

TEST_F(Conformal, NeumannOvalClosedForm) {
  for (Real a : {Real(1) / 4, Real(1), Real(3)}) {
    auto n = neumann_oval_family<Real>(a, 600);
    auto r = rho_conformal(n.psi);
    EXPECT_LT(abs(r.value - n.rho_closed), Real(1e-20) * n.rho_closed) << a;
    EXPECT_LT(r.tail, 1e-20 * to_double(n.rho_closed));
    EXPECT_FALSE(n.psi.decay_suspicious());
  }
  EXPECT_THROW(neumann_oval_family<Real>(Real(0)), torsion_error);
}

TEST_F(Conformal, NeumannOvalApproachesALargeDisk) {
  // for large a, R ~ a and psi(z) ~ a z
  Real a(1000);
  auto n = neumann_oval_family<Real>(a, 50);
  EXPECT_LT(abs(n.rho_closed / (pi<Real>() * pow(a, 4) / 2) - 1), Real(1e-5));
}

TEST_F(Conformal, NeumannOvalInverseAndStress) {
  auto n = neumann_oval_family<Real>(Real(1), 400);
  for (C z : {C(Real("0.2"), Real("0.1")), C(Real("-0.7"), Real("0.3")), C(Real("0.05"), Real("-0.9"))}) {
    EXPECT_LT(abs(n.phi(n.psi_at(z)) - z), Real(1e-50));
    EXPECT_LT(abs(n.psi(z) - n.psi_at(z)), Real(1e-40));
    EXPECT_LT(abs(n.dphi(n.psi_at(z)) * n.dpsi_at(z) - C(Real(1))), Real(1e-50));
  }
  auto sp = stress_of(n);
  EXPECT_FALSE(sp.flagged);
  EXPECT_LT(sp.boundary_residual, 1e-40);
  // the stress function is positive inside
  EXPECT_GT(sp.nu(C(Real("0.3"), Real("0.2"))), 0);
  EXPECT_GT(sp.nu(C()), 0);
}

TEST_F(Conformal, NeumannOvalHerglotzMatchesFourierData) {
  auto n = neumann_oval_family<Real>(Real(2), 400);
  auto hs = herglotz_series(n.psi);
  auto taylor = n.F.taylor(12);
  EXPECT_LT(abs(taylor[0] - C(hs.h0())), tiny());
  for (int j = 1; j < 12; ++j) EXPECT_LT(abs(taylor[j] - hs.h[j] * Real(2)), tiny()) << j;
}

TEST_F(Conformal, DentedDiskValidity) {
  auto v = dented_disk_validity(C(), C(Real(2)));
  EXPECT_FALSE(v.cond_i);
  EXPECT_NE(v.failures().find("condition (i)"), std::string::npos);
  try {
    dented_disk_family<Real>(C(), C(Real(2)));
    FAIL();
  } catch (const torsion_error& e) {
    EXPECT_EQ(e.code(), errc::invalid_parameters);
    EXPECT_NE(std::string(e.what()).find("condition (i)"), std::string::npos);
  }
  EXPECT_FALSE(dented_disk_validity(C(Real(1)), C(Real("1.5"))).cond_ii);  // b - sqrt(a) = 1/2
  auto ok = dented_disk_validity(C(Real("0.2")), C(Real(2)));
  EXPECT_TRUE(ok.valid());
  EXPECT_GT(ok.margin_iii, 0);
}

TEST_F(Conformal, DentedDiskClosedFormsAgreeWithTheSeries) {
  for (auto [a, b] : {std::pair{C(Real("0.2")), C(Real(2))}, std::pair{C(Real("0.1"), Real("0.05")), C(Real(0), Real(3))},
                      std::pair{C(Real("-0.3")), C(Real("2.5"), Real("0.5"))}}) {
    auto d = dented_disk_family<Real>(a, b, 400);
    for (int j = 0; j <= 8; ++j) EXPECT_LT(abs(d.h(j) - fourier_h(d.psi, j)), tiny()) << j;
    auto r = rho_conformal(d.psi);
    EXPECT_LT(abs(r.value - d.rho_closed.value), Real(1e-30));
    EXPECT_LT(d.rho_closed.tail, 1e-30);
    auto taylor = d.F.taylor(8);
    for (int j = 1; j < 8; ++j) EXPECT_LT(abs(taylor[j] - d.h(j) * Real(2)), tiny());
    C z(Real("0.4"), Real("-0.2"));
    EXPECT_LT(abs(d.phi(d.psi_at(z)) - z), Real(1e-50));
    EXPECT_FALSE(stress_of(d).flagged);
  }
}

TEST_F(Conformal, DentedDiskApproachesTheDisk) {
  auto d = dented_disk_family<Real>(C(Real("0.5")), C(Real(1000)), 200);
  EXPECT_LT(abs(d.rho_closed.value - pi<Real>() / 2), Real(1e-5));
}

TEST_F(Conformal, MomentBoundLiesAboveTheConformalValue) {
  auto d = dented_disk_family<Real>(C(Real("0.2")), C(Real(2)), 400);
  auto table = conformal_moment_table(d.psi, 8);
  EXPECT_LT(table.hermiticity_defect(), Real(1e-60));
  auto pr = rho_upper(table, 7);
  EXPECT_GT(pr.rho, d.rho_closed.value);
  for (std::size_t n = 1; n < pr.rho_partial.size(); ++n) EXPECT_LE(pr.rho_partial[n], pr.rho_partial[n - 1]);
}

TEST_F(Conformal, ConformalTableOfTheDisk) {
  TaylorSeries<Real> psi;
  psi.coeffs = Polynomial<Real>{C(), C(Real(1)), C(), C()};
  auto t = conformal_moment_table(psi, 1);
  EXPECT_LT(abs(t(0, 0) - C(pi<Real>())), tiny());
  EXPECT_LT(abs(t(1, 1) - C(pi<Real>() / 2)), tiny());
  EXPECT_LT(abs(t(1, 0)), tiny());
}

TEST_F(Conformal, PolynomialRoots) {
  std::vector<C> roots{C(Real(1)), C(Real(2)), C(Real(0), Real(-3)), C(Real("0.5"), Real("0.5"))};
  Polynomial<Real> p{C(Real(1))};
  for (const auto& r : roots) p = p * Polynomial<Real>{-r, C(Real(1))};
  p = p * C(Real(3));
  auto found = polynomial_roots(p);
  ASSERT_EQ(found.size(), roots.size());
  for (const auto& r : roots) {
    Real best(10);
    for (const auto& f : found) best = std::min(best, abs(f - r));
    EXPECT_LT(best, Real(1e-50));
  }
  EXPECT_LT(abs(smallest_root(found) - roots[3]), Real(1e-50));
}

TEST_F(Conformal, EquilateralTriangle) {
  // torsional rigidity sqrt(3) s^4 / 80 with side s = sqrt(3)
  auto e = equilateral_triangle_exact<Real>();
  EXPECT_LT(abs(e.rho - Real(9) * sqrt(Real(3)) / 80), Real(1e-60));
  EXPECT_LT(e.vertex_residual, 1e-60);
  EXPECT_LT(e.boundary_residual, 1e-60);
  EXPECT_EQ(e.Q, Polynomial<Real>::monomial(2));
  auto t = moment_table<Real>(RegionSpec{family::EquilateralTriangle{}}, 4);
  EXPECT_LT(abs(rho_upper(t, 3).rho - e.rho), Real(1e-60));
}

TEST_F(Conformal, ReciprocalMapInverse) {
  auto m = reciprocal_map_family<Real>(Polynomial<Rational>{Complex<Rational>(8), Complex<Rational>(12),
                                                            Complex<Rational>(6), Complex<Rational>(1)},
                                       Rational(11, 81), 300);
  C z(Real("0.3"), Real("0.1"));
  EXPECT_LT(abs(m.phi(m.psi_at(z)) - z), Real(1e-40));
  EXPECT_LT(abs(m.psi(z) - m.psi_at(z)), Real(1e-40));
  EXPECT_NEAR(m.psi.radius, 2.0, 1e-12);
  auto r = rho_conformal(m.psi);
  EXPECT_GT(r.value, 0);
  EXPECT_FALSE(stress_of(m).flagged);
}
