#pragma once

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torsion/estimate.hpp"
#include "torsion/opuc.hpp"

namespace torsion {

/// One verification line: what was measured, what was expected, and the tolerance.
struct Check {
  std::string group;
  std::string name;
  std::string measured;
  std::string expected;
  std::string tolerance;
  bool pass = false;
};

using CheckList = std::vector<Check>;

struct CheckGroup {
  std::string name;
  std::string summary;
  std::function<void(CheckList&)> run;
};

namespace verify_detail {

inline std::string num(const Real& v, int digits = 12) { return decimal_string(v, digits); }
inline std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

template <Field T>
std::string poly_text(const Polynomial<T>& p) {
  std::string s;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (!s.empty()) s += " ";
    if constexpr (is_exact_v<T>) {
      s += to_string(p[k].re);
      if (p[k].im != 0) s += (p[k].im > 0 ? "+" : "") + to_string(p[k].im) + "i";
    } else {
      s += decimal_string(p[k].re, 10);
    }
  }
  return "[" + s + "]";
}

/// Adds a check and reports it through `list`.
inline void add(CheckList& list, std::string group, std::string name, std::string measured, std::string expected,
                std::string tolerance, bool pass) {
  list.push_back({std::move(group), std::move(name), std::move(measured), std::move(expected), std::move(tolerance),
                  pass});
}

/// Runs `body`; a thrown torsion_error becomes a failed check instead of aborting the group.
inline void guarded(CheckList& list, const std::string& group, const std::string& name,
                    const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    add(list, group, name, std::string("error: ") + e.what(), "no error", "-", false);
  }
}

inline void near(CheckList& list, const std::string& group, const std::string& name, const Real& measured,
                 const Real& expected, const Real& tol, int digits = 12) {
  using std::abs;
  add(list, group, name, num(measured, digits), num(expected, digits), "+-" + num(tol, 3),
      abs(measured - expected) <= tol);
}

/// The centred isosceles right triangle scaled by sqrt(2): (-2/3,0), (1/3,-1), (1/3,1).
/// Its rho_N is four times that of the area-one triangle at every order.
inline PolygonRegion<Rational> scaled_isosceles() {
  return PolygonRegion<Rational>({{Rational(-2, 3), Rational(0)}, {Rational(1, 3), Rational(-1)},
                                  {Rational(1, 3), Rational(1)}});
}

// ----- exact values -----------------------------------------------------------------------

inline void exact_values(CheckList& out) {
  const std::string g = "exact";
  guarded(out, g, "isosceles rho_1 = 1/24", [&] {
    auto t = moment_table(scaled_isosceles(), 1);
    Rational rho = rho_upper(t, 1).rho / 4;
    add(out, g, "isosceles rho_1 = 1/24", to_string(rho), "1/24", "exact", rho == Rational(1, 24));
  });
  guarded(out, g, "isosceles rho_2 = 11/408", [&] {
    auto t = moment_table(scaled_isosceles(), 2);
    Rational rho = rho_upper(t, 2).rho / 4;
    add(out, g, "isosceles rho_2 = 11/408", to_string(rho), "11/408", "exact", rho == Rational(11, 408));
  });
  guarded(out, g, "degree-1 and degree-2 closed forms", [&] {
    auto I = real_moments(scaled_isosceles(), 4);
    Rational r1 = rho1_closed(I(2, 0), I(0, 2), I(1, 1)).rho / 4;
    Rational r2 = rho2_closed(I).rho_I / 4;
    add(out, g, "degree-1 and degree-2 closed forms", to_string(r1) + ", " + to_string(r2), "1/24, 11/408", "exact",
        r1 == Rational(1, 24) && r2 == Rational(11, 408));
  });
}

// ----- OPUC worked example ----------------------------------------------------------------

inline void opuc_example(CheckList& out) {
  const std::string g = "opuc";
  using C = Complex<Rational>;
  guarded(out, g, "worked example", [&] {
    // psi = sqrt(2)/p with p proportional to (z+2)^3
    Polynomial<Rational> q{C(8), C(12), C(6), C(1)};
    auto h = herglotz_from_reciprocal_poly<Rational>(q, Rational(11, 81));
    VerblunskySequence<Rational> expected_alpha{C(Rational(-10, 11)), C(Rational(-4, 7)), C(Rational(-1, 8))};
    std::string got;
    for (const auto& a : h.inverse.alphas) got += (got.empty() ? "" : ", ") + to_string(a.re);
    add(out, g, "Verblunsky coefficients", "{" + got + "}", "{-10/11, -4/7, -1/8}", "exact",
        h.inverse.alphas == expected_alpha);

    Polynomial<Rational> phi2{C(Rational(4, 7)), C(Rational(10, 7)), C(1)};
    add(out, g, "Phi_2", poly_text(h.inverse.phis[2]), poly_text(phi2), "exact", h.inverse.phis[2] == phi2);
    Polynomial<Rational> phi1{C(Rational(10, 11)), C(1)};
    add(out, g, "Phi_1", poly_text(h.inverse.phis[1]), poly_text(phi1), "exact", h.inverse.phis[1] == phi1);

    Polynomial<Rational> psi3{C(Rational(-1, 8)), C(Rational(-23, 24)), C(Rational(-7, 22)), C(1)};
    add(out, g, "Psi_3", poly_text(h.psi), poly_text(psi3), "exact", h.psi == psi3);

    RationalFunction<Rational> F{Polynomial<Rational>{C(24), C(Rational(-84, 11)), C(-23), C(-3)},
                                 Polynomial<Rational>{C(24), C(36), C(18), C(3)}};
    add(out, g, "F = Psi_3^* / Phi_3^*", poly_text(h.F.numerator) + " / " + poly_text(h.F.denominator),
        poly_text(F.numerator) + " / " + poly_text(F.denominator), "same function", h.F.same_function(F));

    add(out, g, "measure mass", to_string(h.mass), "1", "exact", h.mass == 1);
  });
}

// ----- reference series -------------------------------------------------------------------

inline void series_references(CheckList& out) {
  const std::string g = "series";
  precision_scope scope(kDefaultPrecisionBits);
  guarded(out, g, "series", [&] {
    auto tri = isosceles_right_triangle_rho_series<Real>(400, 400);
    add(out, g, "isosceles right triangle series tail", num(tri.tail, 3), "<= 1e-7", "-", tri.tail <= Real(1e-7));
    near(out, g, "isosceles right triangle series", tri.value, Real("0.0260897"), Real(1e-6));
    near(out, g, "legs sqrt(2), scaled by 4", tri.value * 4, Real("0.1043586"), Real(4e-6));
    auto rect = rectangle_rho_series<Real>(Real(2), Real(1) / 2, 300, 300);
    add(out, g, "rectangle 2 x 1/2 series tail", num(rect.tail, 3), "<= 1e-7", "-", rect.tail <= Real(1e-7));
    near(out, g, "rectangle 2 x 1/2 series", rect.value, Real("0.0702032"), Real(1e-6));
  });
}

// ----- rectangle aspect sweep -------------------------------------------------------------

/// rho_12 of the area-one rectangle with sides a, 1/a against R(a) on 20 points of [1, 10].
inline void rectangle_ratio(CheckList& out) {
  const std::string g = "rectangle";
  precision_scope scope(kDefaultPrecisionBits);
  int inside = 0;
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    Rational a = Rational(1) + Rational(9 * k, 19);
    std::string name = "rho_12/R - 1 at a = " + param_text(a);
    guarded(out, g, name, [&] {
      RegionSpec spec{family::Rectangle{Param(a), Param(Rational(1) / a)}};
      auto [rho, bits] = with_precision_retry(
          [&](unsigned) { return rho_upper(moment_table<Real>(spec, 12), 12).rho; }, kDefaultPrecisionBits);
      Real R = rectangle_R(from_rational<Real>(a)).value;
      Real ratio = rho / R - 1;
      bool ok = ratio > 0 && ratio < Real(0.005);
      inside += ok;
      worst = std::max(worst, to_double(ratio));
      add(out, g, name, num(ratio, 6), "in (0, 0.005)", "-", ok);
    });
  }
  add(out, g, "grid summary", std::to_string(inside) + "/20 inside, max " + num(worst), "20/20", "-", inside == 20);
}

// ----- house ------------------------------------------------------------------------------

inline void house_endpoint(CheckList& out) {
  const std::string g = "house";
  guarded(out, g, "house(1/2)", [&] {
    RegionSpec spec{family::House{Param(Rational(1, 2))}};
    auto pr = rho_upper(moment_table<Rational>(spec, 7), 7);
    precision_scope scope(kDefaultPrecisionBits);
    Real rho7 = from_rational<Real>(pr.rho);
    Real rho6 = from_rational<Real>(pr.rho_partial[6]);
    near(out, g, "rho_7(house(1/2))", rho7, Real("0.0703208"), Real(1e-5), 9);
    add(out, g, "rho_6(house(1/2)) for context", num(rho6, 9), "-", "-", true);
    add(out, g, "rho_7(house(1/2)) exceeds the rectangle series", num(rho7, 9), "> 0.0702032", "-",
        rho7 > Real("0.0702032"));
  });
}

/// house_lower(a) <= rho_7(house(a)) on a = k/62, k = 0..31.
inline void sandwich(CheckList& out) {
  const std::string g = "sandwich";
  int violations = 0;
  for (int k = 0; k < 32; ++k) {
    Rational a(k, 62);
    guarded(out, g, "a = " + to_string(a), [&] {
      RegionSpec spec{family::House{Param(a)}};
      Rational upper = rho_upper(moment_table<Rational>(spec, 7), 7).rho;
      HouseLower lower = house_lower<Rational>(Param(a));
      Rational lo = *lower.best.exact_value;
      bool ok = lo <= upper && lo > 0;
      violations += !ok;
      add(out, g, "lower <= rho_7 at a = " + to_string(a),
          decimal_string(from_rational<Real>(lo), 8) + " (u" + std::to_string(lower.best_index + 1) + ")",
          "<= " + decimal_string(from_rational<Real>(upper), 8), "exact", ok);
    });
  }
  add(out, g, "violations", std::to_string(violations), "0", "-", violations == 0);
}

// ----- right-triangle sweep ---------------------------------------------------------------

/// rho_10(Omega_a) on a in [1, 2] with step 1/500. Omega_a and Omega_{2/a} are congruent, so
/// this window contains every candidate maximizer.
inline void right_triangle_sweep(CheckList& out) {
  const std::string g = "right_triangle";
  precision_scope scope(kDefaultPrecisionBits);
  const Real threshold("0.1043586");
  const Rational lo_edge(1408131, 1000000), hi_edge(14203223, 10000000);
  Rational best_a;
  Real best(-1);
  int outside_violations = 0;
  std::string first_violation;
  bool failed = false;
  for (int k = 0; k <= 500; ++k) {
    Rational a = Rational(1) + Rational(k, 500);
    try {
      RegionSpec spec{family::RightTriangle{Param(a)}};
      auto [rho, bits] = with_precision_retry(
          [&](unsigned) { return rho_upper(moment_table<Real>(spec, 10), 10).rho; }, kDefaultPrecisionBits);
      if (rho > best) {
        best = rho;
        best_a = a;
      }
      bool outside = a < lo_edge || a > hi_edge;
      if (outside && !(rho < threshold)) {
        if (outside_violations++ == 0) first_violation = param_text(a);
      }
    } catch (const std::exception& e) {
      failed = true;
      add(out, g, "rho_10 at a = " + param_text(a), std::string("error: ") + e.what(), "no error", "-", false);
    }
  }
  if (failed) return;
  add(out, g, "argmax of rho_10", param_text(best_a) + " (rho_10 = " + num(best, 10) + ")",
      "in [1.408131, 1.4203223]", "grid step 0.002", best_a >= lo_edge && best_a <= hi_edge);
  add(out, g, "rho_10 below 0.1043586 outside the bracket",
      std::to_string(outside_violations) + " violations" +
          (first_violation.empty() ? "" : ", first at a = " + first_violation),
      "0 violations", "-", outside_violations == 0);
}

// ----- conformal closed forms -------------------------------------------------------------

inline void conformal_closed_forms(CheckList& out) {
  const std::string g = "conformal";
  precision_scope scope(kDefaultPrecisionBits);
  using std::abs;
  for (const char* text : {"1/2", "1", "2"}) {
    guarded(out, g, std::string("Neumann oval a = ") + text, [&] {
      Real a = from_rational<Real>(parse_rational(text));
      auto fam = neumann_oval_family<Real>(a, 200);
      Real rho = rho_conformal(fam.psi).value;
      Real expected = pi<Real>() * (a * a * a * a / 2 + 2 * a * a + 1);
      Real rel = abs(rho / expected - 1);
      add(out, g, std::string("Neumann oval a = ") + text + " relative error", num(rel, 3), "<= 1e-8",
          num(rho, 12) + " vs " + num(expected, 12), rel <= Real(1e-8));
    });
  }
  guarded(out, g, "dented disk (1/5, 3/2)", [&] {
    Complex<Real> a(Real(1) / 5), b(Real(3) / 2);
    auto fam = dented_disk_family<Real>(a, b, 200);
    Real series = rho_conformal(fam.psi).value;
    Real rel = abs(series / fam.rho_closed.value - 1);
    add(out, g, "dented disk (1/5, 3/2) series vs closed form", num(rel, 3), "<= 1e-6",
        num(series, 12) + " vs " + num(fam.rho_closed.value, 12), rel <= Real(1e-6));
  });
  guarded(out, g, "dented disk b -> infinity", [&] {
    Real half_pi = pi<Real>() / 2;
    Real prev_gap(-1);
    bool monotone = true;
    std::string values;
    for (int b : {10, 100, 1000}) {
      auto fam = dented_disk_family<Real>(Complex<Real>(Real(1) / 5), Complex<Real>(Real(b)), 50);
      Real gap = abs(fam.rho_closed.value - half_pi);
      if (prev_gap >= 0 && !(gap < prev_gap)) monotone = false;
      prev_gap = gap;
      values += (values.empty() ? "" : ", ") + num(fam.rho_closed.value, 10);
    }
    add(out, g, "dented disk rho at b = 10, 100, 1000 approaches pi/2", values, "-> " + num(half_pi, 10),
        "strictly shrinking gap", monotone);
  });
}

// ----- properties -------------------------------------------------------------------------

inline void szego_roundtrip(CheckList& out) {
  const std::string g = "properties";
  using C = Complex<Rational>;
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> len(1, 8), den(1, 16), sign(0, 1);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    VerblunskySequence<Rational> alphas;
    const int n = len(rng);
    while (static_cast<int>(alphas.size()) < n) {
      int d = den(rng);
      std::uniform_int_distribution<int> numer(-d, d);
      C a(Rational(numer(rng), d), Rational(numer(rng), d));
      if (a.norm() < 1) alphas.push_back(a);
    }
    auto phis = szego_forward_all(alphas);
    auto inv = szego_inverse(phis.back());
    bool ok = inv.alphas == alphas;
    for (int k = 0; k < n && ok; ++k) ok = inv.phis[k] == phis[k];
    failures += !ok;
  }
  add(out, g, "Szego forward/inverse roundtrip, 100 random rational sequences", std::to_string(failures) + " failures",
      "0 failures", "exact", failures == 0);
}

template <Field T>
void table_invariants(CheckList& out, const std::string& label, const MomentTable<T>& t) {
  const std::string g = "properties";
  bool hermitian, positive;
  if constexpr (is_exact_v<T>) {
    hermitian = t.hermiticity_defect() == 0;
  } else {
    T tol = pow(T(2), -static_cast<int>(working_bits()) + 16);
    hermitian = t.hermiticity_defect() <= tol * tol;
  }
  try {
    ldl_hermitian(t.gram(t.degree));
    positive = t(0, 0).re > 0;
  } catch (const precision_exhausted&) {
    positive = false;
  }
  add(out, g, label + " table Hermitian", hermitian ? "yes" : "no", "yes", is_exact_v<T> ? "exact" : "2^(16-bits)",
      hermitian);
  add(out, g, label + " Gram positive definite to degree " + std::to_string(t.degree), positive ? "yes" : "no", "yes",
      "-", positive);
}

inline PolygonRegion<Rational> l_shape() {
  return PolygonRegion<Rational>({{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, {Rational(2), Rational(1)},
                                  {Rational(1), Rational(1)}, {Rational(1), Rational(2)}, {Rational(0), Rational(2)}});
}

inline void moment_properties(CheckList& out) {
  const std::string g = "properties";
  precision_scope scope(kDefaultPrecisionBits);
  const int N = 10;
  guarded(out, g, "tables", [&] {
    table_invariants(out, "rectangle(2, 1/2)", moment_table<Rational>(RegionSpec{family::Rectangle{2, Rational(1, 2)}}, N));
    table_invariants(out, "house(1/4)", moment_table<Rational>(RegionSpec{family::House{Rational(1, 4)}}, N));
    table_invariants(out, "right_triangle(3)", moment_table<Rational>(RegionSpec{family::RightTriangle{3}}, N));
    table_invariants(out, "right_triangle(sqrt 2)",
                     moment_table<Real>(RegionSpec{family::RightTriangle{Param::sqrt_of(2)}}, N));
    table_invariants(out, "equilateral triangle", moment_table<Real>(RegionSpec{family::EquilateralTriangle{}}, N));
    table_invariants(out, "unit disk", moment_table<Real>(RegionSpec{family::UnitDisk{}}, N));
    table_invariants(out, "L-shaped polygon", moment_table(l_shape(), N));
    table_invariants(out, "Neumann oval (a = 1)",
                     conformal_moment_table(neumann_oval_family<Real>(Real(1), 400).psi, N));
    table_invariants(out, "dented disk (1/5, 3/2)",
                     conformal_moment_table(
                         dented_disk_family<Real>(Complex<Real>(Real(1) / 5), Complex<Real>(Real(3) / 2), 400).psi, N));
  });

  guarded(out, g, "monotone, translation, scaling", [&] {
    auto base = realize_polygon<Rational>(RegionSpec{family::House{Rational(1, 4)}});
    auto pr = rho_upper(moment_table(base, 8), 8);
    bool monotone = true;
    for (int n = 1; n <= 8; ++n) monotone = monotone && pr.rho_partial[n] <= pr.rho_partial[n - 1] && pr.rho_partial[n] > 0;
    add(out, g, "rho_N nonincreasing and positive on house(1/4), N <= 8", monotone ? "yes" : "no", "yes", "exact",
        monotone);

    auto shifted = translate(base, Point<Rational>{Rational(3, 7), Rational(-2, 5)});
    auto ps = rho_upper(moment_table(shifted, 8), 8);
    add(out, g, "rho_N translation invariant (shift (3/7, -2/5))", ps.rho_partial == pr.rho_partial ? "equal" : "differ",
        "equal", "exact", ps.rho_partial == pr.rho_partial);

    const Rational r(3, 2);
    auto scaled = scale(base, r);
    auto pk = rho_upper(moment_table(scaled, 8), 8);
    bool law = true;
    for (int n = 0; n <= 8; ++n) law = law && pk.rho_partial[n] == r * r * r * r * pr.rho_partial[n];
    add(out, g, "rho_N(r Omega) = r^4 rho_N(Omega), r = 3/2", law ? "holds" : "fails", "holds", "exact", law);
  });

  guarded(out, g, "closed-form moments", [&] {
    int mismatches = 0;
    for (Rational a : {Rational(0), Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 2)}) {
      auto poly = realize_polygon<Rational>(RegionSpec{family::House{Param(a)}});
      for (int n = 0; n <= 6; ++n) {
        for (int m = 0; n + m <= 6; ++m) {
          mismatches += !(house_moment_closed<Rational>(Param(a), n, m) == complex_moment(poly, n, m));
        }
      }
    }
    add(out, g, "house closed-form moments equal polygon moments, n+m <= 6", std::to_string(mismatches) + " mismatches",
        "0", "exact", mismatches == 0);

    mismatches = 0;
    for (Rational a : {Rational(1, 2), Rational(1), Rational(3)}) {
      auto poly = realize_polygon<Rational>(RegionSpec{family::RightTriangle{Param(a)}});
      for (int n = 0; n <= 6; ++n) {
        for (int m = 0; n + m <= 6; ++m) {
          mismatches += !(right_triangle_moment_closed<Rational>(Param(a), n, m) == complex_moment(poly, n, m));
        }
      }
    }
    Param s2 = Param::sqrt_of(2);
    auto poly = realize_polygon<Real>(RegionSpec{family::RightTriangle{s2}});
    Real worst(0);
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; n + m <= 6; ++m) {
        Real d = abs(right_triangle_moment_closed<Real>(s2, n, m) - complex_moment(poly, n, m));
        if (d > worst) worst = d;
      }
    }
    bool ok = mismatches == 0 && worst <= half_precision_tolerance<Real>();
    add(out, g, "right-triangle closed-form moments equal polygon moments, n+m <= 6",
        std::to_string(mismatches) + " exact mismatches, sqrt(2) deviation " + num(worst, 3), "0",
        "exact / 2^(-bits/2)", ok);
  });

  guarded(out, g, "equilateral projection", [&] {
    auto table = moment_table<Real>(RegionSpec{family::EquilateralTriangle{}}, 8);
    Real worst(0);
    for (int N = 2; N <= 8; ++N) {
      auto pr = rho_upper(table, N);
      for (std::size_t k = 0; k < pr.Q.size(); ++k) {
        Complex<Real> target = k == 2 ? Complex<Real>(Real(1)) : Complex<Real>();
        Real d = abs(pr.Q[k] - target);
        if (d > worst) worst = d;
      }
    }
    add(out, g, "Q_N(equilateral) = z^2 for N = 2..8", "max deviation " + num(worst, 3), "< 2^(-bits/2)",
        num(half_precision_tolerance<Real>(), 3), worst < half_precision_tolerance<Real>());
    auto eq = equilateral_triangle_exact<Real>();
    using std::sqrt;
    near(out, g, "equilateral rho = 9 sqrt(3) / 80", eq.rho, Real(9) * sqrt(Real(3)) / 80, Real(1e-10), 15);
  });
}

inline void properties(CheckList& out) {
  guarded(out, "properties", "Szego roundtrip", [&] { szego_roundtrip(out); });
  moment_properties(out);
}

// ----- convergence ------------------------------------------------------------------------

inline void convergence(CheckList& out) {
  const std::string g = "convergence";
  precision_scope scope(kDefaultPrecisionBits);
  guarded(out, g, "Neumann oval probe", [&] {
    RegionSpec spec{family::NeumannOval{Param(1)}};
    Real rho_true = pi<Real>() * 7 / 2;
    auto probe = convergence_probe(spec, 20, rho_true, std::make_pair(5, 20));
    double ratio = probe.ratio ? *probe.ratio : 1.0 / 0.0;
    add(out, g, "Neumann oval (a = 1) fitted ratio of rho_n - 7 pi/2, n in [5, 20]", num(ratio), "< 0.9", "-",
        probe.ratio && ratio < 0.9);
  });
}

}  // namespace verify_detail

/// All check groups in a fixed order.
inline const std::vector<CheckGroup>& check_groups() {
  using namespace verify_detail;
  static const std::vector<CheckGroup> groups{
      {"exact", "rho_1 = 1/24 and rho_2 = 11/408 in rational arithmetic", exact_values},
      {"opuc", "Szego worked example: Verblunsky coefficients, Phi_k, Psi_3, F", opuc_example},
      {"series", "triangle and rectangle reference series", series_references},
      {"rectangle", "rho_12 / R(a) - 1 on the area-one rectangle", rectangle_ratio},
      {"house", "rho_7 of house(1/2)", house_endpoint},
      {"sandwich", "Rayleigh lower bound below rho_7 on the house grid", sandwich},
      {"right_triangle", "argmax of rho_10 over area-one right triangles", right_triangle_sweep},
      {"conformal", "conformal series against closed forms", conformal_closed_forms},
      {"properties", "exact algebraic and invariance properties", properties},
      {"convergence", "geometric convergence of rho_n on Neumann's oval", convergence},
  };
  return groups;
}

inline CheckList run_checks(const std::vector<std::string>& only = {}) {
  CheckList out;
  for (const auto& g : check_groups()) {
    if (!only.empty() && std::find(only.begin(), only.end(), g.name) == only.end()) continue;
    g.run(out);
  }
  return out;
}

inline std::string format_check(const Check& c) {
  return std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.group + ": " + c.name + " | measured " + c.measured +
         " | expected " + c.expected + " | tol " + c.tolerance;
}

}  // namespace torsion
