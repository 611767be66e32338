#pragma once

#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "torsion/bergman.hpp"
#include "torsion/conformal.hpp"
#include "torsion/io.hpp"
#include "torsion/lowerbound.hpp"
#include "torsion/reference.hpp"

namespace torsion {

struct EstimateOptions {
  int degree = 10;
  int truncation = 200;
  /// j, k caps of the double series references
  int series_cap = 85;
  unsigned precision = kDefaultPrecisionBits;
  /// rational arithmetic whenever every vertex is rational
  bool prefer_exact = true;
  /// "best", "u1", "u2" or "u3"
  std::string trial = "best";
  /// when positive, the conformal truncation doubles until tail <= tol * rho
  double conformal_tol = 0;
};

inline Method parse_method(const std::string& name) {
  if (name == "moment") return Method::moment;
  if (name == "conformal") return Method::conformal;
  if (name == "lower") return Method::lower;
  if (name == "series") return Method::series;
  if (name == "closed_form") return Method::closed_form;
  throw torsion_error(errc::invalid_spec, "unknown method '" + name + "'");
}

namespace detail {

inline bool params_exact(const RegionSpec& spec) {
  return std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Polygon>) {
          for (const auto& v : f.vertices) {
            if (!v[0].is_exact() || !v[1].is_exact()) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<F, family::Rectangle>) {
          return f.a.is_exact() && f.b.is_exact();
        } else if constexpr (std::is_same_v<F, family::House> || std::is_same_v<F, family::RightTriangle>) {
          return f.a.is_exact();
        } else {
          return false;
        }
      },
      spec);
}

inline RigidityEstimate from_real(const Real& v, Method m, BoundDirection b, int order, double tail) {
  RigidityEstimate e;
  e.value = v;
  e.method = m;
  e.bound = b;
  e.order = order;
  e.tail = tail;
  e.precision_bits = working_bits();
  return e;
}

inline RigidityEstimate moment_estimate(const RegionSpec& spec, const EstimateOptions& opt) {
  if (opt.degree < 0) throw torsion_error(errc::invalid_spec, "degree must be nonnegative");
  if (!is_polygonal(spec) && !std::holds_alternative<family::UnitDisk>(spec)) {
    throw torsion_error(errc::unsupported_variant, family_name(spec) + " has no moment table; use the conformal method");
  }
  if (opt.prefer_exact && params_exact(spec)) {
    auto table = moment_table<Rational>(spec, opt.degree);
    auto r = rho_upper(table, opt.degree);
    RigidityEstimate e;
    e.exact_value = r.rho;
    {
      precision_scope scope(opt.precision);
      e.value = from_rational<Real>(r.rho);
    }
    e.method = Method::moment;
    e.bound = BoundDirection::upper;
    e.order = opt.degree;
    return e;
  }
  auto [value, bits] = with_precision_retry(
      [&](unsigned) {
        auto table = moment_table<Real>(spec, opt.degree);
        return rho_upper(table, opt.degree).rho;
      },
      opt.precision);
  precision_scope scope(bits);
  return from_real(value, Method::moment, BoundDirection::upper, opt.degree, 0);
}

template <class Family>
void flag_stress(RigidityEstimate& e, const Family& f) {
  using C = Complex<Real>;
  auto F = [&](const C& z) { return f.F(z); };
  auto dF = [&](const C& z) {
    C d = f.F.denominator(z);
    return (f.F.numerator.derivative()(z) * d - f.F.numerator(z) * f.F.denominator.derivative()(z)) / (d * d);
  };
  auto sp = stress_and_projection<Real>(F, dF, [&](const C& z) { return f.phi(z); },
                                        [&](const C& z) { return f.dphi(z); },
                                        [&](const C& z) { return f.psi_at(z); }, 64,
                                        to_double(half_precision_tolerance<Real>()));
  if (sp.flagged) e.flags.push_back("stress boundary residual " + tail_text(sp.boundary_residual));
}

inline RigidityEstimate conformal_estimate(const RegionSpec& spec, const EstimateOptions& opt) {
  precision_scope scope(opt.precision);
  const int M = opt.truncation;
  if (M < 1) throw torsion_error(errc::invalid_spec, "truncation must be at least 1");
  auto finish = [&](const ConformalRho<Real>& r) {
    return from_real(r.value, Method::conformal, BoundDirection::exact, r.truncation, r.tail);
  };
  auto run = [&](auto make_series) {
    if (opt.conformal_tol > 0) {
      return rho_conformal_adaptive<Real>(make_series, opt.conformal_tol, M);
    }
    return rho_conformal(make_series(M));
  };
  if (std::holds_alternative<family::UnitDisk>(spec)) {
    TaylorSeries<Real> psi;
    psi.coeffs = Polynomial<Real>::monomial(1);
    psi.finite = true;
    auto r = rho_conformal(psi);
    return from_real(r.value, Method::conformal, BoundDirection::exact, 1, 0);
  }
  if (const auto* n = std::get_if<family::NeumannOval>(&spec)) {
    Real a = n->a.as<Real>();
    auto fam = neumann_oval_family<Real>(a, M);
    auto e = finish(run([&](int m) { return neumann_oval_family<Real>(a, m).psi; }));
    flag_stress(e, fam);
    return e;
  }
  if (const auto* d = std::get_if<family::DentedDisk>(&spec)) {
    Complex<Real> a(d->a.as<Real>()), b(d->b.as<Real>());
    auto fam = dented_disk_family<Real>(a, b, M);
    auto e = finish(run([&](int m) { return dented_disk_family<Real>(a, b, m).psi; }));
    flag_stress(e, fam);
    return e;
  }
  if (const auto* p = std::get_if<family::ReciprocalPolyMap>(&spec)) {
    Polynomial<Rational> shape(p->shape);
    auto fam = reciprocal_map_family<Real>(shape, p->scale_squared, M);
    auto r = rho_conformal(fam.psi, rational_derivative_taylor(fam.F, M), false);
    auto e = finish(r);
    flag_stress(e, fam);
    return e;
  }
  if (std::holds_alternative<family::EquilateralTriangle>(spec)) {
    auto eq = equilateral_triangle_exact<Real>();
    auto e = from_real(eq.rho, Method::conformal, BoundDirection::exact, 2, 0);
    if (eq.boundary_residual > to_double(half_precision_tolerance<Real>())) {
      e.flags.push_back("boundary residual " + tail_text(eq.boundary_residual));
    }
    return e;
  }
  throw torsion_error(errc::unsupported_variant, family_name(spec) + " has no built-in conformal map");
}

inline RigidityEstimate lower_estimate(const RegionSpec& spec, const EstimateOptions& opt) {
  const auto* h = std::get_if<family::House>(&spec);
  if (!h) throw torsion_error(errc::unsupported_variant, "trial-function presets exist only for the house family");
  static const std::map<std::string, int> index{{"u1", 0}, {"u2", 1}, {"u3", 2}};
  if (opt.trial != "best" && !index.count(opt.trial)) {
    throw torsion_error(errc::invalid_spec, "unknown trial preset '" + opt.trial + "'");
  }
  auto pick = [&](HouseLower&& hl) {
    if (opt.trial == "best") return hl.best;
    return hl.trials[index.at(opt.trial)];
  };
  precision_scope scope(opt.precision);
  if (h->a.is_exact()) {
    auto e = pick(house_lower<Rational>(h->a));
    e.value = from_rational<Real>(*e.exact_value);
    return e;
  }
  return pick(house_lower<Real>(h->a));
}

inline RigidityEstimate series_estimate(const RegionSpec& spec, const EstimateOptions& opt) {
  precision_scope scope(opt.precision);
  const int cap = opt.series_cap;
  if (const auto* r = std::get_if<family::Rectangle>(&spec)) {
    auto s = rectangle_rho_series<Real>(r->a.as<Real>(), r->b.as<Real>(), cap, cap);
    return from_real(s.value, Method::series, BoundDirection::exact, cap, to_double(s.tail));
  }
  if (const auto* t = std::get_if<family::RightTriangle>(&spec)) {
    if (t->a.square() != 2) {
      throw torsion_error(errc::unsupported_variant, "the right-triangle series covers only the isosceles case a = sqrt(2)");
    }
    // legs sqrt(2): the unit-leg series scaled by (sqrt 2)^4
    auto s = isosceles_right_triangle_rho_series<Real>(cap, cap);
    return from_real(s.value * 4, Method::series, BoundDirection::exact, cap, to_double(s.tail * 4));
  }
  if (std::holds_alternative<family::UnitDisk>(spec)) {
    return from_real(disk_rho(Real(1)), Method::series, BoundDirection::exact, 0, 0);
  }
  throw torsion_error(errc::unsupported_variant, family_name(spec) + " has no reference series");
}

inline RigidityEstimate closed_form_estimate(const RegionSpec& spec, const EstimateOptions& opt) {
  precision_scope scope(opt.precision);
  if (std::holds_alternative<family::UnitDisk>(spec)) {
    return from_real(disk_rho(Real(1)), Method::closed_form, BoundDirection::exact, 0, 0);
  }
  if (const auto* n = std::get_if<family::NeumannOval>(&spec)) {
    auto fam = neumann_oval_family<Real>(n->a.as<Real>(), 1);
    return from_real(fam.rho_closed, Method::closed_form, BoundDirection::exact, 0, 0);
  }
  if (const auto* d = std::get_if<family::DentedDisk>(&spec)) {
    auto fam = dented_disk_family<Real>(Complex<Real>(d->a.as<Real>()), Complex<Real>(d->b.as<Real>()), 1);
    return from_real(fam.rho_closed.value, Method::closed_form, BoundDirection::exact, 0, fam.rho_closed.tail);
  }
  if (std::holds_alternative<family::EquilateralTriangle>(spec)) {
    using std::sqrt;
    return from_real(Real(9) * sqrt(Real(3)) / 80, Method::closed_form, BoundDirection::exact, 0, 0);
  }
  throw torsion_error(errc::unsupported_variant, family_name(spec) + " has no closed form");
}

}  // namespace detail

/// One rigidity value for a region by the chosen route.
inline RigidityEstimate estimate(const RegionSpec& spec, Method method, const EstimateOptions& opt = {}) {
  if (opt.precision < 2 || opt.precision > kMaxPrecisionBits) {
    throw torsion_error(errc::invalid_spec, "precision must lie in [2, " + std::to_string(kMaxPrecisionBits) + "]");
  }
  switch (method) {
    case Method::moment: return detail::moment_estimate(spec, opt);
    case Method::conformal: return detail::conformal_estimate(spec, opt);
    case Method::lower: return detail::lower_estimate(spec, opt);
    case Method::series: return detail::series_estimate(spec, opt);
    case Method::closed_form: return detail::closed_form_estimate(spec, opt);
  }
  throw torsion_error(errc::internal, "unhandled method");
}

/// Region spec from a family name and its parameters as text.
inline RegionSpec family_spec(const std::string& family, const std::map<std::string, std::string>& params) {
  json j = {{"family", family}};
  for (const auto& [k, v] : params) j[k] = v;
  return parse_region_spec(j);
}

/// Moment table for the convergence probe: closed forms or polygons, or the conformal
/// table for the map families.
inline MomentTable<Real> probe_table(const RegionSpec& spec, int N, int truncation = 600) {
  if (const auto* n = std::get_if<family::NeumannOval>(&spec)) {
    return conformal_moment_table(neumann_oval_family<Real>(n->a.as<Real>(), truncation).psi, N);
  }
  if (const auto* d = std::get_if<family::DentedDisk>(&spec)) {
    return conformal_moment_table(
        dented_disk_family<Real>(Complex<Real>(d->a.as<Real>()), Complex<Real>(d->b.as<Real>()), truncation).psi, N);
  }
  return moment_table<Real>(spec, N);
}

inline ConvergenceProbe convergence_probe(const RegionSpec& spec, int N_max, const Real& rho_true,
                                          std::optional<std::pair<int, int>> window = std::nullopt) {
  return convergence_probe(probe_table(spec, N_max), N_max, rho_true, window);
}

/// START:STOP:COUNT with rational endpoints; COUNT points including both ends.
inline std::vector<Rational> parse_grid(const std::string& text) {
  auto first = text.find(':');
  auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) throw torsion_error(errc::invalid_spec, "grid must be START:STOP:COUNT");
  Rational start = parse_rational(text.substr(0, first));
  Rational stop = parse_rational(text.substr(first + 1, second - first - 1));
  int count;
  try {
    count = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw torsion_error(errc::invalid_spec, "grid count must be an integer");
  }
  if (count < 1) throw torsion_error(errc::invalid_spec, "grid count must be positive");
  std::vector<Rational> out;
  for (int k = 0; k < count; ++k) out.push_back(count == 1 ? start : start + (stop - start) * k / (count - 1));
  return out;
}

/// "moment:12" -> (moment, "12"); "lower:u2" -> (lower, "u2"); "series" -> (series, "")
inline std::pair<Method, std::string> parse_method_item(const std::string& item) {
  auto colon = item.find(':');
  if (colon == std::string::npos) return {parse_method(item), ""};
  return {parse_method(item.substr(0, colon)), item.substr(colon + 1)};
}

inline EstimateOptions apply_method_argument(EstimateOptions opt, Method m, const std::string& arg) {
  if (arg.empty()) return opt;
  if (m == Method::lower) {
    opt.trial = arg;
    return opt;
  }
  int n;
  try {
    n = std::stoi(arg);
  } catch (const std::exception&) {
    throw torsion_error(errc::invalid_spec, "method argument '" + arg + "' must be an integer");
  }
  if (m == Method::moment) opt.degree = n;
  if (m == Method::conformal) opt.truncation = n;
  if (m == Method::series) opt.series_cap = n;
  return opt;
}

inline int method_order(Method m, const EstimateOptions& opt) {
  switch (m) {
    case Method::moment: return opt.degree;
    case Method::conformal: return opt.truncation;
    case Method::series: return opt.series_cap;
    default: return 0;
  }
}

inline std::string param_text(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(15) << to_double(r);
  return os.str();
}

struct SweepRequest {
  std::string family;
  /// the swept parameter
  std::string param = "a";
  std::vector<Rational> grid;
  /// other parameters held fixed
  std::map<std::string, std::string> fixed;
  std::vector<std::string> methods;
  EstimateOptions options;
};

/// Rows in grid order, then method order. A failing row records its error and the sweep
/// continues. The rectangle without a fixed b is the area-one rectangle with sides a and 1/a.
inline std::vector<ReportRow> sweep(const SweepRequest& req) {
  std::vector<ReportRow> rows;
  for (const auto& value : req.grid) {
    std::map<std::string, std::string> params = req.fixed;
    params[req.param] = to_string(value);
    if (req.family == "rectangle" && !params.count("b") && req.param == "a" && value != 0) {
      params["b"] = to_string(Rational(1) / value);
    }
    for (const auto& item : req.methods) {
      Method m = Method::moment;
      EstimateOptions opt = req.options;
      std::string label = item;
      try {
        auto [method, arg] = parse_method_item(item);
        m = method;
        label = method_name(m);
        opt = apply_method_argument(opt, m, arg);
        RegionSpec spec = family_spec(req.family, params);
        rows.push_back(make_row(param_text(value), estimate(spec, m, opt)));
      } catch (const torsion_error& e) {
        rows.push_back(error_row(param_text(value), label, method_order(m, opt), e));
      }
    }
  }
  return rows;
}

}  // namespace torsion
