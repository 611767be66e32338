// Command-line front end: single estimates, parameter sweeps, verification, and point
// evaluation of the conformal families.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "torsion/torsion.hpp"

namespace {

using namespace torsion;

struct RegionArgs {
  std::string spec_file;
  std::string family;
  std::string a, b;

  void attach(CLI::App* cmd) {
    auto* spec = cmd->add_option("--spec", spec_file, "region spec JSON file");
    auto* fam = cmd->add_option("--family", family, "named family (rectangle, house, right_triangle, ...)");
    spec->excludes(fam);
    cmd->add_option("--a", a, "family parameter a (rational, decimal or sqrt(q))");
    cmd->add_option("--b", b, "family parameter b");
  }

  std::map<std::string, std::string> params() const {
    std::map<std::string, std::string> p;
    if (!a.empty()) p["a"] = a;
    if (!b.empty()) p["b"] = b;
    return p;
  }

  RegionSpec region() const {
    if (!spec_file.empty()) return load_region_spec(spec_file);
    if (family.empty()) throw torsion_error(errc::invalid_spec, "give --spec FILE or --family NAME");
    return family_spec(family, params());
  }
};

struct NumericArgs {
  int degree = 10;
  int truncation = 200;
  int series_cap = 85;
  unsigned precision = kDefaultPrecisionBits;
  std::string trial = "best";
  bool inexact = false;
  double conformal_tol = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--degree", degree, "moment-method polynomial degree N")->capture_default_str();
    cmd->add_option("--truncation", truncation, "conformal Taylor truncation M")->capture_default_str();
    cmd->add_option("--series-cap", series_cap, "cap on the reference double-series indices")->capture_default_str();
    cmd->add_option("--precision", precision, "working precision in bits")->capture_default_str();
    cmd->add_option("--trial", trial, "lower-bound trial preset: best, u1, u2, u3")->capture_default_str();
    cmd->add_flag("--inexact", inexact, "use floating arithmetic even for rational regions");
    cmd->add_option("--conformal-tol", conformal_tol, "relative tail target; doubles the truncation until met");
  }

  EstimateOptions options() const {
    EstimateOptions o;
    o.degree = degree;
    o.truncation = truncation;
    o.series_cap = series_cap;
    o.precision = precision;
    o.trial = trial;
    o.prefer_exact = !inexact;
    o.conformal_tol = conformal_tol;
    return o;
  }
};

struct OutputArgs {
  std::string format = "csv";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--out", out, "write to FILE instead of stdout");
  }

  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out);
    if (!f) throw torsion_error(errc::invalid_spec, "cannot write '" + out + "'");
    f << text;
  }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string region_label(const RegionArgs& r) {
  if (!r.spec_file.empty()) return r.spec_file;
  std::string s = r.family;
  if (!r.a.empty()) s += " a=" + r.a;
  if (!r.b.empty()) s += " b=" + r.b;
  return s;
}

int cmd_estimate(const RegionArgs& region, const NumericArgs& num, const OutputArgs& output, const std::string& methods) {
  RegionSpec spec = region.region();
  std::vector<ReportRow> rows;
  for (const auto& item : split(methods)) {
    auto [m, arg] = parse_method_item(item);
    EstimateOptions opt = apply_method_argument(num.options(), m, arg);
    rows.push_back(make_row(region.a.empty() ? "" : region.a, estimate(spec, m, opt)));
  }
  output.emit(render_rows(rows, output.format));
  for (const auto& r : rows) {
    for (const auto& f : r.flags) std::cerr << "note (" << region_label(region) << ", " << r.method << "): " << f << '\n';
  }
  return 0;
}

int cmd_sweep(const RegionArgs& region, const NumericArgs& num, const OutputArgs& output, const std::string& methods,
              const std::string& param, const std::string& grid) {
  if (region.family.empty()) throw torsion_error(errc::invalid_spec, "sweep needs --family");
  SweepRequest req;
  req.family = region.family;
  req.param = param;
  req.grid = parse_grid(grid);
  req.fixed = region.params();
  req.fixed.erase(param);
  req.methods = split(methods);
  req.options = num.options();
  auto rows = sweep(req);
  output.emit(render_rows(rows, output.format));
  return 0;
}

int cmd_verify(const std::string& only) {
  CheckList checks = run_checks(split(only));
  int failed = 0;
  for (const auto& c : checks) {
    std::cout << format_check(c) << '\n';
    failed += !c.pass;
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

Complex<Real> parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return Complex<Real>(from_rational<Real>(parse_rational(text)));
  return {from_rational<Real>(parse_rational(text.substr(0, comma))),
          from_rational<Real>(parse_rational(text.substr(comma + 1)))};
}

template <class Family>
json evaluate_family(const Family& f, const std::optional<Complex<Real>>& z, const std::optional<Complex<Real>>& w) {
  json out;
  if (z) {
    out["psi"] = complex_json(f.psi_at(*z), 30);
    out["F"] = complex_json(f.F(*z), 30);
  }
  if (w) {
    using C = Complex<Real>;
    auto F = [&](const C& x) { return f.F(x); };
    auto dF = [&](const C& x) {
      C d = f.F.denominator(x);
      return (f.F.numerator.derivative()(x) * d - f.F.numerator(x) * f.F.denominator.derivative()(x)) / (d * d);
    };
    auto sp = stress_and_projection<Real>(F, dF, [&](const C& x) { return f.phi(x); },
                                          [&](const C& x) { return f.dphi(x); },
                                          [&](const C& x) { return f.psi_at(x); });
    out["phi"] = complex_json(f.phi(*w), 30);
    out["Q"] = complex_json(sp.Q(*w), 30);
    out["nu"] = decimal_string(sp.nu(*w), 30);
    out["boundary_residual"] = sp.boundary_residual;
  }
  return out;
}

int cmd_eval(const RegionArgs& region, const NumericArgs& num, const std::string& z_text, const std::string& w_text) {
  precision_scope scope(num.precision);
  RegionSpec spec = region.region();
  std::optional<Complex<Real>> z, w;
  if (!z_text.empty()) z = parse_point(z_text);
  if (!w_text.empty()) w = parse_point(w_text);
  if (!z && !w) throw torsion_error(errc::invalid_spec, "give --z (disk point) and/or --w (region point)");
  json out;
  if (const auto* n = std::get_if<family::NeumannOval>(&spec)) {
    out = evaluate_family(neumann_oval_family<Real>(n->a.as<Real>(), 1), z, w);
  } else if (const auto* d = std::get_if<family::DentedDisk>(&spec)) {
    out = evaluate_family(
        dented_disk_family<Real>(Complex<Real>(d->a.as<Real>()), Complex<Real>(d->b.as<Real>()), 1), z, w);
  } else if (const auto* p = std::get_if<family::ReciprocalPolyMap>(&spec)) {
    out = evaluate_family(reciprocal_map_family<Real>(Polynomial<Rational>(p->shape), p->scale_squared, 1), z, w);
  } else {
    throw torsion_error(errc::unsupported_variant, "point evaluation needs a conformal family");
  }
  out["family"] = family_name(spec);
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsional rigidity of planar regions"};
  app.require_subcommand(1);

  RegionArgs region;
  NumericArgs num;
  OutputArgs output;
  std::string methods = "moment";

  auto* est = app.add_subcommand("estimate", "estimate rho for one region");
  region.attach(est);
  num.attach(est);
  output.attach(est);
  est->add_option("--method", methods, "comma list of moment, conformal, lower, series, closed_form (name:arg)")
      ->capture_default_str();

  RegionArgs sweep_region;
  NumericArgs sweep_num;
  OutputArgs sweep_output;
  std::string sweep_methods = "moment";
  std::string param = "a";
  std::string grid;
  auto* sw = app.add_subcommand("sweep", "sweep one family parameter over a grid");
  sweep_region.attach(sw);
  sweep_num.attach(sw);
  sweep_output.attach(sw);
  sw->add_option("--method", sweep_methods, "comma list such as moment:12,series or moment:7,lower:best")
      ->capture_default_str();
  sw->add_option("--param", param, "parameter to sweep")->capture_default_str();
  sw->add_option("--grid", grid, "START:STOP:COUNT")->required();

  std::string only;
  auto* ver = app.add_subcommand("verify", "run the verification checks");
  ver->add_option("--only", only, "comma list of check groups");

  RegionArgs eval_region;
  NumericArgs eval_num;
  std::string z_text, w_text;
  auto* ev = app.add_subcommand("eval", "evaluate a conformal family at a point");
  eval_region.attach(ev);
  ev->add_option("--precision", eval_num.precision, "working precision in bits")->capture_default_str();
  ev->add_option("--z", z_text, "disk point re,im: report psi(z) and F(z)");
  ev->add_option("--w", w_text, "region point re,im: report phi(w), Q(w), nu(w)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*est) return cmd_estimate(region, num, output, methods);
    if (*sw) return cmd_sweep(sweep_region, sweep_num, sweep_output, sweep_methods, param, grid);
    if (*ver) return cmd_verify(only);
    if (*ev) return cmd_eval(eval_region, eval_num, z_text, w_text);
  } catch (const torsion_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
