#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsion/bergman.hpp"
#include "torsion/core/rigidity.hpp"
#include "torsion/regions.hpp"

namespace torsion {

using json = nlohmann::json;

namespace detail {

inline Param json_param(const json& j, const char* key) {
  if (!j.contains(key)) throw torsion_error(errc::invalid_spec, std::string("missing parameter '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return Param::parse(v.get<std::string>());
  if (v.is_number_integer()) return Param(Rational(v.get<long long>()));
  if (v.is_number()) return Param(parse_rational(v.dump()));
  throw torsion_error(errc::invalid_spec, std::string("parameter '") + key + "' must be a number or string");
}

inline Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) return parse_rational(v.dump());
  throw torsion_error(errc::invalid_spec, "expected a rational number");
}

/// "p/q", a number, or a [re, im] pair
inline Complex<Rational> json_complex(const json& v) {
  if (v.is_array()) {
    if (v.size() != 2) throw torsion_error(errc::invalid_spec, "complex coefficient must be [re, im]");
    return {json_rational(v[0]), json_rational(v[1])};
  }
  return Complex<Rational>(json_rational(v));
}

}  // namespace detail

/// {"family":"house","a":"1/4"} or {"polygon":[["-1","0"],["1","0"],...]}.
/// Reciprocal maps take {"family":"reciprocal_poly_map","coefficients":[...],"scale_squared":"11/81"}
/// with coefficients in increasing degree.
inline RegionSpec parse_region_spec(const json& j) {
  if (!j.is_object()) throw torsion_error(errc::invalid_spec, "region spec must be a JSON object");
  if (j.contains("polygon")) {
    family::Polygon p;
    for (const auto& v : j.at("polygon")) {
      if (!v.is_array() || v.size() != 2) throw torsion_error(errc::invalid_spec, "polygon vertex must be [x, y]");
      json pair = {{"x", v[0]}, {"y", v[1]}};
      p.vertices.push_back({detail::json_param(pair, "x"), detail::json_param(pair, "y")});
    }
    RegionSpec spec = p;
    validate_parameters(spec);
    return spec;
  }
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw torsion_error(errc::invalid_spec, "region spec needs 'family' or 'polygon'");
  }
  const std::string name = j.at("family").get<std::string>();
  RegionSpec spec;
  if (name == "rectangle") {
    spec = family::Rectangle{detail::json_param(j, "a"), detail::json_param(j, "b")};
  } else if (name == "house") {
    spec = family::House{detail::json_param(j, "a")};
  } else if (name == "right_triangle") {
    spec = family::RightTriangle{detail::json_param(j, "a")};
  } else if (name == "equilateral_triangle") {
    spec = family::EquilateralTriangle{};
  } else if (name == "unit_disk") {
    spec = family::UnitDisk{};
  } else if (name == "dented_disk") {
    spec = family::DentedDisk{detail::json_param(j, "a"), detail::json_param(j, "b")};
  } else if (name == "neumann_oval") {
    spec = family::NeumannOval{detail::json_param(j, "a")};
  } else if (name == "reciprocal_poly_map") {
    family::ReciprocalPolyMap m;
    if (!j.contains("coefficients")) throw torsion_error(errc::invalid_spec, "missing 'coefficients'");
    for (const auto& c : j.at("coefficients")) m.shape.push_back(detail::json_complex(c));
    if (j.contains("scale_squared")) m.scale_squared = detail::json_rational(j.at("scale_squared"));
    spec = m;
  } else {
    throw torsion_error(errc::invalid_spec, "unknown family '" + name + "'");
  }
  validate_parameters(spec);
  return spec;
}

inline RegionSpec parse_region_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw torsion_error(errc::invalid_spec, std::string("malformed JSON: ") + e.what());
  }
  return parse_region_spec(j);
}

inline RegionSpec load_region_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw torsion_error(errc::invalid_spec, "cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_region_spec(ss.str());
}

template <Field T>
std::string scalar_text(const T& v, int digits = 40) {
  if constexpr (is_exact_v<T>) {
    return to_string(v);
  } else {
    return decimal_string(v, digits);
  }
}

template <Field T>
json complex_json(const Complex<T>& z, int digits = 40) {
  return json::array({scalar_text(z.re, digits), scalar_text(z.im, digits)});
}

/// Rational entries as "p/q"; floating entries as decimal strings with the precision declared.
template <Field T>
json moment_table_json(const MomentTable<T>& t) {
  json rows = json::array();
  for (int i = 0; i < t.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < t.size(); ++j) row.push_back(complex_json(t(i, j)));
    rows.push_back(row);
  }
  json out = {{"degree", t.degree}, {"exact", is_exact_v<T>}, {"entries", rows}};
  if constexpr (!is_exact_v<T>) out["precision_bits"] = working_bits();
  return out;
}

template <Field T>
json projection_json(const ProjectionResult<T>& r) {
  json q = json::array(), dn = json::array(), partial = json::array();
  for (const auto& c : r.Q.coeffs()) q.push_back(complex_json(c));
  for (const auto& d : r.dn_sq) {
    using std::sqrt;
    dn.push_back(decimal_string(sqrt(to_real(d)), 20));
  }
  for (const auto& p : r.rho_partial) partial.push_back(scalar_text(p));
  return {{"Q", q}, {"d_abs", dn}, {"rho_partial", partial}, {"rho", scalar_text(r.rho)}};
}

/// The CSV schema, announced by a header comment line.
inline constexpr const char* kCsvSchema = "# torsion-csv v1";
inline constexpr const char* kCsvColumns = "param,method,degree,value,bound_direction,tail,precision,status";

/// One output row: an estimate, or the error that replaced it.
struct ReportRow {
  std::string param;
  std::string method;
  int degree = 0;
  std::string value;
  std::string bound_direction;
  std::string tail;
  unsigned precision = 0;
  std::string status = "ok";
  std::optional<std::string> exact;
  std::vector<std::string> flags;
};

inline std::string tail_text(double tail) {
  if (tail == 0) return "0";
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << tail;
  return os.str();
}

inline ReportRow make_row(const std::string& param, const RigidityEstimate& e, int digits = 20) {
  ReportRow r;
  r.param = param;
  r.method = method_name(e.method);
  r.degree = e.order;
  r.value = decimal_string(e.value, digits);
  r.bound_direction = bound_name(e.bound);
  r.tail = tail_text(e.tail);
  r.precision = e.precision_bits;
  if (e.exact_value) r.exact = to_string(*e.exact_value);
  r.flags = e.flags;
  return r;
}

inline ReportRow error_row(const std::string& param, const std::string& method, int degree, const torsion_error& e) {
  ReportRow r;
  r.param = param;
  r.method = method;
  r.degree = degree;
  r.status = std::string("error:") + errc_name(e.code());
  r.flags.push_back(e.what());
  return r;
}

inline std::string csv_line(const ReportRow& r) {
  std::ostringstream os;
  os << r.param << ',' << r.method << ',' << r.degree << ',' << r.value << ',' << r.bound_direction << ',' << r.tail
     << ',' << r.precision << ',' << r.status;
  return os.str();
}

inline json row_json(const ReportRow& r) {
  json j = {{"param", r.param},     {"method", r.method}, {"degree", r.degree},
            {"value", r.value},     {"bound_direction", r.bound_direction},
            {"tail", r.tail},       {"precision", r.precision},
            {"status", r.status}};
  if (r.exact) j["exact"] = *r.exact;
  if (!r.flags.empty()) j["flags"] = r.flags;
  return j;
}

inline std::string render_rows(const std::vector<ReportRow>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    json doc = {{"schema", "torsion-csv v1"}, {"rows", arr}};
    os << doc.dump(2) << '\n';
  } else {
    os << kCsvSchema << '\n' << kCsvColumns << '\n';
    for (const auto& r : rows) os << csv_line(r) << '\n';
  }
  return os.str();
}

}  // namespace torsion
