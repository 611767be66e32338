#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "torsion/estimate.hpp"

using namespace torsion;

namespace {

struct RunResult {
  int status;
  std::string output;
};

/// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + TORSION_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string sample(const std::string& name) { return std::string(TORSION_SAMPLES_DIR) + "/" + name; }

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const torsion_error& e) {
    return e.code();
  }
  return errc::internal;
}

}  // namespace

TEST(Spec, ParsesFamiliesAndPolygons) {
  auto h = parse_region_spec(std::string(R"({"family":"house","a":"1/4"})"));
  ASSERT_TRUE(std::holds_alternative<family::House>(h));
  EXPECT_EQ(std::get<family::House>(h).a.rational(), Rational(1, 4));

  auto r = parse_region_spec(std::string(R"({"family":"rectangle","a":2,"b":0.5})"));
  EXPECT_EQ(std::get<family::Rectangle>(r).b.rational(), Rational(1, 2));

  auto t = parse_region_spec(std::string(R"json({"family":"right_triangle","a":"sqrt(2)"})json"));
  EXPECT_FALSE(std::get<family::RightTriangle>(t).a.is_exact());

  auto p = parse_region_spec(std::string(R"({"polygon":[["0","0"],[1,0],["0","1/2"]]})"));
  auto poly = realize_polygon<Rational>(p);
  EXPECT_EQ(poly.signed_area(), Rational(1, 4));

  auto m = parse_region_spec(std::string(R"({"family":"reciprocal_poly_map","coefficients":[1,[0,"1/2"]]})"));
  const auto& map = std::get<family::ReciprocalPolyMap>(m);
  ASSERT_EQ(map.shape.size(), 2u);
  EXPECT_EQ(map.shape[1], Complex<Rational>(Rational(0), Rational(1, 2)));
  EXPECT_FALSE(map.scale_squared.has_value());
}

TEST(Spec, Errors) {
  EXPECT_EQ(code_of([] { parse_region_spec(std::string("{not json")); }), errc::invalid_spec);
  EXPECT_EQ(code_of([] { parse_region_spec(std::string(R"({"family":"blob"})")); }), errc::invalid_spec);
  EXPECT_EQ(code_of([] { parse_region_spec(std::string(R"({"family":"house"})")); }), errc::invalid_spec);
  EXPECT_EQ(code_of([] { parse_region_spec(std::string(R"([1,2])")); }), errc::invalid_spec);
  EXPECT_EQ(code_of([] { parse_region_spec(std::string(R"({"polygon":[[0,0,1]]})")); }), errc::invalid_spec);
  EXPECT_EQ(code_of([] { load_region_spec("/nonexistent/spec.json"); }), errc::invalid_spec);
}

TEST(Spec, SamplesLoad) {
  for (const char* name : {"house.json", "rectangle.json", "right_triangle.json", "neumann_oval.json",
                           "dented_disk.json", "equilateral_triangle.json", "reciprocal_poly_map.json",
                           "l_shape.json"}) {
    EXPECT_NO_THROW(load_region_spec(sample(name))) << name;
  }
}

TEST(Grid, ParsesEndpointsAndCount) {
  auto g = parse_grid("0:1/2:5");
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0], 0);
  EXPECT_EQ(g[1], Rational(1, 8));
  EXPECT_EQ(g[4], Rational(1, 2));
  EXPECT_EQ(parse_grid("3:7:1"), std::vector<Rational>{Rational(3)});
  EXPECT_THROW(parse_grid("0:1"), torsion_error);
  EXPECT_THROW(parse_grid("0:1:x"), torsion_error);
  EXPECT_THROW(parse_grid("0:1:0"), torsion_error);
}

TEST(Methods, ItemsAndArguments) {
  auto [m, arg] = parse_method_item("moment:12");
  EXPECT_EQ(m, Method::moment);
  EXPECT_EQ(apply_method_argument({}, m, arg).degree, 12);
  auto [l, trial] = parse_method_item("lower:u2");
  EXPECT_EQ(apply_method_argument({}, l, trial).trial, "u2");
  EXPECT_EQ(parse_method_item("series").first, Method::series);
  EXPECT_THROW(parse_method("bogus"), torsion_error);
  EXPECT_THROW(apply_method_argument({}, Method::moment, "twelve"), torsion_error);
}

TEST(Sweep, RowsMatchSingleEstimates) {
  SweepRequest req;
  req.family = "house";
  req.grid = parse_grid("0:1/2:3");
  req.methods = {"moment:5", "lower"};
  auto rows = sweep(req);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t k = 0; k < req.grid.size(); ++k) {
    RegionSpec spec = family_spec("house", {{"a", to_string(req.grid[k])}});
    EstimateOptions opt;
    opt.degree = 5;
    auto single = make_row(param_text(req.grid[k]), estimate(spec, Method::moment, opt));
    EXPECT_EQ(csv_line(rows[2 * k]), csv_line(single));
    EXPECT_EQ(rows[2 * k + 1].bound_direction, "lower");
  }
}

TEST(Sweep, ErrorsBecomeRows) {
  SweepRequest req;
  req.family = "house";
  req.grid = parse_grid("1/4:3/4:2");
  req.methods = {"moment:4"};
  auto rows = sweep(req);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_EQ(rows[1].status, "error:domain-error");
}

TEST(Sweep, RectangleDefaultsToAreaOne) {
  SweepRequest req;
  req.family = "rectangle";
  req.grid = {Rational(2)};
  req.methods = {"moment:2"};
  auto rows = sweep(req);
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_TRUE(rows[0].exact.has_value());
  // a^3 b^3 / (3 (a^2 + b^2)) with a = 2, b = 1/2
  EXPECT_EQ(*rows[0].exact, to_string(Rational(1, 3) / (4 + Rational(1, 4))));
}

TEST(Render, CsvAndJson) {
  RigidityEstimate e;
  e.value = Real(1) / 8;
  e.method = Method::lower;
  e.bound = BoundDirection::lower;
  e.order = 3;
  auto row = make_row("0.25", e);
  std::string csv = render_rows({row}, "csv");
  EXPECT_EQ(csv.rfind(std::string(kCsvSchema) + "\n" + kCsvColumns + "\n", 0), 0u);
  EXPECT_NE(csv.find("0.25,lower,3,1.25000000000000000000e-01,lower,0,0,ok"), std::string::npos);
  auto j = json::parse(render_rows({row}, "json"));
  EXPECT_EQ(j["rows"][0]["bound_direction"], "lower");
  EXPECT_EQ(j["rows"][0]["status"], "ok");
}

TEST(Cli, EstimateFromASpecFile) {
  auto r = run_cli("estimate --spec " + sample("rectangle.json") + " --method moment:2,series");
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find(kCsvColumns), std::string::npos);
  EXPECT_NE(r.output.find(",moment,2,"), std::string::npos);
  EXPECT_NE(r.output.find(",series,"), std::string::npos);
}

TEST(Cli, NeumannOvalConformalValue) {
  auto r = run_cli("estimate --family neumann_oval --a 1 --method conformal --format json");
  ASSERT_EQ(r.status, 0) << r.output;
  auto j = json::parse(r.output.substr(r.output.find('{')));
  double v = std::stod(j["rows"][0]["value"].get<std::string>());
  EXPECT_NEAR(v, 3.5 * M_PI, 1e-12);
}

TEST(Cli, DentedDiskWithZeroDentIsRejected) {
  auto r = run_cli("estimate --family dented_disk --a 0 --b 2 --method conformal");
  EXPECT_EQ(r.status, 4) << r.output;
  EXPECT_NE(r.output.find("condition (i)"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("estimate --family blob").status, 2);
  EXPECT_EQ(run_cli("estimate --spec /nonexistent.json").status, 2);
  EXPECT_EQ(run_cli("estimate --family house --a 3/4").status, 4);
  EXPECT_EQ(run_cli("estimate --family rectangle --a 1 --b 1 --precision 1").status, 2);
  EXPECT_NE(run_cli("frobnicate").status, 0);
}

TEST(Cli, SweepAndEval) {
  auto s = run_cli("sweep --family house --grid 0:1/2:3 --method moment:4,lower");
  ASSERT_EQ(s.status, 0) << s.output;
  int lines = 0;
  for (char c : s.output) lines += c == '\n';
  EXPECT_EQ(lines, 2 + 6);

  auto e = run_cli("eval --family neumann_oval --a 1 --z 0.5,0 --w 0.5,0.25");
  ASSERT_EQ(e.status, 0) << e.output;
  auto j = json::parse(e.output);
  EXPECT_EQ(j["family"], "neumann_oval");
  EXPECT_LT(j["boundary_residual"].get<double>(), 1e-12);
}
