// Acceptance runner: each criterion is a bundle of verification groups. Prints every check
// and then one PASS/FAIL line per criterion; exits nonzero when any requested criterion fails.

#include <chrono>
#include <cstring>
#include <iostream>
#include <map>

#include "torsion/verify.hpp"

namespace {

struct Criterion {
  const char* title;
  std::vector<std::string> groups;
  /// wall-clock budget in seconds
  double budget;
};

const std::map<int, Criterion>& criteria() {
  static const std::map<int, Criterion> c{
      {1, {"exact rational values and the Szego worked example", {"exact", "opuc"}, 1}},
      {2, {"reference series values", {"series"}, 10}},
      {3, {"rho_12 / R(a) - 1 in (0, 0.005) on the area-one rectangle", {"rectangle"}, 600}},
      {4, {"house(1/2) endpoint and lower/upper sandwich", {"house", "sandwich"}, 600}},
      {5, {"right-triangle argmax bracket", {"right_triangle"}, 1800}},
      {6, {"conformal series against closed forms", {"conformal"}, 600}},
      {7, {"property suites", {"properties"}, 600}},
      {8, {"geometric convergence on Neumann's oval", {"convergence"}, 600}},
  };
  return c;
}

bool run(int k) {
  const Criterion& c = criteria().at(k);
  auto t0 = std::chrono::steady_clock::now();
  torsion::CheckList checks = torsion::run_checks(c.groups);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = !checks.empty();
  for (const auto& check : checks) {
    std::cout << "  " << torsion::format_check(check) << '\n';
    ok = ok && check.pass;
  }
  bool in_time = secs <= c.budget;
  std::cout << "  runtime " << secs << " s (budget " << c.budget << " s)" << (in_time ? "" : " EXCEEDED") << '\n';
  ok = ok && in_time;
  std::cout << "criterion " << k << " (" << c.title << "): " << (ok ? "PASS" : "FAIL") << std::endl;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion K]...\n";
      return 2;
    }
  }
  if (which.empty()) {
    for (const auto& [k, c] : criteria()) which.push_back(k);
  }
  bool all = true;
  for (int k : which) {
    if (!criteria().count(k)) {
      std::cerr << "unknown criterion " << k << '\n';
      return 2;
    }
    all = run(k) && all;
  }
  return all ? 0 : 1;
}
