#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsion/core/scalar.hpp"

namespace torsion {

enum class BoundDirection { upper, lower, exact };

inline const char* bound_name(BoundDirection b) {
  switch (b) {
    case BoundDirection::upper: return "upper";
    case BoundDirection::lower: return "lower";
    default: return "exact";
  }
}

enum class Method { moment, conformal, lower, series, closed_form };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::moment: return "moment";
    case Method::conformal: return "conformal";
    case Method::lower: return "lower";
    case Method::series: return "series";
    default: return "closed_form";
  }
}

/// One torsional-rigidity value with its provenance.
/// `exact` bounds are exact up to the reported truncation tail.
struct RigidityEstimate {
  Real value;
  /// present when the value was computed in exact rational arithmetic
  std::optional<Rational> exact_value;
  BoundDirection bound = BoundDirection::exact;
  Method method = Method::moment;
  /// polynomial degree N, Taylor truncation M, or series cap, depending on the method
  int order = 0;
  /// truncation tail bound or estimate; zero when the method has none
  double tail = 0;
  /// zero for exact arithmetic
  unsigned precision_bits = 0;
  /// non-fatal observations, such as a boundary residual above tolerance
  std::vector<std::string> flags;
};

}  // namespace torsion
