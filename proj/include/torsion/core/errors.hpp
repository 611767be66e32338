#pragma once

#include <stdexcept>
#include <string>

namespace torsion {

enum class errc {
  invalid_spec,
  unsupported_variant,
  degenerate_region,
  domain_error,
  inexact_parameter,
  precision_exhausted,
  invalid_coefficient,
  not_opuc,
  inconsistency,
  invalid_map,
  normalization,
  invalid_parameters,
  precondition,
  degenerate_trial,
  internal,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_spec: return "invalid-spec";
    case errc::unsupported_variant: return "unsupported-variant";
    case errc::degenerate_region: return "degenerate-region";
    case errc::domain_error: return "domain-error";
    case errc::inexact_parameter: return "inexact-parameter";
    case errc::precision_exhausted: return "precision-exhausted";
    case errc::invalid_coefficient: return "invalid-coefficient";
    case errc::not_opuc: return "not-an-opuc-polynomial";
    case errc::inconsistency: return "inconsistency";
    case errc::invalid_map: return "invalid-map";
    case errc::normalization: return "normalization";
    case errc::invalid_parameters: return "invalid-parameters";
    case errc::precondition: return "precondition";
    case errc::degenerate_trial: return "degenerate-trial";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class torsion_error : public std::runtime_error {
 public:
  torsion_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Raised when a Gram pivot or determinant is lost to rounding; callers retry at higher precision.
class precision_exhausted : public torsion_error {
 public:
  precision_exhausted(int degree, const std::string& what)
      : torsion_error(errc::precision_exhausted, what + " (degree " + std::to_string(degree) + ")"),
        degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

/// CLI exit codes: 2 invalid spec, 3 precision exhausted, 4 invalid parameters, 1 otherwise.
inline int exit_code(errc code) {
  switch (code) {
    case errc::invalid_spec:
    case errc::unsupported_variant:
    case errc::inexact_parameter:
      return 2;
    case errc::precision_exhausted:
      return 3;
    case errc::invalid_parameters:
    case errc::domain_error:
    case errc::degenerate_region:
    case errc::invalid_map:
    case errc::normalization:
      return 4;
    default:
      return 1;
  }
}

}  // namespace torsion
