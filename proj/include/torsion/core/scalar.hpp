#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "torsion/core/errors.hpp"

namespace torsion {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
/// Variable-precision binary float; precision is set per scope with `precision_scope`.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
concept Field = std::is_same_v<T, Rational> || std::is_same_v<T, Real> || std::is_same_v<T, double>;

template <class T>
concept Inexact = Field<T> && !is_exact_v<T>;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kMaxPrecisionBits = 4096;

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::floor(bits * 0.30102999566398120));
}

/// Binary precision (bits) a freshly constructed Real gets right now.
inline unsigned working_bits() {
  Real probe(0);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

/// Sets the default Real precision for the lifetime of the scope.
/// The default is process-global: do not change it while other threads compute.
class precision_scope {
 public:
  explicit precision_scope(unsigned bits) : saved_(Real::default_precision()), bits_(bits) {
    unsigned d = digits10_for_bits(bits);
    Real::default_precision(d);
    while (working_bits() < bits) Real::default_precision(++d);
  }
  ~precision_scope() { Real::default_precision(saved_); }
  precision_scope(const precision_scope&) = delete;
  precision_scope& operator=(const precision_scope&) = delete;

  unsigned bits() const { return bits_; }

 private:
  unsigned saved_;
  unsigned bits_;
};

template <Field T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<T, Real>) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
  } else {
    return q.template convert_to<double>();
  }
}

template <Field T>
T from_int(long long v) {
  return T(v);
}

template <Field T>
double to_double(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return v.template convert_to<double>();
  }
}

template <Field T>
Real to_real(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return from_rational<Real>(v);
  } else {
    return Real(v);
  }
}

template <Inexact T>
T pi() {
  return boost::math::constants::pi<T>();
}

/// Relative tolerance 2^(-bits/2): half the working bits are budgeted to conditioning.
template <Inexact T>
T half_precision_tolerance() {
  if constexpr (std::is_same_v<T, double>) {
    return std::ldexp(1.0, -26);
  } else {
    Real t(1);
    return ldexp(t, -static_cast<int>(working_bits() / 2));
  }
}

/// Zero test: exact for rationals, |v| <= tol otherwise.
template <Field T>
bool is_negligible(const T& v, const T& tol) {
  using std::abs;
  if constexpr (is_exact_v<T>) {
    return v == 0;
  } else {
    return abs(v) <= tol;
  }
}

inline bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

/// Parses "p", "p/q", or a decimal such as "-1.25e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw torsion_error(errc::invalid_spec, "empty number");
  auto bad = [&] { return torsion_error(errc::invalid_spec, "not a rational number: '" + s + "'"); };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw torsion_error(errc::invalid_spec, "zero denominator in '" + s + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw bad();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw bad();
    ++pos;
    std::size_t used = 0;
    long long exponent = 0;
    try {
      exponent = std::stoll(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + used != s.size()) throw bad();
    scale += exponent;
  }
  // a leading zero would make GMP read the digits as octal
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value{Integer(digits)};
  Integer ten_pow = mp::pow(Integer(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    value /= Rational(ten_pow);
  } else {
    value *= Rational(ten_pow);
  }
  return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

/// Fixed significant-digit rendering so output is byte-stable at a given precision.
inline std::string to_string(const Real& v, int digits = 20) {
  return v.str(digits, std::ios_base::scientific);
}

inline std::string to_string(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, v);
  return buf;
}

/// Decimal rendering of any field value.
template <Field T>
std::string decimal_string(const T& v, int digits = 20) {
  if constexpr (std::is_same_v<T, Rational>) {
    precision_scope scope(static_cast<unsigned>(digits * 3.33) + 64);
    return to_string(from_rational<Real>(v), digits);
  } else if constexpr (std::is_same_v<T, Real>) {
    return to_string(v, digits);
  } else {
    return to_string(v, digits > 17 ? 17 : digits);
  }
}

}  // namespace torsion
