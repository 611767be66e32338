#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "torsion/core/polynomial.hpp"

namespace torsion {

/// Verblunsky coefficients alpha_0, ..., alpha_{n-1}.
template <Field T>
using VerblunskySequence = std::vector<Complex<T>>;

/// Reversed polynomial p*(z) = z^n conj(p(1/conj z)) relative to degree n.
template <Field T>
Polynomial<T> star(const Polynomial<T>& p, int n) {
  if (p.degree() > n) throw torsion_error(errc::precondition, "star degree below polynomial degree");
  std::vector<Complex<T>> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = p[static_cast<std::size_t>(n - k)].conj();
  return Polynomial<T>(std::move(c));
}

template <Field T>
void check_verblunsky(const VerblunskySequence<T>& alphas) {
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k].norm() < T(1))) {
      throw torsion_error(errc::invalid_coefficient, "Verblunsky coefficient " + std::to_string(k) +
                                                         " has modulus >= 1");
    }
  }
}

/// Phi_0 .. Phi_n from Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k^*.
template <Field T>
std::vector<Polynomial<T>> szego_forward_all(const VerblunskySequence<T>& alphas) {
  check_verblunsky(alphas);
  std::vector<Polynomial<T>> phi{Polynomial<T>{Complex<T>(T(1))}};
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const Polynomial<T>& cur = phi.back();
    phi.push_back(cur.times_z() - star(cur, static_cast<int>(k)) * alphas[k].conj());
  }
  return phi;
}

template <Field T>
Polynomial<T> szego_forward(const VerblunskySequence<T>& alphas) {
  return szego_forward_all(alphas).back();
}

template <Field T>
struct InverseSzego {
  VerblunskySequence<T> alphas;
  /// Phi_0 .. Phi_{n-1}
  std::vector<Polynomial<T>> phis;
};

/// Downward recursion alpha_k = -conj(Phi_{k+1}(0)),
///   Phi_k = (Phi_{k+1} + conj(alpha_k) Phi_{k+1}^*) / (z (1 - |alpha_k|^2)).
/// The numerator's constant term cancels identically; a surviving remainder means the input
/// was not produced by the forward recursion.
template <Field T>
InverseSzego<T> szego_inverse(const Polynomial<T>& phi_n) {
  const int n = phi_n.degree();
  if (n < 0) throw torsion_error(errc::not_opuc, "zero polynomial");
  if (!(phi_n.leading() == Complex<T>(T(1)))) {
    throw torsion_error(errc::not_opuc, "polynomial is not monic");
  }
  InverseSzego<T> out;
  out.alphas.resize(static_cast<std::size_t>(n));
  out.phis.resize(static_cast<std::size_t>(n));
  Polynomial<T> cur = phi_n;
  cur.trim();
  for (int k = n - 1; k >= 0; --k) {
    Complex<T> alpha = -cur[0].conj();
    T one_minus = T(1) - alpha.norm();
    if (!(one_minus > 0)) {
      throw torsion_error(errc::not_opuc, "Verblunsky coefficient " + std::to_string(k) + " has modulus >= 1");
    }
    Polynomial<T> num = cur + star(cur, k + 1) * alpha.conj();
    if constexpr (is_exact_v<T>) {
      if (!num[0].is_zero()) throw torsion_error(errc::inconsistency, "inverse Szego step leaves a remainder");
    } else {
      if (abs(num[0]) > half_precision_tolerance<T>() * (T(1) + abs(cur[0]))) {
        throw torsion_error(errc::inconsistency, "inverse Szego step leaves a remainder");
      }
    }
    std::vector<Complex<T>> c(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) c[j] = num[static_cast<std::size_t>(j) + 1] / one_minus;
    c[k] = Complex<T>(T(1));  // exact monic normalization
    cur = Polynomial<T>(std::move(c));
    out.alphas[k] = alpha;
    out.phis[k] = cur;
  }
  return out;
}

/// Psi_n: the forward recursion run on -alpha.
template <Field T>
Polynomial<T> second_kind(const VerblunskySequence<T>& alphas) {
  VerblunskySequence<T> neg;
  neg.reserve(alphas.size());
  for (const auto& a : alphas) neg.push_back(-a);
  return szego_forward(neg);
}

/// Carathéodory function of |p(e^{i theta})|^{-2} d theta / 2 pi, where p = s q with s > 0
/// and s^2 = scale_squared.
template <Field T>
struct ReciprocalPolyHerglotz {
  Polynomial<T> phi;  ///< Phi_n = q* / lead(q*)
  InverseSzego<T> inverse;
  Polynomial<T> psi;  ///< second-kind Psi_n
  /// F = Psi_n^* / Phi_n^*
  RationalFunction<T> F;
  /// s^2 that makes the measure a probability measure
  T normalizing_scale_squared;
  T scale_squared;
  /// total mass with the scale in use
  T mass;
};

/// Builds F for psi = sqrt(2)/p. For Bernstein-Szego measures the mass of
/// |q|^{-2} d theta / 2 pi is 1 / (|q(0)|^2 prod_k (1 - |alpha_k|^2)), so normalization is
/// checked exactly over the rationals. A zero of q in the closed disk shows up as an
/// inverse-recursion coefficient of modulus >= 1.
template <Field T>
ReciprocalPolyHerglotz<T> herglotz_from_reciprocal_poly(const Polynomial<T>& shape,
                                                          std::optional<T> scale_squared = std::nullopt) {
  Polynomial<T> q = shape;
  q.trim();
  const int n = q.degree();
  if (n < 0) throw torsion_error(errc::invalid_map, "p is the zero polynomial");
  if (q[0].is_zero()) throw torsion_error(errc::invalid_map, "p vanishes at the origin");
  if (scale_squared && !(*scale_squared > 0)) throw torsion_error(errc::invalid_map, "scale must be positive");

  ReciprocalPolyHerglotz<T> out;
  Polynomial<T> qs = star(q, n);
  out.phi = qs / qs[static_cast<std::size_t>(n)];
  out.phi.at(static_cast<std::size_t>(n)) = Complex<T>(T(1));
  try {
    out.inverse = szego_inverse(out.phi);
  } catch (const torsion_error& e) {
    if (e.code() == errc::not_opuc) {
      throw torsion_error(errc::invalid_map, "p has a zero in the closed unit disk");
    }
    throw;
  }
  out.psi = second_kind(out.inverse.alphas);

  T prod(1);
  for (const auto& a : out.inverse.alphas) prod *= T(1) - a.norm();
  out.normalizing_scale_squared = T(1) / (q[0].norm() * prod);
  out.scale_squared = scale_squared ? *scale_squared : out.normalizing_scale_squared;
  out.mass = out.normalizing_scale_squared / out.scale_squared;

  bool normalized;
  if constexpr (is_exact_v<T>) {
    normalized = out.mass == 1;
  } else {
    using std::abs;
    normalized = abs(out.mass - 1) <= half_precision_tolerance<T>();
  }
  if (!normalized) {
    throw torsion_error(errc::normalization, "measure has mass " + decimal_string(out.mass, 12) + ", expected 1");
  }
  out.F = RationalFunction<T>{star(out.psi, n), star(out.phi, n)};
  return out;
}

/// Minimum of Re F over a polar grid of the disk |z| <= radius.
template <Field T>
double herglotz_min_real_part(const RationalFunction<T>& F, double radius = 0.95, int rings = 20, int spokes = 64) {
  double worst = std::numeric_limits<double>::infinity();
  auto num = convert<double>(F.numerator);
  auto den = convert<double>(F.denominator);
  for (int r = 0; r <= rings; ++r) {
    double rad = radius * r / rings;
    for (int s = 0; s < spokes; ++s) {
      double t = 2 * M_PI * s / spokes;
      Complex<double> z(rad * std::cos(t), rad * std::sin(t));
      double re = (num(z) / den(z)).re;
      worst = std::min(worst, re);
      if (r == 0) break;
    }
  }
  return worst;
}

}  // namespace torsion
