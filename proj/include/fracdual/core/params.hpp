#pragma once

#include "fracdual/core/gamma.hpp"
#include "fracdual/core/types.hpp"

#include <cmath>

namespace fracdual {

/// Orders and normalization constants for the operator pair
/// d_t^alpha + (-Laplace)^s in dimension n.
///
/// The constants make the pointwise integral definitions match the Fourier
/// symbols (i rho)^alpha resp. |xi|^(2s) exactly:
///   C_alpha = 1 / |Gamma(-alpha)|     (Marchaud difference kernel)
///   c_alpha = 1 / Gamma(alpha)        (fractional integral kernel)
///   C_ns    = 4^s Gamma(n/2 + s) / (pi^(n/2) |Gamma(-s)|)
struct FractionalParams {
  double alpha = 0.5;  ///< time order, 0 < alpha < 1
  double s = 0.5;      ///< space order, 0 < s < 1
  int n = 1;           ///< spatial dimension, 1..3
  double C_alpha = 0.0;
  double c_alpha = 0.0;
  double C_ns = 0.0;
};

/// Validates (alpha, s, n) and fills in the normalization constants.
/// Throws DomainError outside 0 < alpha < 1, 0 < s < 1, n in {1, 2, 3}.
inline FractionalParams make_params(double alpha, double s, int n) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("make_params: alpha must lie in (0, 1), got " + std::to_string(alpha));
  if (!(s > 0.0) || !(s < 1.0))
    throw DomainError("make_params: s must lie in (0, 1), got " + std::to_string(s));
  if (n < 1 || n > 3)
    throw DomainError("make_params: dimension n must be 1, 2, or 3, got " + std::to_string(n));

  FractionalParams p;
  p.alpha = alpha;
  p.s = s;
  p.n = n;
  p.C_alpha = 1.0 / std::abs(gamma_fn(-alpha));
  p.c_alpha = 1.0 / gamma_fn(alpha);
  p.C_ns = std::pow(4.0, s) * gamma_fn(0.5 * n + s) /
           (std::pow(M_PI, 0.5 * n) * std::abs(gamma_fn(-s)));
  return p;
}

/// Surface measure of the unit sphere S^(n-1): 2, 2*pi, 4*pi for n = 1, 2, 3.
inline double sphere_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    default: throw DomainError("sphere_measure: n must be 1, 2, or 3");
  }
}

}  // namespace fracdual
