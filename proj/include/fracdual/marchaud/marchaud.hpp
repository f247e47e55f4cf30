#pragma once

#include "fracdual/core/params.hpp"
#include "fracdual/core/test_function.hpp"
#include "fracdual/core/types.hpp"

namespace fracdual {

/// Controls for the one-sided fractional time derivative quadrature.
struct TimeQuadrature {
  double near_cut = 1e-3;  ///< lag below which the difference is Taylor-expanded
  double far_cut = 64.0;   ///< baseline truncation lag for slowly decaying classes
  int near_order = 2;      ///< Taylor terms kept under the near cut (1 or 2)
  TailModel tail_model = TailModel::zero_beyond;
  bool fixed_panels = false;  ///< deterministic composite rule instead of adaptive
  /// >0: clamp the truncation lag to at least this value.  Grid sweeps set it
  /// to the maximum lag any sampled time needs, so the panel layout (and hence
  /// the quadrature error) varies smoothly across the grid.
  double fixed_truncation = 0.0;
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;

  void validate() const {
    if (!(near_cut > 0.0) || !(far_cut > near_cut))
      throw DomainError("TimeQuadrature: need 0 < near_cut < far_cut");
    if (near_order != 1 && near_order != 2)
      throw DomainError("TimeQuadrature: near_order must be 1 or 2");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw DomainError("TimeQuadrature: tolerances must be positive");
  }
};

/// Fourier symbol of the one-sided derivative:
///   left  -> (i rho)^alpha  = |rho|^alpha exp(+i alpha (pi/2) sign(rho))
///   right -> (-i rho)^alpha = |rho|^alpha exp(-i alpha (pi/2) sign(rho))
Complex time_symbol(double rho, double alpha, Side side);

/// One-sided Marchaud derivative of a 1-D time profile at time t:
///   D u(t) = C_alpha * int_0^inf (u(t) - u(t -/+ sigma)) sigma^(-1-alpha) d sigma
/// (minus for left, plus for right).  Throws DivergenceError when the profile
/// grows too fast into the integration ray.
EvalResult marchaud(const TimeLine& u, double t, Side side,
                    const FractionalParams& p, const TimeQuadrature& q = {});

/// Largest truncation lag the evaluator would use for this line at time t;
/// grid sweeps take the max over their samples and pin fixed_truncation to it.
double marchaud_truncation(const TimeLine& u, double t, Side side,
                           const FractionalParams& p, const TimeQuadrature& q = {});

EvalResult marchaud_left(const TestFunction& u, const SpatialVec& x, double t,
                         const FractionalParams& p, const TimeQuadrature& q = {});
EvalResult marchaud_right(const TestFunction& u, const SpatialVec& x, double t,
                          const FractionalParams& p, const TimeQuadrature& q = {});

}  // namespace fracdual
