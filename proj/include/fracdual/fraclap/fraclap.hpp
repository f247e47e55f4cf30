#pragma once

#include "fracdual/core/grid.hpp"
#include "fracdual/core/params.hpp"
#include "fracdual/core/test_function.hpp"
#include "fracdual/core/types.hpp"

namespace fracdual {

/// Controls for the direct (singular-integral) fractional Laplacian.
struct SpaceQuadrature {
  double near_cut = 1e-3;  ///< radius below which the second difference is Taylor-expanded
  double far_cut = 64.0;   ///< baseline truncation radius for slowly decaying profiles
  int angular_nodes = 32;  ///< sphere rule size for n >= 2 (>= 16)
  TailModel tail_model = TailModel::zero_beyond;
  bool fixed_panels = false;
  double fixed_truncation = 0.0;  ///< >0: clamp truncation radius (grid sweeps)
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;

  void validate() const {
    if (!(near_cut > 0.0) || !(far_cut > near_cut))
      throw DomainError("SpaceQuadrature: need 0 < near_cut < far_cut");
    if (angular_nodes < 16)
      throw DomainError("SpaceQuadrature: angular_nodes must be >= 16");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw DomainError("SpaceQuadrature: tolerances must be positive");
  }
};

/// (-Laplace)^s u(x) in the symmetrized second-difference form
///   (C_ns / 2) int_{R^n} (2u(x) - u(x+z) - u(x-z)) |z|^(-n-2s) dz,
/// integrated in polar form: sphere rule x geometric radial panels, Taylor
/// zone under near_cut, per-decay-class tails beyond the truncation radius.
EvalResult frac_laplacian(const SpaceLine& u, const SpatialVec& x,
                          const FractionalParams& p, const SpaceQuadrature& q = {});

/// Largest truncation radius the evaluator would use at x (for grid sweeps).
double fraclap_truncation(const SpaceLine& u, const SpatialVec& x,
                          const FractionalParams& p, const SpaceQuadrature& q = {});

EvalResult frac_laplacian_direct(const TestFunction& u, const SpatialVec& x,
                                 double t, const FractionalParams& p,
                                 const SpaceQuadrature& q = {});

/// Spectral route on the periodic grid: multiply the centered space-time
/// transform by |xi|^(2s) and invert.  Rejects fields whose samples are not
/// grid-periodic (boundary-shell mass + high-frequency mass both large);
/// flags marginal aliasing through the optional status/note out-params.
SampledField frac_laplacian_spectral(const SampledField& f, const FractionalParams& p,
                                     EvalStatus* status = nullptr,
                                     std::string* note = nullptr);

}  // namespace fracdual
