#pragma once

#include <string>

#include "fracdual/core/grid.hpp"
#include "fracdual/core/params.hpp"
#include "fracdual/core/test_function.hpp"
#include "fracdual/core/types.hpp"
#include "fracdual/fraclap/fraclap.hpp"
#include "fracdual/marchaud/marchaud.hpp"

namespace fracdual {

/// Returns the more severe of two evaluation statuses (ok < conditional < warning).
EvalStatus worse_status(EvalStatus a, EvalStatus b);

/// Combined nonlocal operator: one-sided fractional time derivative plus
/// fractional Laplacian.  Error estimates add; status is the worse component.
EvalResult dual_apply(const TestFunction& u, const SpatialVec& x, double t,
                      Side side, const FractionalParams& p,
                      const TimeQuadrature& tq = {},
                      const SpaceQuadrature& sq = {});

/// Result of sweeping the combined operator over a space-time grid.
struct GridOperatorField {
  SampledField field;
  double max_err = 0.0;             ///< bound on the pointwise quadrature error
  EvalStatus status = EvalStatus::ok;
  std::string note;

  explicit GridOperatorField(const SpaceTimeGrid& g) : field(g) {}
};

/// Applies the combined operator at every grid node.  Works term by term
/// through the product structure of the test functions: a term S(x)g(t)
/// contributes S(x)*(Dg)(t) + g(t)*(LS)(x), so the sweep costs M time-derivative
/// evaluations plus N^n Laplacian evaluations per term instead of M*N^n
/// combined calls.  Truncation radii are pinned to the largest value any node
/// needs and composite panels replace adaptive refinement, so the quadrature
/// error varies smoothly across the grid (no refinement jitter in the output).
GridOperatorField sample_dual_on_grid(const TestFunction& u, Side side,
                                      const FractionalParams& p,
                                      const SpaceTimeGrid& grid,
                                      const TimeQuadrature& tq = {},
                                      const SpaceQuadrature& sq = {});

}  // namespace fracdual
