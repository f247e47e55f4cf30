#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fracdual {

using Complex = std::complex<double>;

// Spatial point in dimension n <= 3.  Fixed capacity avoids heap traffic in
// quadrature inner loops; runtime size() carries the active dimension.
using SpatialVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

inline SpatialVec spatial_zero(int dim) { return SpatialVec::Zero(dim); }

inline SpatialVec spatial_point(std::initializer_list<double> coords) {
  SpatialVec x(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) x[i++] = c;
  return x;
}

/// Which one-sided fractional time derivative: left integrates over the past
/// (t - tau > 0), right over the future.
enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// How integrals over unbounded regions handle mass beyond the far cutoff.
enum class TailModel {
  zero_beyond,              ///< truncate: assume the integrand is dead past the cutoff
  algebraic_extrapolation,  ///< fit an algebraic decay model and integrate it analytically
};

enum class EvalStatus {
  ok,           ///< absolutely convergent, error estimate trustworthy
  conditional,  ///< value exists only as a symmetric/principal-value limit
  warning,      ///< computed, but a resolution or truncation heuristic fired
};

/// Value + accuracy accounting for a single pointwise operator evaluation.
struct EvalResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;  ///< absolute error estimate (quadrature + truncation)
  EvalStatus status = EvalStatus::ok;
  std::string note;  ///< human-readable detail when status != ok
};

/// Parameter outside its admissible range (alpha, s, dimension, grid shape...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested integral provably or empirically diverges.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature failed to reach the requested accuracy within its budget.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A least-squares fit has no usable signal (e.g. all samples underflowed).
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fracdual
