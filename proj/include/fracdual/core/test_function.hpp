#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fracdual/core/types.hpp"

namespace fracdual {

/// Qualitative decay of one factor along its own axis; evaluators pick the
/// truncation point and tail treatment from this.
enum class TailKind {
  gaussian,         ///< superexponential about center `a` with width scale `b`
  compact,          ///< identically zero outside [a, b] (radius b about 0 in space)
  exp_rate,         ///< proportional to exp(a * t)
  wave,             ///< unimodular oscillation, frequency a (space: vector in vec)
  poly,             ///< ~ |argument|^a at infinity (a < 0: algebraic decay)
  constant,         ///< no decay, no variation at infinity
  history_compact,  ///< zero for t < a, algebraically decaying as t -> +inf
};

struct TailInfo {
  TailKind kind = TailKind::constant;
  double a = 0.0;
  double b = 0.0;
  std::array<double, 3> vec{0.0, 0.0, 0.0};  ///< wave vector for spatial waves
};

/// One temporal factor: value and first two derivatives, plus tail class.
struct TemporalProfile {
  std::function<Complex(double)> value;
  std::function<Complex(double)> d1;
  std::function<Complex(double)> d2;
  TailInfo tail;
};

/// One spatial factor: value, gradient component, Hessian component.
struct SpatialProfile {
  std::function<Complex(const SpatialVec&)> value;
  std::function<Complex(const SpatialVec&, int)> d1;
  std::function<Complex(const SpatialVec&, int, int)> d2;
  TailInfo tail;
};

/// coeff * space(x) * time(t) — every built-in field is a sum of these.
struct ProductTerm {
  Complex coeff{1.0, 0.0};
  SpatialProfile space;
  TemporalProfile time;
};

enum class DecayClass { schwartz, bump, plane_wave, exponential, polynomial, constant };

/// A smooth space-time field u(x, t) given in closed form, with enough
/// derivative and tail information for the nonlocal evaluators to integrate
/// it over unbounded regions.
class TestFunction {
 public:
  std::string name;
  int dim = 1;
  DecayClass decay_class = DecayClass::schwartz;
  std::vector<ProductTerm> terms;
  std::map<std::string, double> params;

  Complex eval(const SpatialVec& x, double t) const;

  /// Mixed derivative d^gamma_x d^beta_t u with |gamma| <= 2 and beta <= 2.
  /// Throws DomainError if a factor has no derivative data.
  Complex deriv(const SpatialVec& x, double t, const std::array<int, 3>& gamma,
                int beta) const;
};

/// Restriction t -> u(x0, t): a weighted list of temporal factors.
class TimeLine {
 public:
  struct Part {
    Complex coeff;
    TemporalProfile prof;
  };
  std::vector<Part> parts;

  Complex value(double t) const;
  Complex d1(double t) const;
  Complex d2(double t) const;
};

/// Restriction x -> u(x, t0): a weighted list of spatial factors.
class SpaceLine {
 public:
  struct Part {
    Complex coeff;
    SpatialProfile prof;
  };
  std::vector<Part> parts;
  int dim = 1;

  Complex value(const SpatialVec& x) const;
  /// omega^T Hess(u)(x) omega for a unit direction omega.
  Complex hess_quad(const SpatialVec& x, const SpatialVec& omega) const;
  Complex laplacian(const SpatialVec& x) const;
};

TimeLine time_line(const TestFunction& u, const SpatialVec& x0);
SpaceLine space_line(const TestFunction& u, double t0);

// ---- C-infinity ramp/bump primitives (closed-form derivatives) ----

/// h(u) = exp(-1/u) for u > 0, else 0; the standard mollifier seed.
double mollifier_h(double u);

/// Smooth step S: 0 for u <= 0, 1 for u >= 1, strictly increasing between.
double smooth_step(double u);
double smooth_step_d1(double u);
double smooth_step_d2(double u);

/// Smooth bump on (0, 1), normalized to peak value 1 at u = 1/2.
double smooth_bump01(double u);
double smooth_bump01_d1(double u);
double smooth_bump01_d2(double u);

// ---- Built-in fields ----

TestFunction make_constant(int n, Complex c = Complex{1.0, 0.0});
/// u(x, t) = x_1 (grows linearly along the first axis).
TestFunction make_affine_x1(int n);
/// exp(-|x - cx|^2 / (2 wx^2)) * exp(-(t - ct)^2 / (2 wt^2)).
TestFunction make_gaussian(int n, double width_x = 1.0, double width_t = 1.0,
                           const SpatialVec& center_x = SpatialVec(),
                           double center_t = 0.0);
/// Cutoff product: eta(x) * phi(t) with eta = -1 on |x| <= 1, 0 for |x| >= 2,
/// and phi = 1 on |t| <= 1, 0 for |t| >= 2 (both C-infinity ramps).
TestFunction make_cutoff_product(int n);
/// Smooth time bump supported on [lo, hi], constant in space.
TestFunction make_time_bump(int n, double lo, double hi);
/// exp(i xi . x) * exp(i rho t).
TestFunction make_plane_wave(int n, const SpatialVec& xi, double rho);
/// exp(lambda t), constant in space.
TestFunction make_exponential(int n, double lambda);
/// t^2, constant in space (grows polynomially in time).
TestFunction make_poly_t2(int n);
/// 1 / (1 + |x|^2), constant in time (algebraic spatial decay).
TestFunction make_inv_quadratic(int n);
/// |x|^(1/2): value only, derivatives unavailable (kink at the origin).
TestFunction make_sqrt_radial(int n);
/// |x|^2, constant in time (grows quadratically in space).
TestFunction make_quadratic_radial(int n);

/// CLI registry: constant, zero, affine, gaussian, cutoff, bump, planewave,
/// exponential, invquad.  Throws DomainError for unknown names.
TestFunction make_by_name(const std::string& name, int n);
std::vector<std::string> builtin_names();

}  // namespace fracdual
