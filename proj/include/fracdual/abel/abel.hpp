#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracdual/core/params.hpp"
#include "fracdual/core/test_function.hpp"
#include "fracdual/marchaud/marchaud.hpp"
#include "fracdual/report/report.hpp"

namespace fracdual {

/// One-sided evolution problem with prescribed past: find w on (a, T] with
/// D_left^alpha w = rhs there, given w = history on (-inf, a].
struct HistoryProblem {
  std::function<double(double)> history;  ///< values for t <= a
  TailInfo history_tail;                  ///< decay of the history toward -inf
  std::function<double(double)> rhs;      ///< forcing on (a, T]
  double a = 0.0;
  double T = 1.0;
  int steps = 64;
  double alpha = 0.5;

  void validate() const;  ///< throws DomainError unless a < T, steps >= 8, 0 < alpha < 1
};

/// Marching-scheme output: w on the uniform grid a = t_0 < ... < t_steps = T,
/// with w(t_0) = history(a).
struct HistorySolution {
  std::vector<double> times;
  std::vector<double> values;
  double err_estimate = 0.0;  ///< max gap to the half-step rerun, over shared nodes
  double min_value = 0.0;
};

/// Growth-integral convolution u(t) = c_alpha * int_{-inf}^t f(tau)
/// (t - tau)^(alpha - 1) dtau.  The kernel endpoint is removed by the
/// substitution tau = t - w^(1/alpha); the unbounded history end is classified
/// from the integrand's own dyadic-window trend, so non-integrable inputs
/// (constant, slow algebraic decay, growth toward the past) raise
/// DivergenceError with the fitted growth rate.
EvalResult rl_integral(const TimeLine& f, double t, const FractionalParams& p,
                       const TimeQuadrature& q = {});

/// Same, restricting the field to the time axis at x = 0.
EvalResult rl_integral(const TestFunction& f, double t, const FractionalParams& p,
                       const TimeQuadrature& q = {});

/// u = I^alpha f as a TimeLine the one-sided derivative can consume: values and
/// derivatives are the integrals of the input's (differentiation commutes with
/// the convolution), and the tail records how the integral decays.  Throws
/// DomainError for inputs that are not integrable against the history kernel.
TimeLine integral_line(const TimeLine& f, const FractionalParams& p,
                       const TimeQuadrature& q = {});

/// Round trip D_left^alpha (I^alpha f) = f at each sample; the reconstructed
/// integral is differentiated numerically, so this exercises both evaluators.
VerificationReport verify_fftc(const TestFunction& f, const FractionalParams& p,
                               const std::vector<double>& t_samples,
                               const TimeQuadrature& q = {});

/// L1-type marching scheme with exact per-cell kernel weights (all
/// nonnegative, so the discrete problem inherits the one-sided maximum
/// principle) plus a quadrature tail over the prescribed history.
HistorySolution solve_history_ivp(const HistoryProblem& p);

/// Runs the marching scheme on a nonnegative history with zero forcing and
/// asserts the solution never dips below -1e-10.  With diagnostic = true the
/// preconditions are not enforced, so sign violations propagate into a
/// visible failing record instead of an error.
VerificationReport max_principle_check(const HistoryProblem& p, bool diagnostic = false);

/// Truncated-history integrals v_R(t) over an increasing cutoff list.
struct TruncationReport {
  std::vector<double> cutoffs;
  std::vector<double> values;
  bool monotone = true;          ///< nondecreasing within 1e-12 slack
  double growth_exponent = 0.0;  ///< fitted d log v / d log R when diverging
  bool diverges = false;
  double limit = 0.0;            ///< full integral when the input admits one
  VerificationReport report;
};

/// v_R(t) = c_alpha * int_{-R}^t f (t - tau)^(alpha-1) dtau for each R; f >= 0
/// required, so the sequence must be nondecreasing.  When f is integrable
/// against the kernel the sequence is also compared against rl_integral.
TruncationReport truncation_convergence(const TestFunction& f, double t,
                                        const FractionalParams& p,
                                        const std::vector<double>& R_list,
                                        const TimeQuadrature& q = {});

/// A field bounded below by bound_c2 > 0 has truncated growth integrals
/// growing like R^alpha, so no bounded one-sided-heat supersolution can stay
/// above a positive constant: the additive constant in the representation must
/// vanish.  Reports the fitted growth exponent against alpha (+/- 0.05).
VerificationReport c0_divergence_demo(const FractionalParams& p, double t,
                                      double threshold_c1, double bound_c2);

}  // namespace fracdual
