#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "fracdual/core/grid.hpp"
#include "fracdual/core/params.hpp"
#include "fracdual/core/test_function.hpp"
#include "fracdual/fraclap/fraclap.hpp"
#include "fracdual/marchaud/marchaud.hpp"
#include "fracdual/report/report.hpp"

namespace fracdual {

/// Weighted integrability classes: space-time, space-only (t = 0 slice), and
/// the one-sided past-history class on t <= 0.
enum class WeightedSpace { L_2s_alpha, L_2s, L_alpha };

enum class Verdict { finite, infinite, inconclusive };

const char* weighted_space_name(WeightedSpace s);
const char* verdict_name(Verdict v);

/// Truncated weighted integrals over growing boxes, with a trend-fitted
/// verdict.  Finiteness of an improper integral cannot be proven by any
/// finite computation, so the inconclusive state is a first-class outcome.
struct MembershipReport {
  WeightedSpace space = WeightedSpace::L_2s_alpha;
  std::vector<std::pair<double, double>> truncated_values;  ///< (cutoff, integral)
  Verdict verdict = Verdict::inconclusive;
  double extrapolated_limit = 0.0;  ///< meaningful only when verdict == finite
  double growth_exponent = 0.0;     ///< fitted increment slope, log2 per doubling
  std::string note;
};

/// Integrates |u| against the weight 1 / ((1 + |x|^(n+2s)) (1 + |t|^(1+alpha)))
/// (or the single-axis restriction the space calls for) over boxes of radius
/// cutoffs[i], then classifies the increment trend: geometric decay => finite
/// (with extrapolated limit), positive fitted growth => infinite, otherwise
/// inconclusive.
MembershipReport weighted_norm(const TestFunction& u, WeightedSpace space,
                               const FractionalParams& p,
                               const std::vector<double>& cutoffs = {});

/// Weighted supremum scan for one derivative order: shell-by-shell maxima of
/// (1 + |x|^(n+2s)) (1 + |t|^(1+alpha)) |d^gamma_x d^beta_t phi|.
struct SeminormScan {
  double value = 0.0;  ///< sampled supremum over the grid and all shells
  std::vector<std::pair<double, double>> shell_maxima;  ///< (radius, weighted max)
  bool bounded = true;  ///< false when the shell maxima keep growing outward
};

SeminormScan seminorm_scan(const TestFunction& phi, const std::array<int, 3>& gamma_idx,
                           int beta_idx, const FractionalParams& p,
                           const SpaceTimeGrid& grid);

/// Sampled supremum only (the scan's value field).
double seminorm(const TestFunction& phi, const std::array<int, 3>& gamma_idx,
                int beta_idx, const FractionalParams& p, const SpaceTimeGrid& grid);

/// Shell minima of u(x, t_slice) / |x|^gamma: a sampled *estimate* of the
/// one-sided asymptotic sign hypothesis.  Finite sampling cannot certify a
/// liminf, so this reports data and a trend, never a verdict.
struct GammaEstimateReport {
  double gamma = 0.0;
  double t_slice = 0.0;
  std::vector<std::pair<double, double>> shell_minima;  ///< (radius, min ratio)
  double final_min = 0.0;  ///< minimum on the outermost shell
  std::string note;
};

GammaEstimateReport asymptotic_gamma_estimate(const TestFunction& u, double gamma,
                                              double t_slice,
                                              const std::vector<double>& shells);

/// Aggregated rigidity evidence for the configured (alpha, s, n):
///   (a) the operator annihilates constants, and the affine coordinate when
///       the space order exceeds 1/2;
///   (b) the combined symbol vanishes only at the frequency origin;
///   (c) sampled constant / affine fields classify as origin-concentrated /
///       line-confined in frequency;
///   (d) weighted-space membership matches the case split at s = 1/2.
VerificationReport liouville_harness(const FractionalParams& p,
                                     const SpaceTimeGrid& grid,
                                     const TimeQuadrature& tq = {},
                                     const SpaceQuadrature& sq = {});

}  // namespace fracdual
