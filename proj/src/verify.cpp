#include "fracdual/dualop/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fracdual/core/fit.hpp"
#include "fracdual/core/quadrature.hpp"
#include "fracdual/dualop/fourier.hpp"

namespace fracdual {
namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Tail-corrected line transform.
//
// The operator output decays only algebraically (|t|^(-1-alpha) in time,
// |x|^(-n-2s) in space), so the plain box DFT misses an out-of-box
// contribution that does not shrink with the box: at low frequencies it is a
// few percent of the transform value.  The fix: fit a three-term algebraic
// model  f(t) ~ sum_q A_q |t|^(-(p+q)), q = 0..2,  to evaluator samples just
// outside the box on each side, then add the model's transform over the
// exterior lattice — summed node by node out to a stitch radius where
// frequency * radius >= 60, then continued by the integration-by-parts
// asymptotic series with a midpoint Euler-Maclaurin correction at the stitch.
// Summing over the *lattice* (not integrating) is deliberate: the DFT itself
// is a lattice sum, so lattice-tail plus box-DFT is the Poisson-consistent
// approximation of the continuum transform.
// ---------------------------------------------------------------------------

struct CorrectedTransform {
  Eigen::ArrayXcd values;        // K centered-frequency bins
  double model_err = 0.0;        // bound on the tail-model error
  double correction_scale = 0.0; // max |correction| over bins
};

// Asymptotic evaluation of int_a^inf u^(-q) exp(-i nu u) du for q > 1,
// nu * a >> 1 (or nu = 0, where the closed form applies).
Complex algebraic_tail_integral(double q, double nu, double a, double* err_out) {
  if (std::abs(nu) < 1e-14) {
    *err_out = 0.0;
    return std::pow(a, 1.0 - q) / (q - 1.0);
  }
  const Complex inu = kI * nu;
  const Complex pref = std::exp(-inu * a) / inu;
  Complex term = std::pow(a, -q);
  Complex sum = term;
  for (int m = 0; m < 4; ++m) {
    term *= -(q + m) / (inu * a);
    sum += term;
  }
  *err_out = std::abs(term * ((q + 4.0) / (std::abs(nu) * a))) * std::abs(pref);
  return pref * sum;
}

CorrectedTransform corrected_line_transform(const Eigen::ArrayXcd& samples,
                                            double step, double a0,
                                            const std::function<Complex(double)>& f,
                                            double lead_p) {
  const int K = static_cast<int>(samples.size());
  const double width = K * step;
  const double nu_min = 2.0 * kPi / width;

  CorrectedTransform out;
  out.values = dft_line_forward(samples, step, a0);
  const double scale = samples.abs().maxCoeff() + 1e-300;

  Eigen::ArrayXcd corr = Eigen::ArrayXcd::Zero(K);

  for (int side = 0; side < 2; ++side) {
    // First exterior lattice node on this side.
    const double edge = side == 0 ? a0 - step : a0 + width;
    if ((side == 0 && edge >= -2.0) || (side == 1 && edge <= 2.0)) {
      // Box edge too close to the origin for an algebraic-in-|t| model; the
      // boxes used by the verification suite never get here.
      out.model_err += scale;
      continue;
    }

    // Probe the evaluator outside the box and fit the three-term model.
    constexpr std::array<double, 6> kFacs{1.0, 1.25, 1.6, 2.05, 2.65, 3.4};
    std::array<double, 6> ts{};
    std::array<Complex, 6> fv{};
    double mag = 0.0;
    for (std::size_t i = 0; i < kFacs.size(); ++i) {
      ts[i] = edge * kFacs[i];
      fv[i] = f(ts[i]);
      mag = std::max(mag, std::abs(fv[i]));
    }
    if (mag <= 1e-15 * scale) {
      // This side is dead (superexponential decay): nothing to correct.
      out.model_err += mag * std::abs(edge) / std::max(lead_p - 1.0, 0.3);
      continue;
    }

    Eigen::MatrixXcd basis(6, 3);
    Eigen::VectorXcd rhs(6);
    for (int i = 0; i < 6; ++i) {
      const double at = std::abs(ts[static_cast<std::size_t>(i)]);
      basis(i, 0) = std::pow(at, -lead_p);
      basis(i, 1) = std::pow(at, -lead_p - 1.0);
      basis(i, 2) = std::pow(at, -lead_p - 2.0);
      rhs(i) = fv[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXcd coef = basis.colPivHouseholderQr().solve(rhs);
    double res = 0.0;
    for (int i = 0; i < 6; ++i)
      res = std::max(res, std::abs((basis.row(i) * coef)(0) - rhs(i)));

    // Discrete lattice sum of the model out to the stitch radius.
    const double abs_edge = std::abs(edge);
    const double t_mid = std::max(4.0 * abs_edge, 60.0 / nu_min);
    const int nodes = static_cast<int>(std::floor((t_mid - abs_edge) / step)) + 1;
    std::array<Eigen::ArrayXcd, 3> lattice_sum{Eigen::ArrayXcd::Zero(K),
                                               Eigen::ArrayXcd::Zero(K),
                                               Eigen::ArrayXcd::Zero(K)};
    double kernel_l1 = 0.0;
    double u_last = abs_edge;
    for (int j = 0; j < nodes; ++j) {
      const double u = abs_edge + j * step;         // |t| of this node
      const double t = side == 0 ? -u : u;
      u_last = u;
      const double pw0 = std::pow(u, -lead_p);
      const double pw1 = pw0 / u;
      const double pw2 = pw1 / u;
      kernel_l1 += std::pow(abs_edge / u, lead_p) * step;
      // e^{-i nu_k t} for all k via a geometric phase chain in k.
      Complex phase = std::exp(kI * (nu_min * (K / 2) * t));
      const Complex ratio = std::exp(-kI * (nu_min * t));
      for (int k = 0; k < K; ++k) {
        lattice_sum[0][k] += pw0 * phase * step;
        lattice_sum[1][k] += pw1 * phase * step;
        lattice_sum[2][k] += pw2 * phase * step;
        phase *= ratio;
      }
    }

    // Asymptotic remainder beyond the last node, with the midpoint
    // Euler-Maclaurin stitch term (step^2/24) g'(a).
    const double a_stitch = u_last + 0.5 * step;
    kernel_l1 += std::pow(abs_edge, lead_p) * std::pow(a_stitch, 1.0 - lead_p) /
                 (lead_p - 1.0);
    double series_err = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double qt = lead_p + q;
      const double coef_mag = std::abs(coef(q));
      for (int k = 0; k < K; ++k) {
        const double nu = nu_min * (k - K / 2);
        const double nu_eff = side == 0 ? -nu : nu;
        double serr = 0.0;
        Complex rem = algebraic_tail_integral(qt, nu_eff, a_stitch, &serr);
        const Complex g_at = std::pow(a_stitch, -qt) *
                             std::exp(-kI * (nu_eff * a_stitch));
        rem += (step * step / 24.0) *
               (Complex(-qt / a_stitch, 0.0) - kI * nu_eff) * g_at;
        lattice_sum[static_cast<std::size_t>(q)][k] += rem;
        // Next Euler-Maclaurin term ~ 7 step^4/5760 * |g'''|.
        const double g3 = std::pow(std::abs(nu) + qt / a_stitch, 3.0) *
                          std::pow(a_stitch, -qt);
        series_err = std::max(series_err,
                              coef_mag * (serr + 7.0 * std::pow(step, 4) / 5760.0 * g3));
      }
    }

    for (int q = 0; q < 3; ++q) corr += coef(q) * lattice_sum[static_cast<std::size_t>(q)];
    out.model_err += res * kernel_l1 + series_err;
  }

  out.correction_scale = corr.abs().maxCoeff();
  out.values += corr;
  return out;
}

// ---------------------------------------------------------------------------
// Per-term grid sampling of one-dimensional factors with pinned truncation
// (shared by the multiplier check; mirrors sample_dual_on_grid's pinning).
// ---------------------------------------------------------------------------

struct TimeFactorSamples {
  Eigen::ArrayXcd raw;        // g(t_l)
  Eigen::ArrayXcd derivative; // (Dg)(t_l)
  double err = 0.0;
};

TimeFactorSamples sample_time_factor(const TimeLine& tl, Side side,
                                     const FractionalParams& p,
                                     const SpaceTimeGrid& grid,
                                     const TimeQuadrature& tq) {
  const int M = grid.t_steps();
  TimeQuadrature pinned = tq;
  pinned.fixed_panels = true;
  double trunc = tq.fixed_truncation;
  for (int l = 0; l < M; ++l)
    trunc = std::max(trunc, marchaud_truncation(tl, grid.t_coord(l), side, p, tq));
  pinned.fixed_truncation = trunc;

  TimeFactorSamples out;
  out.raw.resize(M);
  out.derivative.resize(M);
  for (int l = 0; l < M; ++l) {
    const double t = grid.t_coord(l);
    out.raw[l] = tl.value(t);
    const EvalResult r = marchaud(tl, t, side, p, pinned);
    out.derivative[l] = r.value;
    out.err = std::max(out.err, r.err_estimate);
  }
  return out;
}

struct SpaceFactorSamples {
  Eigen::ArrayXcd raw;        // eta(x_i)
  Eigen::ArrayXcd laplacian;  // (L eta)(x_i)
  double err = 0.0;
};

SpaceFactorSamples sample_space_factor(const SpaceLine& sl,
                                       const FractionalParams& p,
                                       const SpaceTimeGrid& grid,
                                       const SpaceQuadrature& sq) {
  const std::size_t N = grid.spatial_size();
  SpaceQuadrature pinned = sq;
  pinned.fixed_panels = true;
  double trunc = sq.fixed_truncation;
  for (std::size_t i = 0; i < N; ++i)
    trunc = std::max(trunc, fraclap_truncation(sl, grid.x_point(i), p, sq));
  pinned.fixed_truncation = trunc;

  SpaceFactorSamples out;
  out.raw.resize(static_cast<Eigen::Index>(N));
  out.laplacian.resize(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) {
    const SpatialVec x = grid.x_point(i);
    out.raw[static_cast<Eigen::Index>(i)] = sl.value(x);
    const EvalResult r = frac_laplacian(sl, x, p, pinned);
    out.laplacian[static_cast<Eigen::Index>(i)] = r.value;
    out.err = std::max(out.err, r.err_estimate);
  }
  return out;
}

double vol_unit_ball(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return kPi;
    default: return 4.0 * kPi / 3.0;
  }
}

// Geometric radius ladder r = lo * 2^(j/2) up to hi (inclusive).
std::vector<double> half_octave_radii(double lo, double hi) {
  std::vector<double> r;
  for (double v = lo; v <= hi * 1.0000001; v *= std::sqrt(2.0)) r.push_back(v);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Multiplier identity
// ---------------------------------------------------------------------------

VerificationReport verify_multiplier(const TestFunction& phi, Side side,
                                     const FractionalParams& p,
                                     const SpaceTimeGrid& grid, double tolerance,
                                     const TimeQuadrature& tq,
                                     const SpaceQuadrature& sq) {
  if (p.n != 1 || grid.dim() != 1 || phi.dim != 1)
    throw DomainError(
        "verify_multiplier: implemented for n = 1 (the out-of-box tail model "
        "is one-dimensional)");
  if (phi.decay_class != DecayClass::schwartz)
    throw DomainError("verify_multiplier: needs a rapidly decaying test function");

  const int N = grid.points_per_axis();
  const int M = grid.t_steps();
  const double band_threshold = 1e-8;
  const double scale = 1.0 / (2.0 * kPi);  // (2 pi)^(-(n+1)/2), n = 1

  struct TermTransforms {
    Complex coeff;
    Eigen::ArrayXcd space_raw, space_lap, time_raw, time_deriv;
  };
  std::vector<TermTransforms> terms;
  double model_err = 0.0;
  double corr_scale = 0.0;

  for (const ProductTerm& term : phi.terms) {
    if (term.coeff == Complex(0.0, 0.0)) continue;
    TimeLine tl;
    tl.parts.push_back({Complex(1.0, 0.0), term.time});
    SpaceLine sl;
    sl.dim = 1;
    sl.parts.push_back({Complex(1.0, 0.0), term.space});

    const TimeFactorSamples tf = sample_time_factor(tl, side, p, grid, tq);
    const SpaceFactorSamples sf = sample_space_factor(sl, p, grid, sq);

    TermTransforms tt;
    tt.coeff = term.coeff;
    // Input factors decay rapidly: the plain box DFT is already converged.
    tt.space_raw = dft_line_forward(sf.raw, grid.dx(), -grid.half_length());
    tt.time_raw = dft_line_forward(tf.raw, grid.dt(), grid.t_min());

    // Operator outputs have algebraic tails: correct their line transforms.
    const auto time_eval = [&](double t) { return marchaud(tl, t, side, p, tq).value; };
    const CorrectedTransform ct = corrected_line_transform(
        tf.derivative, grid.dt(), grid.t_min(), time_eval, 1.0 + p.alpha);
    const auto space_eval = [&](double x) {
      return frac_laplacian(sl, spatial_point({x}), p, sq).value;
    };
    const CorrectedTransform cs = corrected_line_transform(
        sf.laplacian, grid.dx(), -grid.half_length(), space_eval, 1.0 + 2.0 * p.s);

    tt.time_deriv = ct.values;
    tt.space_lap = cs.values;
    model_err += ct.model_err + cs.model_err;
    corr_scale = std::max(corr_scale, std::max(ct.correction_scale, cs.correction_scale));
    terms.push_back(std::move(tt));
  }

  // Assemble the band comparison on the frequency lattice.
  double peak = 0.0;
  Eigen::ArrayXXcd phi_hat(N, M);
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < M; ++m) {
      Complex v{0.0, 0.0};
      for (const auto& tt : terms) v += tt.coeff * tt.space_raw[k] * tt.time_raw[m];
      v *= scale;
      phi_hat(k, m) = v;
      peak = std::max(peak, std::abs(v));
    }

  double max_gap = 0.0, max_rhs = 0.0;
  for (int k = 0; k < N; ++k) {
    const double xi = grid.xi(k);
    const double xi_pow = std::pow(std::abs(xi), 2.0 * p.s);
    for (int m = 0; m < M; ++m) {
      if (std::abs(phi_hat(k, m)) < band_threshold * peak) continue;
      const Complex symbol = time_symbol(grid.rho(m), p.alpha, side) + xi_pow;
      Complex lhs{0.0, 0.0};
      for (const auto& tt : terms)
        lhs += tt.coeff * (tt.space_raw[k] * tt.time_deriv[m] +
                           tt.space_lap[k] * tt.time_raw[m]);
      lhs *= scale;
      const Complex rhs = symbol * phi_hat(k, m);
      max_gap = std::max(max_gap, std::abs(lhs - rhs));
      max_rhs = std::max(max_rhs, std::abs(rhs));
    }
  }

  CheckRecord rec;
  rec.name = std::string("multiplier_identity/") + side_name(side);
  rec.params = {{"alpha", p.alpha},
                {"s", p.s},
                {"n", 1.0},
                {"L", grid.half_length()},
                {"N", static_cast<double>(N)},
                {"M", static_cast<double>(M)},
                {"t_min", grid.t_min()},
                {"t_max", grid.t_max()},
                {"band_threshold", band_threshold}};
  rec.measured = max_rhs > 0.0 ? max_gap / max_rhs : 0.0;
  rec.tolerance = tolerance;
  rec.passed = rec.measured <= tolerance;
  rec.anchor =
      "transform of (D_t^alpha + (-Lap)^s)phi equals ((sign-matched i rho)^alpha"
      " + |xi|^(2s)) times transform of phi on the resolved band";
  rec.note = "out-of-box algebraic tails of the operator output are modeled "
             "over the exterior lattice; modeled tail error <= " +
             format_number(model_err) + ", peak correction " + format_number(corr_scale);

  VerificationReport report;
  report.name = "multiplier";
  report.add(std::move(rec));
  return report;
}

// ---------------------------------------------------------------------------
// Duality pairing
// ---------------------------------------------------------------------------

PairingReport verify_parts(const TestFunction& u, const TestFunction& phi,
                           const FractionalParams& p, const SpaceTimeGrid& grid,
                           Side side_u, const TimeQuadrature& tq,
                           const SpaceQuadrature& sq) {
  const Side side_phi = side_u == Side::left ? Side::right : Side::left;
  const GridOperatorField wu = sample_dual_on_grid(u, side_u, p, grid, tq, sq);
  const GridOperatorField wphi = sample_dual_on_grid(phi, side_phi, p, grid, tq, sq);
  const SampledField us = sample_function(u, grid);
  const SampledField phis = sample_function(phi, grid);

  const int n = grid.dim();
  const int N = grid.points_per_axis();
  const int M = grid.t_steps();
  double vol = grid.dt();
  for (int a = 0; a < n; ++a) vol *= grid.dx();

  Complex lhs{0.0, 0.0}, rhs{0.0, 0.0};
  double interior_peak = 0.0, boundary_peak = 0.0;
  const std::size_t spatial = grid.spatial_size();
  for (std::size_t si = 0; si < spatial; ++si) {
    const auto multi = grid.spatial_multi(si);
    bool space_boundary = false;
    for (int a = 0; a < n; ++a)
      space_boundary |=
          (multi[static_cast<std::size_t>(a)] == 0 || multi[static_cast<std::size_t>(a)] == N - 1);
    for (int l = 0; l < M; ++l) {
      const Eigen::Index id = static_cast<Eigen::Index>(si) * M + l;
      const Complex a_term = wu.field.values[id] * std::conj(phis.values[id]);
      const Complex b_term = us.values[id] * std::conj(wphi.field.values[id]);
      lhs += a_term;
      rhs += b_term;
      const double local = std::max(std::abs(a_term), std::abs(b_term));
      if (space_boundary || l == 0 || l == M - 1)
        boundary_peak = std::max(boundary_peak, local);
      else
        interior_peak = std::max(interior_peak, local);
    }
  }
  lhs *= vol;
  rhs *= vol;

  if (boundary_peak > 1e-10 * interior_peak && interior_peak > 0.0)
    throw DomainError(
        "verify_parts: integrand carries mass at the box boundary (relative " +
        format_number(boundary_peak / interior_peak) + "); enlarge the box");

  PairingReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.abs_gap = std::abs(lhs - rhs);
  rep.tolerance = 1e-4 * (1.0 + std::abs(lhs));
  rep.passed = rep.abs_gap <= rep.tolerance;
  return rep;
}

// ---------------------------------------------------------------------------
// Decay profile
// ---------------------------------------------------------------------------

DecayFitReport decay_profile(const TestFunction& phi, DecayFitReport::Axis axis,
                             const FractionalParams& p, const TimeQuadrature& tq,
                             const SpaceQuadrature& sq) {
  if (phi.dim != p.n) throw DomainError("decay_profile: dimension mismatch");
  const int n = p.n;
  DecayFitReport rep;
  rep.axis = axis;
  rep.theoretical_exponent =
      axis == DecayFitReport::Axis::space ? n + 2.0 * p.s : 1.0 + p.alpha;

  const std::vector<double> radii = half_octave_radii(4.0, 128.0);
  for (const double r : radii) {
    double mag = 0.0;
    if (axis == DecayFitReport::Axis::space) {
      std::vector<SpatialVec> points;
      points.push_back(spatial_zero(n));
      points.back()[0] = r;
      points.push_back(spatial_zero(n));
      points.back()[0] = -r;
      if (n >= 2) {
        SpatialVec diag = spatial_zero(n);
        diag[0] = diag[1] = r / std::sqrt(2.0);
        points.push_back(diag);
      }
      for (const SpatialVec& x : points)
        for (const double t : {-1.0, 0.0, 1.0})
          mag = std::max(mag,
                         std::abs(dual_apply(phi, x, t, Side::right, p, tq, sq).value));
    } else {
      for (const double t : {r, -r})
        for (const double x1 : {0.0, 1.0, -1.0}) {
          SpatialVec x = spatial_zero(n);
          x[0] = x1;
          mag = std::max(mag,
                         std::abs(dual_apply(phi, x, t, Side::right, p, tq, sq).value));
        }
    }
    rep.samples.emplace_back(r, mag);
  }

  const LinearFit fit = fit_power_law(rep.samples);
  rep.fitted_exponent = -fit.slope;
  rep.fit_r2 = fit.r2;
  for (const auto& [r, mag] : rep.samples)
    rep.bound_constant =
        std::max(rep.bound_constant, mag * (1.0 + std::pow(r, rep.theoretical_exponent)));
  return rep;
}

// ---------------------------------------------------------------------------
// Counterexample: sharpness of the spatial decay rate
// ---------------------------------------------------------------------------

namespace {

// Independent oracle: C_ns * integral over the well support of
// (-eta(y)) |x - y|^(-n-2s) dy at x = r e1, by radial quadrature (closed-form
// or low-dimensional angular inner integrals, not the evaluator's
// second-difference polar form).
double well_kernel_oracle(double r, const FractionalParams& p, const SpaceLine& eta) {
  const int n = p.n;
  const double power = n + 2.0 * p.s;
  const auto well = [&](double q) {  // -eta at radius q (radial profile)
    SpatialVec y = spatial_zero(n);
    y[0] = q;
    return -eta.value(y).real();
  };

  double integral = 0.0;
  if (n == 1) {
    const auto f = [&](double y) { return well(std::abs(y)) * std::pow(std::abs(r - y), -power); };
    integral = integrate_panels(f, {-2.0, -1.0, 0.0, 1.0, 2.0}, 8).value;
  } else if (n == 2) {
    const auto outer = [&](double q) {
      const auto inner = [&](double theta) {
        const double d2 = r * r + q * q - 2.0 * r * q * std::cos(theta);
        return std::pow(d2, -0.5 * power);
      };
      const double ang = 2.0 * integrate_panels(inner, {0.0, kPi / 2, kPi}, 8).value;
      return q * well(q) * ang;
    };
    integral = integrate_panels(outer, {0.0, 1.0, 2.0}, 8).value;
  } else {
    const double p2 = power - 2.0;  // exponent drop from the angular closed form
    const auto outer = [&](double q) {
      const double inner = 2.0 * kPi *
                           (std::pow(r - q, -p2) - std::pow(r + q, -p2)) /
                           (r * q * p2);
      return q * q * well(q) * inner;
    };
    integral = integrate_panels(outer, {1e-12, 1.0, 2.0}, 8).value;
  }
  return p.C_ns * integral;
}

}  // namespace

VerificationReport counterexample_lower_bound(const FractionalParams& p,
                                              const TimeQuadrature& tq,
                                              const SpaceQuadrature& sq) {
  const int n = p.n;
  const double power = n + 2.0 * p.s;
  const TestFunction psi = make_cutoff_product(n);
  const SpaceLine eta = space_line(psi, 0.0);

  const std::vector<double> radii = {3.0, 4.0, 5.656854249492381, 8.0,
                                     11.313708498984761, 16.0, 22.627416997969522,
                                     32.0, 45.254833995939045, 64.0};
  const std::vector<double> times = {-1.0, -0.5, 0.0, 0.5, 1.0};

  double worst_match = 0.0;
  double min_bound_ratio = 1e300;
  double max_flat_gap = 0.0;
  std::vector<std::pair<double, double>> slope_samples;

  // C0 as defined by the claim under test: kernel constant times the unit-ball
  // volume times the worst sampled ratio between the two envelope shapes.
  double envelope_inf = 1e300;
  for (const double r : radii)
    envelope_inf = std::min(envelope_inf,
                            (1.0 + std::pow(r, power)) / std::pow(1.0 + r, power));
  const double c0 = p.C_ns * vol_unit_ball(n) * envelope_inf;

  for (const double r : radii) {
    SpatialVec x = spatial_zero(n);
    x[0] = r;
    const double oracle = well_kernel_oracle(r, p, eta);
    double w_half_pos = 0.0, w_half_neg = 0.0;
    double value_at_zero = 0.0;
    for (const double t : times) {
      const double w = dual_apply(psi, x, t, Side::right, p, tq, sq).value.real();
      worst_match = std::max(worst_match, std::abs(w - oracle) / std::abs(oracle));
      min_bound_ratio = std::min(min_bound_ratio, w * (1.0 + std::pow(r, power)) / c0);
      if (t == 0.5) w_half_pos = w;
      if (t == -0.5) w_half_neg = w;
      if (t == 0.0) value_at_zero = w;
    }
    max_flat_gap = std::max(max_flat_gap, std::abs(w_half_pos - w_half_neg));
    // The decay rate is an asymptotic statement: fit it where the near-field
    // curvature of the well integral has died off.  The inner radii still
    // feed the pointwise lower-bound and oracle checks above.
    if (r >= 11.0) slope_samples.emplace_back(r, std::abs(value_at_zero));
  }

  const LinearFit fit = fit_power_law(slope_samples);
  const double fitted = -fit.slope;

  VerificationReport report;
  report.name = "counterexample";
  const std::map<std::string, double> base_params = {
      {"alpha", p.alpha}, {"s", p.s}, {"n", static_cast<double>(n)}};

  CheckRecord match;
  match.name = "counterexample/kernel_integral_match";
  match.params = base_params;
  match.measured = worst_match;
  match.tolerance = 1e-4;
  match.passed = worst_match <= 1e-4;
  match.anchor =
      "on |x| >= 3, |t| <= 1 the operator value on the cutoff product equals "
      "C_ns * integral of (-eta(y)) |x-y|^(-n-2s) dy (flat time factor)";
  report.add(std::move(match));

  CheckRecord bound;
  bound.name = "counterexample/lower_bound";
  bound.params = base_params;
  bound.params["C0"] = c0;
  bound.measured = min_bound_ratio;
  bound.tolerance = 1.0;
  bound.passed = min_bound_ratio >= 1.0 - 1e-9;
  bound.anchor =
      "value >= C0 / (1 + |x|^(n+2s)) with C0 = C_ns * vol(B1) * "
      "min_r (1 + r^(n+2s)) / (1 + r)^(n+2s) > 0";
  bound.note = "positivity margin: smallest value*(1+|x|^(n+2s))/C0 over samples";
  report.add(std::move(bound));

  CheckRecord slope;
  slope.name = "counterexample/decay_slope";
  slope.params = base_params;
  slope.params["target"] = power;
  slope.params["fitted"] = fitted;
  slope.measured = fitted - power;
  slope.tolerance = 0.1;
  slope.passed = slope.measured <= 0.1 && slope.measured >= -0.3;
  slope.anchor =
      "the output cannot decay faster than |x|^-(n+2s): the fitted rate must "
      "not exceed n+2s by more than the tolerance";
  slope.note = "signed overshoot of the fitted decay rate over n+2s";
  report.add(std::move(slope));

  CheckRecord flat;
  flat.name = "counterexample/time_flatness";
  flat.params = base_params;
  flat.measured = max_flat_gap;
  flat.tolerance = 1e-10;
  flat.passed = max_flat_gap <= 1e-10;
  flat.anchor = "output at t = +/- 1/2 coincides (time factor constant there)";
  report.add(std::move(flat));
  return report;
}

// ---------------------------------------------------------------------------
// Fourier support classification
// ---------------------------------------------------------------------------

SupportReport fourier_support_check(const SampledField& candidate,
                                    const std::string& label) {
  if (candidate.frequency_domain)
    throw DomainError("fourier_support_check: pass time-domain samples");
  const SpaceTimeGrid& g = candidate.grid;
  const int n = g.dim();
  const int N = g.points_per_axis();
  const int M = g.t_steps();
  const bool under_resolved = (N <= 8 || M <= 8);

  SupportReport out;
  out.report.name = "fourier_support/" + label;
  const std::map<std::string, double> base_params = {
      {"n", static_cast<double>(n)},
      {"N", static_cast<double>(N)},
      {"M", static_cast<double>(M)}};
  const std::string resolution_note =
      under_resolved ? "under-resolved grid (N or M <= 8): classification is coarse"
                     : "";

  const SampledField hat = ft_spacetime(candidate);
  double total = 0.0, in_ball = 0.0;
  const std::size_t spatial = g.spatial_size();
  for (std::size_t si = 0; si < spatial; ++si) {
    const auto multi = g.spatial_multi(si);
    double space_d2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = multi[static_cast<std::size_t>(a)] - N / 2;
      space_d2 += d * d;
    }
    for (int l = 0; l < M; ++l) {
      const double mass =
          std::norm(hat.values[static_cast<Eigen::Index>(si) * M + l]);
      total += mass;
      const double td = l - M / 2;
      if (space_d2 + td * td <= 4.0) in_ball += mass;
    }
  }

  if (total < 1e-280) {
    out.classification = "empty";
    out.origin_fraction = 1.0;
    CheckRecord rec;
    rec.name = "fourier_support/" + label + "/origin_mass";
    rec.params = base_params;
    rec.measured = 0.0;
    rec.tolerance = 1e-6;
    rec.passed = true;
    rec.anchor = "spectral mass of a kernel field concentrates at the origin modes";
    rec.note = "zero field" + (resolution_note.empty() ? "" : "; " + resolution_note);
    out.report.add(std::move(rec));
    return out;
  }

  out.origin_fraction = in_ball / total;
  const double out_frac = 1.0 - out.origin_fraction;

  CheckRecord origin;
  origin.name = "fourier_support/" + label + "/origin_mass";
  origin.params = base_params;
  origin.measured = out_frac;
  origin.tolerance = 1e-6;
  origin.passed = out_frac <= 1e-6;
  origin.anchor = "spectral mass of a kernel field concentrates at the origin modes";
  origin.note = resolution_note;

  if (origin.passed) {
    out.classification = "origin_concentrated";
    out.report.add(std::move(origin));
    return out;
  }

  // Not origin-concentrated: test for the affine signature — all mass on the
  // first spatial axis at zero temporal frequency, with the linear-ramp
  // (sawtooth) magnitude law |F_k| * |sin(pi (k - N/2) / N)| = const.
  double line_mass = 0.0;
  std::vector<double> line_mag(static_cast<std::size_t>(N), 0.0);
  for (int k = 0; k < N; ++k) {
    std::array<int, 3> multi{N / 2, N / 2, N / 2};
    multi[0] = k;
    const Complex v = hat.values[static_cast<Eigen::Index>(g.index(multi, M / 2))];
    line_mass += std::norm(v);
    line_mag[static_cast<std::size_t>(k)] = std::abs(v);
  }

  const double off_line = 1.0 - line_mass / total;
  if (off_line <= 1e-9) {
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < N; ++k) {
      if (k == N / 2) continue;  // zero-frequency bin carries the mean instead
      const double m =
          line_mag[static_cast<std::size_t>(k)] * std::abs(std::sin(kPi * (k - N / 2) / N));
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    const double spread = hi > 0.0 ? hi / lo - 1.0 : 0.0;

    CheckRecord saw;
    saw.name = "fourier_support/" + label + "/sawtooth_law";
    saw.params = base_params;
    saw.measured = spread;
    saw.tolerance = 1e-6;
    saw.passed = spread <= 1e-6;
    saw.anchor =
        "a linear ramp's lattice transform obeys |F_k| proportional to "
        "1/|sin(pi (k - N/2)/N)| away from the mean bin";
    saw.note = resolution_note;

    if (saw.passed) {
      out.classification = "affine_like";
      origin.passed = true;  // affine fields are kernel members despite spread mass
      origin.note = "mass on the first-axis line (affine signature)" +
                    (resolution_note.empty() ? "" : "; " + resolution_note);
      out.report.add(std::move(origin));
      out.report.add(std::move(saw));
      return out;
    }
    out.classification = "spread";
    out.report.add(std::move(origin));
    out.report.add(std::move(saw));
    return out;
  }

  out.classification = "spread";
  out.report.add(std::move(origin));
  return out;
}

}  // namespace fracdual
