#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <type_traits>
#include <vector>

#include "fracdual/core/types.hpp"

namespace fracdual {

/// Integral value + absolute error estimate + evaluation count.
template <class V>
struct IntegralEstimate {
  V value{};
  double error = 0.0;
  std::size_t evals = 0;
};

namespace quad_detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15).
// Odd-indexed abscissae are the embedded Gauss points.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

}  // namespace quad_detail

/// One Gauss7/Kronrod15 panel on [a, b].  The error estimate follows the
/// QUADPACK sharpening (difference between the embedded rules, scaled by the
/// integrand's deviation from its mean, so singular endpoints are not
/// over-trusted).
template <class F>
auto gk15(F&& f, double a, double b, double* err_out)
    -> std::decay_t<decltype(f(0.5 * (a + b)))> {
  using V = std::decay_t<decltype(f(0.5 * (a + b)))>;
  using quad_detail::kWg;
  using quad_detail::kWgk;
  using quad_detail::kXgk;

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  V fv[15];
  fv[14] = f(c);
  for (int i = 0; i < 7; ++i) {
    fv[2 * i] = f(c - h * kXgk[i]);
    fv[2 * i + 1] = f(c + h * kXgk[i]);
  }

  V resk = kWgk[7] * fv[14];
  double resabs = kWgk[7] * std::abs(fv[14]);
  for (int i = 0; i < 7; ++i) {
    const V pair_sum = fv[2 * i] + fv[2 * i + 1];
    resk += kWgk[i] * pair_sum;
    resabs += kWgk[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
  }
  // Gauss points are the odd-indexed abscissae kXgk[1], kXgk[3], kXgk[5]
  // plus the centre; fv[2i]/fv[2i+1] hold the -/+ copies of kXgk[i].
  V resg = kWg[3] * fv[14];
  for (int j = 0; j < 3; ++j) {
    const int i = 2 * j + 1;
    resg += kWg[j] * (fv[2 * i] + fv[2 * i + 1]);
  }

  // Deviation of f from its panel mean under the Kronrod weights.
  const V mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[14] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  resasc *= h;
  resabs *= h;

  double err = std::abs(h) * std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = 2.220446049250313e-16;
  err = std::max(err, 50.0 * kEps * resabs);
  if (err_out) *err_out = err;
  return resk * h;
}

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  int max_panels = 4000;
};

/// Globally adaptive GK15: repeatedly bisects the worst panel until the summed
/// error estimate meets max(abs_tol, rel_tol * |integral|) or the panel budget
/// runs out.  Throws ConvergenceError only if the final error is grossly
/// (1000x) above target; otherwise returns with the honest estimate.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {})
    -> IntegralEstimate<std::decay_t<decltype(f(0.5 * (a + b)))>> {
  using V = std::decay_t<decltype(f(0.5 * (a + b)))>;

  struct Panel {
    double a, b, err;
    V val;
    bool operator<(const Panel& o) const { return err < o.err; }
  };

  IntegralEstimate<V> out;
  if (a == b) return out;

  std::priority_queue<Panel> heap;
  double err0 = 0.0;
  V v0 = gk15(f, a, b, &err0);
  heap.push({a, b, err0, v0});
  out.evals = 15;

  V total = v0;
  double total_err = err0;
  int panels = 1;
  while (panels < opt.max_panels) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (total_err <= target) break;
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at floating-point resolution
      heap.push(worst);
      break;
    }
    double el = 0.0, er = 0.0;
    V vl = gk15(f, worst.a, mid, &el);
    V vr = gk15(f, mid, worst.b, &er);
    out.evals += 30;
    total += (vl + vr) - worst.val;
    total_err += (el + er) - worst.err;
    heap.push({worst.a, mid, el, vl});
    heap.push({mid, worst.b, er, vr});
    ++panels;
  }
  // Recompute the error sum from the heap to undo cancellation drift.
  total_err = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      total_err += copy.top().err;
      copy.pop();
    }
  }
  out.value = total;
  out.error = total_err;
  const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  if (total_err > 1000.0 * std::max(target, 1e-300))
    throw ConvergenceError("integrate_adaptive: error " + std::to_string(total_err) +
                           " did not reach target " + std::to_string(target) +
                           " within panel budget");
  return out;
}

/// Composite GK15 over a fixed breakpoint list, each cell optionally split
/// into `subdiv` uniform panels.  Fully deterministic (no data-dependent
/// refinement), which keeps the evaluation error a smooth function of outer
/// parameters — required when sampling operators over a grid feeding a DFT.
template <class F>
auto integrate_panels(F&& f, const std::vector<double>& breaks, int subdiv = 1)
    -> IntegralEstimate<std::decay_t<decltype(f(breaks.front()))>> {
  using V = std::decay_t<decltype(f(breaks.front()))>;
  IntegralEstimate<V> out;
  out.value = V{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double w = (breaks[i + 1] - breaks[i]) / subdiv;
    for (int k = 0; k < subdiv; ++k) {
      double e = 0.0;
      out.value += gk15(f, breaks[i] + k * w, breaks[i] + (k + 1) * w, &e);
      out.error += e;
      out.evals += 15;
    }
  }
  return out;
}

/// Breakpoints a = b_0 < b_1 < ... < b_K = b growing geometrically away from
/// `a` (panel widths first, first*ratio, ...).  Suited to kernels that are
/// steep near `a` and flat far away.
inline std::vector<double> geometric_breakpoints(double a, double b, double first,
                                                 double ratio = 1.7) {
  if (!(b > a) || !(first > 0.0) || !(ratio > 1.0))
    throw DomainError("geometric_breakpoints: need b > a, first > 0, ratio > 1");
  std::vector<double> out{a};
  double w = first;
  double pos = a;
  while (pos + w < b) {
    pos += w;
    out.push_back(pos);
    w *= ratio;
    if (out.size() > 4000) throw DomainError("geometric_breakpoints: too many panels");
  }
  out.push_back(b);
  return out;
}

/// Iterated-averaging limit of the truncated oscillatory tail
/// int_{T0}^inf f, where f oscillates with the given half period and its
/// partial integrals S(T_k) converge only in the averaged sense.  Successive
/// pairwise means of S(T0), S(T0 + P), ..., S(T0 + levels*P) cancel the
/// oscillating envelope order by order (each averaging stage trades one power
/// of the envelope for one power of P/T).
template <class F>
IntegralEstimate<Complex> oscillatory_tail(F&& f, double T0, double half_period,
                                           int levels = 8) {
  if (!(half_period > 0.0)) throw DomainError("oscillatory_tail: half_period must be > 0");
  std::vector<Complex> partial(static_cast<std::size_t>(levels) + 1);
  IntegralEstimate<Complex> out;
  Complex run{0.0, 0.0};
  partial[0] = run;
  for (int k = 1; k <= levels; ++k) {
    double e = 0.0;
    run += gk15([&](double x) { return f(x); }, T0 + (k - 1) * half_period,
                T0 + k * half_period, &e);
    out.error += e;
    out.evals += 15;
    partial[static_cast<std::size_t>(k)] = run;
  }
  double last_sweep = 0.0;
  for (int lev = 0; lev < levels; ++lev) {
    last_sweep = 0.0;
    for (int k = 0; k + lev + 1 <= levels; ++k) {
      const Complex next = 0.5 * (partial[k] + partial[k + 1]);
      last_sweep = std::max(last_sweep, std::abs(next - partial[k]));
      partial[static_cast<std::size_t>(k)] = next;
    }
  }
  out.value = partial[0];
  out.error += last_sweep;  // size of the final averaging correction
  return out;
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial (standard three-term recurrence).
inline void gauss_legendre(int npts, std::vector<double>& nodes,
                           std::vector<double>& weights) {
  if (npts < 1) throw DomainError("gauss_legendre: need at least one node");
  nodes.assign(static_cast<std::size_t>(npts), 0.0);
  weights.assign(static_cast<std::size_t>(npts), 0.0);
  const int half = (npts + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npts; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = npts * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(npts - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(npts - 1 - i)] = w;
  }
}

}  // namespace fracdual
