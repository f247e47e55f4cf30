#include "fracdual/marchaud/marchaud.hpp"

#include <algorithm>
#include <cmath>

#include "fracdual/core/quadrature.hpp"

namespace fracdual {

namespace {

// Truncated panels for the far field: geometric growth away from the near
// cut, with an optional width cap so oscillatory integrands stay resolved.
std::vector<double> far_breakpoints(double a, double b, double first, double cap) {
  std::vector<double> raw = geometric_breakpoints(a, b, first, 1.7);
  if (!(cap > 0.0) || !std::isfinite(cap)) return raw;
  std::vector<double> out{raw.front()};
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    const double w = raw[i + 1] - raw[i];
    const int cuts = std::max(1, static_cast<int>(std::ceil(w / cap)));
    for (int k = 1; k <= cuts; ++k) out.push_back(raw[i] + w * k / cuts);
  }
  return out;
}

enum class TailCase {
  exact_zero,   ///< the shifted profile is identically ~0 beyond the cut
  oscillatory,  ///< unimodular oscillation: averaged truncation
  algebraic,    ///< |profile| ~ sigma^d beyond the cut
};

struct PartPlan {
  bool skip = false;
  double T = 0.0;              // truncation lag
  double cap = 0.0;            // panel width cap (0: none)
  TailCase tail = TailCase::exact_zero;
  double residual = 0.0;       // relative bound on mass ignored past T
  double half_period = 0.0;    // oscillatory case
  double d = 0.0;              // algebraic case exponent
};

// dir = +1: left derivative, shifted point t - sigma; dir = -1: right, t + sigma.
PartPlan plan_part(const TailInfo& tail, double t, int dir, double alpha,
                   const TimeQuadrature& q) {
  PartPlan plan;
  switch (tail.kind) {
    case TailKind::constant:
      plan.skip = true;
      return plan;
    case TailKind::gaussian: {
      const double reach = dir > 0 ? (t - tail.a) : (tail.a - t);
      plan.T = std::max(0.5, reach + 9.0 * tail.b);
      plan.residual = 3e-18;
      return plan;
    }
    case TailKind::compact: {
      if (dir > 0) {
        if (t <= tail.a) { plan.skip = true; return plan; }
        plan.T = t - tail.a;
      } else {
        if (t >= tail.b) { plan.skip = true; return plan; }
        plan.T = tail.b - t;
      }
      return plan;
    }
    case TailKind::history_compact: {
      if (dir > 0) {
        if (t <= tail.a) { plan.skip = true; return plan; }
        plan.T = t - tail.a;
        return plan;
      }
      // toward +inf the profile decays algebraically with exponent tail.b
      plan.tail = TailCase::algebraic;
      plan.d = tail.b;
      plan.T = std::max(q.far_cut, 8.0 * (1.0 + std::abs(t) + std::abs(tail.a)));
      return plan;
    }
    case TailKind::exp_rate: {
      if (std::abs(tail.a) < 1e-14) { plan.skip = true; return plan; }
      const double decay = dir > 0 ? tail.a : -tail.a;
      if (decay <= 0.0)
        throw DivergenceError(
            "marchaud: exponential growth along the integration ray (rate " +
            std::to_string(tail.a) + ")");
      plan.T = 37.0 / decay;
      plan.residual = 9e-17;
      return plan;
    }
    case TailKind::wave: {
      const double w = std::abs(tail.a);
      if (w < 1e-12) { plan.skip = true; return plan; }
      plan.tail = TailCase::oscillatory;
      plan.half_period = M_PI / w;
      plan.cap = 2.0 * M_PI / w;
      plan.T = std::max(q.far_cut, 16.0 * plan.half_period);
      return plan;
    }
    case TailKind::poly: {
      if (tail.a >= alpha - 1e-9)
        throw DivergenceError("marchaud: profile grows like |t|^" +
                              std::to_string(tail.a) + " but alpha = " +
                              std::to_string(alpha) +
                              " requires growth below alpha");
      plan.tail = TailCase::algebraic;
      plan.d = tail.a;
      plan.T = std::max(q.far_cut, 40.0 * (1.0 + std::abs(t)));
      return plan;
    }
  }
  throw DomainError("marchaud: unhandled tail kind");
}

}  // namespace

Complex time_symbol(double rho, double alpha, Side side) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("time_symbol: alpha must lie in (0, 1)");
  if (rho == 0.0) return Complex{0.0, 0.0};
  const double sgn = rho > 0.0 ? 1.0 : -1.0;
  const double arg = (side == Side::left ? 1.0 : -1.0) * alpha * 0.5 * M_PI * sgn;
  return std::pow(std::abs(rho), alpha) * Complex{std::cos(arg), std::sin(arg)};
}

double marchaud_truncation(const TimeLine& u, double t, Side side,
                           const FractionalParams& p, const TimeQuadrature& q) {
  const int dir = side == Side::left ? 1 : -1;
  double T = 2.0 * q.near_cut;
  for (const auto& part : u.parts) {
    // planning is cheap; divergence surfaces here just as in the evaluator
    PartPlan plan = plan_part(part.prof.tail, t, dir, p.alpha, q);
    if (!plan.skip) T = std::max(T, plan.T);
  }
  return T;
}

EvalResult marchaud(const TimeLine& u, double t, Side side,
                    const FractionalParams& p, const TimeQuadrature& q) {
  q.validate();
  const double alpha = p.alpha;
  const int dir = side == Side::left ? 1 : -1;
  const double delta = q.near_cut;

  EvalResult out;
  if (u.parts.empty()) return out;

  // Near zone [0, delta]: u(t) - u(t -/+ sigma) expanded to second order,
  // integrated against sigma^(-1-alpha) in closed form.
  const double f1 = std::pow(delta, 1.0 - alpha) / (1.0 - alpha);
  const double f2 = std::pow(delta, 2.0 - alpha) / (2.0 * (2.0 - alpha));
  const Complex d1t = u.d1(t);
  const Complex d2t = u.d2(t);
  Complex acc;
  double err = 0.0;
  if (q.near_order == 1) {
    acc = static_cast<double>(dir) * d1t * f1;
    err += 1.5 * std::abs(d2t) * f2;
  } else {
    acc = static_cast<double>(dir) * d1t * f1 - d2t * f2;
    const double m3 = std::abs(d2t - u.d2(t - dir * delta)) / delta;
    err += m3 * std::pow(delta, 3.0 - alpha) / (3.0 - alpha) / 3.0;
  }

  AdaptiveOptions opt;
  opt.abs_tol = q.abs_tol;
  opt.rel_tol = q.rel_tol;

  for (const auto& part : u.parts) {
    PartPlan plan = plan_part(part.prof.tail, t, dir, alpha, q);
    if (plan.skip) continue;
    if (q.fixed_truncation > 0.0) plan.T = std::max(plan.T, q.fixed_truncation);
    const double T = std::max(plan.T, 2.0 * delta);

    const auto& prof = part.prof;
    const Complex u_now = prof.value(t);
    auto integrand = [&](double sigma) {
      return (u_now - prof.value(t - dir * sigma)) * std::pow(sigma, -1.0 - alpha);
    };

    Complex mid{0.0, 0.0};
    double mid_err = 0.0;
    if (T > delta) {
      if (q.fixed_panels) {
        auto est = integrate_panels(integrand, far_breakpoints(delta, T, delta, plan.cap), 2);
        mid = est.value;
        mid_err = est.error;
      } else {
        auto est = integrate_adaptive(integrand, delta, T, opt);
        mid = est.value;
        mid_err = est.error;
      }
    }

    // Tail beyond T: the u(t) half integrates in closed form; the shifted
    // half depends on the decay class.
    const double kernel_tail = std::pow(T, -alpha) / alpha;
    Complex tail = u_now * kernel_tail;
    double tail_err = plan.residual * kernel_tail * (1.0 + std::abs(u_now));
    switch (plan.tail) {
      case TailCase::exact_zero:
        break;
      case TailCase::oscillatory: {
        auto osc = oscillatory_tail(
            [&](double sigma) {
              return -prof.value(t - dir * sigma) * std::pow(sigma, -1.0 - alpha);
            },
            T, plan.half_period);
        tail += osc.value;
        tail_err += osc.error;
        break;
      }
      case TailCase::algebraic: {
        // model: shifted profile ~ value at the cut times (sigma/T)^d
        const Complex at_cut = prof.value(t - dir * T);
        const double closed = std::pow(T, -alpha) / (alpha - plan.d);
        if (q.tail_model == TailModel::algebraic_extrapolation) {
          tail += -at_cut * closed;
          tail_err += std::abs(at_cut) * closed *
                      (0.05 + std::abs(plan.d) * (1.0 + std::abs(t)) / T);
        } else {
          tail_err += std::abs(at_cut) * closed;
        }
        break;
      }
    }

    acc += part.coeff * (mid + tail);
    err += std::abs(part.coeff) * (mid_err + tail_err);
  }

  out.value = p.C_alpha * acc;
  out.err_estimate = p.C_alpha * err;
  return out;
}

EvalResult marchaud_left(const TestFunction& u, const SpatialVec& x, double t,
                         const FractionalParams& p, const TimeQuadrature& q) {
  return marchaud(time_line(u, x), t, Side::left, p, q);
}

EvalResult marchaud_right(const TestFunction& u, const SpatialVec& x, double t,
                          const FractionalParams& p, const TimeQuadrature& q) {
  return marchaud(time_line(u, x), t, Side::right, p, q);
}

}  // namespace fracdual
