#include "fracdual/fraclap/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracdual/core/quadrature.hpp"
#include "fracdual/dualop/fourier.hpp"

namespace fracdual {

namespace {

struct SphereRule {
  std::vector<SpatialVec> dirs;
  std::vector<double> wts;  // sum = surface measure of S^(n-1)
};

SphereRule sphere_rule(int n, int angular_nodes) {
  SphereRule rule;
  if (n == 1) {
    SpatialVec plus = spatial_zero(1), minus = spatial_zero(1);
    plus[0] = 1.0;
    minus[0] = -1.0;
    rule.dirs = {plus, minus};
    rule.wts = {1.0, 1.0};
    return rule;
  }
  if (n == 2) {
    const int K = angular_nodes;
    const double w = 2.0 * M_PI / K;
    for (int j = 0; j < K; ++j) {
      const double th = 2.0 * M_PI * (j + 0.5) / K;
      SpatialVec d = spatial_zero(2);
      d[0] = std::cos(th);
      d[1] = std::sin(th);
      rule.dirs.push_back(d);
      rule.wts.push_back(w);
    }
    return rule;
  }
  // n == 3: Gauss-Legendre in cos(theta) x uniform phi ring
  const int nmu = std::max(6, angular_nodes / 4);
  const int nphi = std::max(8, angular_nodes / 2);
  std::vector<double> mu, glw;
  gauss_legendre(nmu, mu, glw);
  for (int i = 0; i < nmu; ++i) {
    const double sin_th = std::sqrt(std::max(0.0, 1.0 - mu[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)]));
    for (int j = 0; j < nphi; ++j) {
      const double ph = 2.0 * M_PI * (j + 0.5) / nphi;
      SpatialVec d = spatial_zero(3);
      d[0] = sin_th * std::cos(ph);
      d[1] = sin_th * std::sin(ph);
      d[2] = mu[static_cast<std::size_t>(i)];
      rule.dirs.push_back(d);
      rule.wts.push_back(glw[static_cast<std::size_t>(i)] * 2.0 * M_PI / nphi);
    }
  }
  return rule;
}

enum class TailCase { exact_zero, oscillatory, algebraic, affine_exact };

struct PartPlan {
  bool skip = false;
  double T = 0.0;
  double cap = 0.0;
  TailCase tail = TailCase::exact_zero;
  double residual = 0.0;
  double d = 0.0;
  bool conditional = false;
};

PartPlan plan_part(const TailInfo& tail, const SpatialVec& x, double s,
                   const SpaceQuadrature& q) {
  PartPlan plan;
  switch (tail.kind) {
    case TailKind::constant:
      plan.skip = true;
      return plan;
    case TailKind::gaussian: {
      SpatialVec c = spatial_zero(static_cast<int>(x.size()));
      for (int i = 0; i < x.size(); ++i) c[i] = tail.vec[static_cast<std::size_t>(i)];
      plan.T = std::max(1.0, (x - c).norm() + 9.0 * tail.b);
      plan.residual = 3e-18;
      return plan;
    }
    case TailKind::compact:
      plan.T = x.norm() + tail.b;
      return plan;
    case TailKind::wave: {
      double knorm = 0.0;
      for (double v : tail.vec) knorm += v * v;
      knorm = std::sqrt(knorm);
      if (knorm < 1e-12) { plan.skip = true; return plan; }
      plan.tail = TailCase::oscillatory;
      plan.cap = 2.0 * M_PI / knorm;
      plan.T = std::max(q.far_cut, 8.0 * plan.cap);
      return plan;
    }
    case TailKind::poly: {
      const double d = tail.a;
      if (std::abs(d - 1.0) < 1e-12) {
        // affine profile: the symmetric second difference vanishes identically
        plan.tail = TailCase::affine_exact;
        plan.T = std::max(2.0, x.norm() + 1.0);
        plan.conditional = (2.0 * s <= 1.0);
        return plan;
      }
      if (d >= 2.0 * s - 1e-9)
        throw DivergenceError("frac_laplacian: profile grows like |x|^" +
                              std::to_string(d) + " but 2s = " +
                              std::to_string(2.0 * s) + " requires growth below 2s");
      plan.tail = TailCase::algebraic;
      plan.d = d;
      plan.T = std::max(q.far_cut, 8.0 * (1.0 + x.norm()));
      return plan;
    }
    case TailKind::exp_rate:
    case TailKind::history_compact:
      throw DomainError("frac_laplacian: time-axis tail class on a spatial profile");
  }
  throw DomainError("frac_laplacian: unhandled tail kind");
}

std::vector<double> radial_breakpoints(double a, double b, double first, double cap) {
  std::vector<double> raw = geometric_breakpoints(a, b, first, 1.7);
  if (!(cap > 0.0)) return raw;
  std::vector<double> out{raw.front()};
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    const double w = raw[i + 1] - raw[i];
    const int cuts = std::max(1, static_cast<int>(std::ceil(w / cap)));
    for (int k = 1; k <= cuts; ++k) out.push_back(raw[i] + w * k / cuts);
  }
  return out;
}

// int_T^inf e^(i rho r) r^(-1-2s) dr: numeric continuation until the phase is
// fast, then averaged truncation over half periods.
Complex osc_radial_tail(double rho, double two_s, double T, double* err) {
  if (std::abs(rho) < 1e-10) {
    *err += 1e-15 * std::pow(T, -two_s) / two_s;
    return Complex{std::pow(T, -two_s) / two_s, 0.0};
  }
  const double half = M_PI / std::abs(rho);
  double T2 = T;
  Complex head{0.0, 0.0};
  if (T * std::abs(rho) < 6.0) {
    T2 = 6.0 / std::abs(rho);
    auto seg = integrate_panels(
        [&](double r) {
          return std::exp(Complex{0.0, rho * r}) * std::pow(r, -1.0 - two_s);
        },
        radial_breakpoints(T, T2, std::max(0.25 * (T2 - T), 1e-3), half * 0.5));
    head = seg.value;
    *err += seg.error;
  }
  auto tail = oscillatory_tail(
      [&](double r) {
        return std::exp(Complex{0.0, rho * r}) * std::pow(r, -1.0 - two_s);
      },
      T2, half);
  *err += tail.error;
  return head + tail.value;
}

}  // namespace

double fraclap_truncation(const SpaceLine& u, const SpatialVec& x,
                          const FractionalParams& p, const SpaceQuadrature& q) {
  double T = 2.0 * q.near_cut;
  for (const auto& part : u.parts) {
    PartPlan plan = plan_part(part.prof.tail, x, p.s, q);
    if (!plan.skip) T = std::max(T, plan.T);
  }
  return T;
}

EvalResult frac_laplacian(const SpaceLine& u, const SpatialVec& x,
                          const FractionalParams& p, const SpaceQuadrature& q) {
  q.validate();
  if (static_cast<int>(x.size()) != u.dim)
    throw DomainError("frac_laplacian: point dimension does not match the field");
  const double s = p.s;
  const double two_s = 2.0 * s;
  const double delta = q.near_cut;
  const int n = u.dim;
  const double omega = sphere_measure(n);
  const SphereRule rule = sphere_rule(n, q.angular_nodes);
  const double half_C = 0.5 * p.C_ns;

  EvalResult out;
  if (u.parts.empty()) return out;

  // Near zone [0, delta]: angular average of the second difference is
  // -(omega/n) Laplacian(u) r^2 + O(r^4).
  const Complex lap = u.laplacian(x);
  Complex acc = -half_C * (omega / n) * lap * std::pow(delta, 2.0 - two_s) / (2.0 - two_s);
  double err = 0.0;
  {
    // fourth-order residual probe at the near cut
    Complex probe{0.0, 0.0};
    for (std::size_t k = 0; k < rule.dirs.size(); ++k) {
      const SpatialVec step = delta * rule.dirs[k];
      probe += rule.wts[k] * (2.0 * u.value(x) - u.value(x + step) - u.value(x - step));
    }
    const Complex taylor = -(omega / n) * lap * delta * delta;
    const double rho4 = std::abs(probe - taylor) / std::pow(delta, 4.0);
    err += half_C * rho4 * std::pow(delta, 4.0 - two_s) / (4.0 - two_s) * 1.5;
  }

  AdaptiveOptions opt;
  opt.abs_tol = q.abs_tol;
  opt.rel_tol = q.rel_tol;

  for (const auto& part : u.parts) {
    PartPlan plan = plan_part(part.prof.tail, x, s, q);
    if (plan.skip) continue;
    if (plan.conditional && out.status == EvalStatus::ok) {
      out.status = EvalStatus::conditional;
      out.note = "value exists as the symmetric-difference limit only (2s <= growth order)";
    }
    if (q.fixed_truncation > 0.0) plan.T = std::max(plan.T, q.fixed_truncation);
    const double T = std::max(plan.T, 2.0 * delta);

    const auto& prof = part.prof;
    const Complex u_here = prof.value(x);
    auto integrand = [&](double r) {
      Complex ang{0.0, 0.0};
      for (std::size_t k = 0; k < rule.dirs.size(); ++k) {
        const SpatialVec step = r * rule.dirs[k];
        ang += rule.wts[k] * (2.0 * u_here - prof.value(x + step) - prof.value(x - step));
      }
      return ang * std::pow(r, -1.0 - two_s);
    };

    Complex mid{0.0, 0.0};
    double mid_err = 0.0;
    if (T > delta) {
      if (q.fixed_panels) {
        auto est = integrate_panels(integrand, radial_breakpoints(delta, T, delta, plan.cap), 2);
        mid = est.value;
        mid_err = est.error;
      } else {
        auto est = integrate_adaptive(integrand, delta, T, opt);
        mid = est.value;
        mid_err = est.error;
      }
    }

    const double kernel_tail = std::pow(T, -two_s) / two_s;
    Complex tail = 2.0 * u_here * omega * kernel_tail;
    double tail_err = plan.residual * omega * kernel_tail * (1.0 + std::abs(u_here));
    switch (plan.tail) {
      case TailCase::exact_zero:
        break;
      case TailCase::affine_exact:
        // neighbors average exactly to 2 u(x): the tail cancels identically
        tail = Complex{0.0, 0.0};
        break;
      case TailCase::oscillatory: {
        // plane-wave structure: prof(x + r w) = prof(x) e^(i r k.w)
        for (std::size_t k = 0; k < rule.dirs.size(); ++k) {
          double rho_w = 0.0;
          for (int i = 0; i < n; ++i)
            rho_w += part.prof.tail.vec[static_cast<std::size_t>(i)] * rule.dirs[k][i];
          double oerr = 0.0;
          const Complex osc =
              osc_radial_tail(rho_w, two_s, T, &oerr) + osc_radial_tail(-rho_w, two_s, T, &oerr);
          tail -= rule.wts[k] * u_here * osc;
          tail_err += rule.wts[k] * std::abs(u_here) * oerr;
        }
        break;
      }
      case TailCase::algebraic: {
        // model each ray by its cut value times (r/T)^d
        Complex ray_sum{0.0, 0.0};
        double ray_mag = 0.0;
        for (std::size_t k = 0; k < rule.dirs.size(); ++k) {
          const SpatialVec step = T * rule.dirs[k];
          const Complex pair = prof.value(x + step) + prof.value(x - step);
          ray_sum += rule.wts[k] * pair;
          ray_mag += rule.wts[k] * std::abs(pair);
        }
        const double closed = std::pow(T, -two_s) / (two_s - plan.d);
        if (q.tail_model == TailModel::algebraic_extrapolation) {
          tail -= ray_sum * closed;
          tail_err += ray_mag * closed *
                      (0.05 + std::abs(plan.d) * (1.0 + x.norm()) / T);
        } else {
          tail_err += ray_mag * closed;
        }
        break;
      }
    }

    acc += part.coeff * half_C * (mid + tail);
    err += std::abs(part.coeff) * half_C * (mid_err + tail_err);
  }

  out.value = acc;
  out.err_estimate = err;
  return out;
}

EvalResult frac_laplacian_direct(const TestFunction& u, const SpatialVec& x,
                                 double t, const FractionalParams& p,
                                 const SpaceQuadrature& q) {
  return frac_laplacian(space_line(u, t), x, p, q);
}

SampledField frac_laplacian_spectral(const SampledField& f, const FractionalParams& p,
                                     EvalStatus* status, std::string* note) {
  if (f.frequency_domain)
    throw DomainError("frac_laplacian_spectral: input must be a physical-domain field");
  const SpaceTimeGrid& g = f.grid;
  if (g.dim() != p.n) throw DomainError("frac_laplacian_spectral: dimension mismatch");
  const int N = g.points_per_axis();
  const int M = g.t_steps();
  const std::size_t ns = g.spatial_size();

  const double total_mass = f.values.abs2().sum();
  double shell_mass = 0.0;
  for (std::size_t si = 0; si < ns; ++si) {
    const auto ix = g.spatial_multi(si);
    bool boundary = false;
    for (int a = 0; a < g.dim(); ++a)
      if (ix[static_cast<std::size_t>(a)] == 0 || ix[static_cast<std::size_t>(a)] == N - 1) boundary = true;
    if (!boundary) continue;
    for (int l = 0; l < M; ++l)
      shell_mass += std::norm(f.values[static_cast<Eigen::Index>(si * static_cast<std::size_t>(M) + static_cast<std::size_t>(l))]);
  }

  SampledField F = ft_spacetime(f);

  const double spec_mass = F.values.abs2().sum();
  double top_octave = 0.0;
  for (std::size_t si = 0; si < ns; ++si) {
    const auto ix = g.spatial_multi(si);
    bool top = false;
    for (int a = 0; a < g.dim(); ++a)
      if (std::abs(ix[static_cast<std::size_t>(a)] - N / 2) >= N / 4) top = true;
    if (!top) continue;
    for (int m = 0; m < M; ++m)
      top_octave += std::norm(F.values[static_cast<Eigen::Index>(si * static_cast<std::size_t>(M) + static_cast<std::size_t>(m))]);
  }

  EvalStatus st = EvalStatus::ok;
  std::string msg;
  if (total_mass > 0.0 && spec_mass > 0.0) {
    const double shell_frac = shell_mass / total_mass;
    const double top_frac = top_octave / spec_mass;
    if (shell_frac > 1e-10 && top_frac > 1e-3)
      throw DomainError(
          "frac_laplacian_spectral: field is not grid-periodic (boundary mass "
          "fraction " + std::to_string(shell_frac) + ", high-frequency mass fraction " +
          std::to_string(top_frac) + "); the periodic symbol product would alias");
    if (top_frac > 1e-8) {
      st = EvalStatus::warning;
      msg = "high-frequency spectral mass fraction " + std::to_string(top_frac) +
            " exceeds 1e-8: spatial resolution is marginal";
    } else if (shell_frac > 1e-10) {
      st = EvalStatus::ok;
      msg = "field touches the box boundary; treating it as grid-periodic";
    }
  }

  for (std::size_t si = 0; si < ns; ++si) {
    const auto ix = g.spatial_multi(si);
    double xi2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double xi = g.xi(ix[static_cast<std::size_t>(a)]);
      xi2 += xi * xi;
    }
    const double symbol = std::pow(xi2, p.s);
    for (int m = 0; m < M; ++m)
      F.values[static_cast<Eigen::Index>(si * static_cast<std::size_t>(M) + static_cast<std::size_t>(m))] *= symbol;
  }

  SampledField outf = ift_spacetime(F);
  if (status) *status = st;
  if (note) *note = msg;
  return outf;
}

}  // namespace fracdual
