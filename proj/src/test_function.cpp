#include "fracdual/core/test_function.hpp"

#include <cmath>

namespace fracdual {

namespace {

// Below this distance from the ramp edges the mollifier seed underflows;
// clamping there keeps every branch NaN-free (the clamped tail is < 1e-200).
constexpr double kRampEdge = 2e-3;

constexpr Complex kZero{0.0, 0.0};

double radius(const SpatialVec& x) { return x.norm(); }

}  // namespace

double mollifier_h(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double smooth_step(double u) {
  if (u <= kRampEdge) return 0.0;
  if (u >= 1.0 - kRampEdge) return 1.0;
  const double a = mollifier_h(u);
  const double b = mollifier_h(1.0 - u);
  return a / (a + b);
}

double smooth_step_d1(double u) {
  if (u <= kRampEdge || u >= 1.0 - kRampEdge) return 0.0;
  const double a = mollifier_h(u);
  const double b = mollifier_h(1.0 - u);
  const double d = a + b;
  // S' = (a'b - ab') / d^2 with a' = a/u^2, b' = -b/(1-u)^2.
  const double iu2 = 1.0 / (u * u);
  const double iv2 = 1.0 / ((1.0 - u) * (1.0 - u));
  return a * b * (iu2 + iv2) / (d * d);
}

double smooth_step_d2(double u) {
  if (u <= kRampEdge || u >= 1.0 - kRampEdge) return 0.0;
  const double a = mollifier_h(u);
  const double b = mollifier_h(1.0 - u);
  const double v = 1.0 - u;
  const double ap = a / (u * u);
  const double bp = -b / (v * v);
  const double app = a * (1.0 - 2.0 * u) / (u * u * u * u);
  const double bpp = b * (2.0 * u - 1.0) / (v * v * v * v);
  const double d = a + b;
  const double dp = ap + bp;
  const double p = ap * b - a * bp;
  const double pp = app * b - a * bpp;
  return (pp * d - 2.0 * p * dp) / (d * d * d);
}

double smooth_bump01(double u) {
  if (u <= kRampEdge || u >= 1.0 - kRampEdge) return 0.0;
  return std::exp(4.0 - 1.0 / u - 1.0 / (1.0 - u));
}

double smooth_bump01_d1(double u) {
  if (u <= kRampEdge || u >= 1.0 - kRampEdge) return 0.0;
  const double v = 1.0 - u;
  const double qp = -1.0 / (u * u) + 1.0 / (v * v);
  return -qp * smooth_bump01(u);
}

double smooth_bump01_d2(double u) {
  if (u <= kRampEdge || u >= 1.0 - kRampEdge) return 0.0;
  const double v = 1.0 - u;
  const double qp = -1.0 / (u * u) + 1.0 / (v * v);
  const double qpp = 2.0 / (u * u * u) + 2.0 / (v * v * v);
  return (qp * qp - qpp) * smooth_bump01(u);
}

// ---- profile factories ----

namespace {

TemporalProfile temporal_constant() {
  TemporalProfile p;
  p.value = [](double) { return Complex{1.0, 0.0}; };
  p.d1 = [](double) { return kZero; };
  p.d2 = [](double) { return kZero; };
  p.tail = {TailKind::constant, 0.0, 0.0, {}};
  return p;
}

SpatialProfile spatial_constant() {
  SpatialProfile p;
  p.value = [](const SpatialVec&) { return Complex{1.0, 0.0}; };
  p.d1 = [](const SpatialVec&, int) { return kZero; };
  p.d2 = [](const SpatialVec&, int, int) { return kZero; };
  p.tail = {TailKind::constant, 0.0, 0.0, {}};
  return p;
}

TemporalProfile temporal_gaussian(double ct, double wt) {
  TemporalProfile p;
  const double iw2 = 1.0 / (wt * wt);
  p.value = [=](double t) {
    const double z = t - ct;
    return Complex{std::exp(-0.5 * z * z * iw2), 0.0};
  };
  p.d1 = [=](double t) {
    const double z = t - ct;
    return Complex{-z * iw2 * std::exp(-0.5 * z * z * iw2), 0.0};
  };
  p.d2 = [=](double t) {
    const double z = t - ct;
    return Complex{(z * z * iw2 - 1.0) * iw2 * std::exp(-0.5 * z * z * iw2), 0.0};
  };
  p.tail = {TailKind::gaussian, ct, wt, {}};
  return p;
}

SpatialProfile spatial_gaussian(const SpatialVec& cx, double wx) {
  SpatialProfile p;
  const double iw2 = 1.0 / (wx * wx);
  const SpatialVec c = cx;
  auto g = [=](const SpatialVec& x) {
    return std::exp(-0.5 * (x - c).squaredNorm() * iw2);
  };
  p.value = [=](const SpatialVec& x) { return Complex{g(x), 0.0}; };
  p.d1 = [=](const SpatialVec& x, int i) {
    return Complex{-(x[i] - c[i]) * iw2 * g(x), 0.0};
  };
  p.d2 = [=](const SpatialVec& x, int i, int j) {
    const double zi = x[i] - c[i], zj = x[j] - c[j];
    const double kron = (i == j) ? 1.0 : 0.0;
    return Complex{(zi * zj * iw2 - kron) * iw2 * g(x), 0.0};
  };
  p.tail.kind = TailKind::gaussian;
  p.tail.b = wx;
  for (int i = 0; i < c.size(); ++i) p.tail.vec[static_cast<std::size_t>(i)] = c[i];
  return p;
}

// eta: -1 on |x| <= 1, 0 on |x| >= 2, monotone C-infinity ramp between.
SpatialProfile spatial_well() {
  SpatialProfile p;
  p.value = [](const SpatialVec& x) {
    const double r = radius(x);
    if (r >= 2.0) return kZero;
    return Complex{-smooth_step(2.0 - r), 0.0};
  };
  p.d1 = [](const SpatialVec& x, int i) {
    const double r = radius(x);
    if (r <= 1.0 || r >= 2.0) return kZero;
    return Complex{smooth_step_d1(2.0 - r) * x[i] / r, 0.0};
  };
  p.d2 = [](const SpatialVec& x, int i, int j) {
    const double r = radius(x);
    if (r <= 1.0 || r >= 2.0) return kZero;
    const double sp = smooth_step_d1(2.0 - r);
    const double spp = smooth_step_d2(2.0 - r);
    const double kron = (i == j) ? 1.0 : 0.0;
    const double v = -spp * x[i] * x[j] / (r * r) +
                     sp * (kron * r * r - x[i] * x[j]) / (r * r * r);
    return Complex{v, 0.0};
  };
  p.tail = {TailKind::compact, 0.0, 2.0, {}};
  return p;
}

// phi: 1 on |t| <= 1, 0 on |t| >= 2.
TemporalProfile temporal_plateau() {
  TemporalProfile p;
  p.value = [](double t) {
    const double a = std::abs(t);
    if (a >= 2.0) return kZero;
    return Complex{smooth_step(2.0 - a), 0.0};
  };
  p.d1 = [](double t) {
    const double a = std::abs(t);
    if (a <= 1.0 || a >= 2.0) return kZero;
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    return Complex{-smooth_step_d1(2.0 - a) * sgn, 0.0};
  };
  p.d2 = [](double t) {
    const double a = std::abs(t);
    if (a <= 1.0 || a >= 2.0) return kZero;
    return Complex{smooth_step_d2(2.0 - a), 0.0};
  };
  p.tail = {TailKind::compact, -2.0, 2.0, {}};
  return p;
}

TemporalProfile temporal_bump(double lo, double hi) {
  TemporalProfile p;
  const double w = hi - lo;
  p.value = [=](double t) { return Complex{smooth_bump01((t - lo) / w), 0.0}; };
  p.d1 = [=](double t) { return Complex{smooth_bump01_d1((t - lo) / w) / w, 0.0}; };
  p.d2 = [=](double t) {
    return Complex{smooth_bump01_d2((t - lo) / w) / (w * w), 0.0};
  };
  p.tail = {TailKind::compact, lo, hi, {}};
  return p;
}

}  // namespace

// ---- TestFunction ----

Complex TestFunction::eval(const SpatialVec& x, double t) const {
  Complex acc = kZero;
  for (const auto& term : terms)
    acc += term.coeff * term.space.value(x) * term.time.value(t);
  return acc;
}

Complex TestFunction::deriv(const SpatialVec& x, double t,
                            const std::array<int, 3>& gamma, int beta) const {
  int order = 0;
  int idx[2] = {-1, -1};
  for (int i = 0; i < 3; ++i) {
    if (gamma[static_cast<std::size_t>(i)] < 0)
      throw DomainError("TestFunction::deriv: negative derivative order");
    for (int k = 0; k < gamma[static_cast<std::size_t>(i)]; ++k) {
      if (order >= 2) throw DomainError("TestFunction::deriv: |gamma| must be <= 2");
      if (i >= dim) throw DomainError("TestFunction::deriv: axis beyond dimension");
      idx[order++] = i;
    }
  }
  if (beta < 0 || beta > 2)
    throw DomainError("TestFunction::deriv: time order beta must be 0, 1, or 2");

  Complex acc = kZero;
  for (const auto& term : terms) {
    Complex sf;
    if (order == 0) {
      sf = term.space.value(x);
    } else if (order == 1) {
      if (!term.space.d1)
        throw DomainError("TestFunction::deriv: spatial derivative unavailable for " + name);
      sf = term.space.d1(x, idx[0]);
    } else {
      if (!term.space.d2)
        throw DomainError("TestFunction::deriv: spatial derivative unavailable for " + name);
      sf = term.space.d2(x, idx[0], idx[1]);
    }
    Complex tf;
    if (beta == 0) {
      tf = term.time.value(t);
    } else if (beta == 1) {
      if (!term.time.d1)
        throw DomainError("TestFunction::deriv: time derivative unavailable for " + name);
      tf = term.time.d1(t);
    } else {
      if (!term.time.d2)
        throw DomainError("TestFunction::deriv: time derivative unavailable for " + name);
      tf = term.time.d2(t);
    }
    acc += term.coeff * sf * tf;
  }
  return acc;
}

// ---- line restrictions ----

Complex TimeLine::value(double t) const {
  Complex acc = kZero;
  for (const auto& p : parts) acc += p.coeff * p.prof.value(t);
  return acc;
}
Complex TimeLine::d1(double t) const {
  Complex acc = kZero;
  for (const auto& p : parts) {
    if (!p.prof.d1) throw DomainError("TimeLine::d1: derivative unavailable");
    acc += p.coeff * p.prof.d1(t);
  }
  return acc;
}
Complex TimeLine::d2(double t) const {
  Complex acc = kZero;
  for (const auto& p : parts) {
    if (!p.prof.d2) throw DomainError("TimeLine::d2: derivative unavailable");
    acc += p.coeff * p.prof.d2(t);
  }
  return acc;
}

Complex SpaceLine::value(const SpatialVec& x) const {
  Complex acc = kZero;
  for (const auto& p : parts) acc += p.coeff * p.prof.value(x);
  return acc;
}

Complex SpaceLine::hess_quad(const SpatialVec& x, const SpatialVec& omega) const {
  Complex acc = kZero;
  for (const auto& p : parts) {
    if (!p.prof.d2) throw DomainError("SpaceLine::hess_quad: Hessian unavailable");
    for (int i = 0; i < dim; ++i) {
      acc += p.coeff * omega[i] * omega[i] * p.prof.d2(x, i, i);
      for (int j = i + 1; j < dim; ++j)
        acc += 2.0 * p.coeff * omega[i] * omega[j] * p.prof.d2(x, i, j);
    }
  }
  return acc;
}

Complex SpaceLine::laplacian(const SpatialVec& x) const {
  Complex acc = kZero;
  for (const auto& p : parts) {
    if (!p.prof.d2) throw DomainError("SpaceLine::laplacian: Hessian unavailable");
    for (int i = 0; i < dim; ++i) acc += p.coeff * p.prof.d2(x, i, i);
  }
  return acc;
}

TimeLine time_line(const TestFunction& u, const SpatialVec& x0) {
  TimeLine line;
  for (const auto& term : u.terms) {
    const Complex c = term.coeff * term.space.value(x0);
    if (c == kZero) continue;
    line.parts.push_back({c, term.time});
  }
  return line;
}

SpaceLine space_line(const TestFunction& u, double t0) {
  SpaceLine line;
  line.dim = u.dim;
  for (const auto& term : u.terms) {
    const Complex c = term.coeff * term.time.value(t0);
    if (c == kZero) continue;
    line.parts.push_back({c, term.space});
  }
  return line;
}

// ---- built-ins ----

TestFunction make_constant(int n, Complex c) {
  TestFunction u;
  u.name = "constant";
  u.dim = n;
  u.decay_class = DecayClass::constant;
  u.terms.push_back({c, spatial_constant(), temporal_constant()});
  u.params["value_re"] = c.real();
  u.params["value_im"] = c.imag();
  return u;
}

TestFunction make_affine_x1(int n) {
  TestFunction u;
  u.name = "affine_x1";
  u.dim = n;
  u.decay_class = DecayClass::polynomial;
  SpatialProfile p;
  p.value = [](const SpatialVec& x) { return Complex{x[0], 0.0}; };
  p.d1 = [](const SpatialVec&, int i) { return Complex{i == 0 ? 1.0 : 0.0, 0.0}; };
  p.d2 = [](const SpatialVec&, int, int) { return kZero; };
  p.tail = {TailKind::poly, 1.0, 0.0, {}};
  u.terms.push_back({Complex{1.0, 0.0}, p, temporal_constant()});
  return u;
}

TestFunction make_gaussian(int n, double width_x, double width_t,
                           const SpatialVec& center_x, double center_t) {
  if (!(width_x > 0.0) || !(width_t > 0.0))
    throw DomainError("make_gaussian: widths must be positive");
  TestFunction u;
  u.name = "gaussian";
  u.dim = n;
  u.decay_class = DecayClass::schwartz;
  SpatialVec c = center_x.size() == n ? center_x : spatial_zero(n);
  u.terms.push_back(
      {Complex{1.0, 0.0}, spatial_gaussian(c, width_x), temporal_gaussian(center_t, width_t)});
  u.params["width_x"] = width_x;
  u.params["width_t"] = width_t;
  u.params["center_t"] = center_t;
  return u;
}

TestFunction make_cutoff_product(int n) {
  TestFunction u;
  u.name = "cutoff_product";
  u.dim = n;
  u.decay_class = DecayClass::bump;
  u.terms.push_back({Complex{1.0, 0.0}, spatial_well(), temporal_plateau()});
  return u;
}

TestFunction make_time_bump(int n, double lo, double hi) {
  if (!(hi > lo)) throw DomainError("make_time_bump: need hi > lo");
  TestFunction u;
  u.name = "time_bump";
  u.dim = n;
  u.decay_class = DecayClass::bump;
  u.terms.push_back({Complex{1.0, 0.0}, spatial_constant(), temporal_bump(lo, hi)});
  u.params["lo"] = lo;
  u.params["hi"] = hi;
  return u;
}

TestFunction make_plane_wave(int n, const SpatialVec& xi, double rho) {
  if (xi.size() != n) throw DomainError("make_plane_wave: xi must have dimension n");
  TestFunction u;
  u.name = "plane_wave";
  u.dim = n;
  u.decay_class = DecayClass::plane_wave;

  SpatialProfile sp;
  const SpatialVec k = xi;
  sp.value = [=](const SpatialVec& x) {
    return std::exp(Complex{0.0, k.dot(x.head(k.size()))});
  };
  sp.d1 = [=](const SpatialVec& x, int i) {
    return Complex{0.0, k[i]} * std::exp(Complex{0.0, k.dot(x.head(k.size()))});
  };
  sp.d2 = [=](const SpatialVec& x, int i, int j) {
    return -k[i] * k[j] * std::exp(Complex{0.0, k.dot(x.head(k.size()))});
  };
  sp.tail.kind = TailKind::wave;
  sp.tail.a = k.norm();
  for (int i = 0; i < n; ++i) sp.tail.vec[static_cast<std::size_t>(i)] = k[i];

  TemporalProfile tp;
  tp.value = [=](double t) { return std::exp(Complex{0.0, rho * t}); };
  tp.d1 = [=](double t) { return Complex{0.0, rho} * std::exp(Complex{0.0, rho * t}); };
  tp.d2 = [=](double t) { return -rho * rho * std::exp(Complex{0.0, rho * t}); };
  tp.tail = {TailKind::wave, rho, 0.0, {}};

  u.terms.push_back({Complex{1.0, 0.0}, sp, tp});
  u.params["rho"] = rho;
  for (int i = 0; i < n; ++i) u.params["xi" + std::to_string(i + 1)] = xi[i];
  return u;
}

TestFunction make_exponential(int n, double lambda) {
  TestFunction u;
  u.name = "exponential";
  u.dim = n;
  u.decay_class = DecayClass::exponential;
  TemporalProfile tp;
  tp.value = [=](double t) { return Complex{std::exp(lambda * t), 0.0}; };
  tp.d1 = [=](double t) { return Complex{lambda * std::exp(lambda * t), 0.0}; };
  tp.d2 = [=](double t) { return Complex{lambda * lambda * std::exp(lambda * t), 0.0}; };
  tp.tail = {TailKind::exp_rate, lambda, 0.0, {}};
  u.terms.push_back({Complex{1.0, 0.0}, spatial_constant(), tp});
  u.params["lambda"] = lambda;
  return u;
}

TestFunction make_poly_t2(int n) {
  TestFunction u;
  u.name = "poly_t2";
  u.dim = n;
  u.decay_class = DecayClass::polynomial;
  TemporalProfile tp;
  tp.value = [](double t) { return Complex{t * t, 0.0}; };
  tp.d1 = [](double t) { return Complex{2.0 * t, 0.0}; };
  tp.d2 = [](double) { return Complex{2.0, 0.0}; };
  tp.tail = {TailKind::poly, 2.0, 0.0, {}};
  u.terms.push_back({Complex{1.0, 0.0}, spatial_constant(), tp});
  return u;
}

TestFunction make_inv_quadratic(int n) {
  TestFunction u;
  u.name = "inv_quadratic";
  u.dim = n;
  u.decay_class = DecayClass::polynomial;
  SpatialProfile p;
  p.value = [](const SpatialVec& x) {
    return Complex{1.0 / (1.0 + x.squaredNorm()), 0.0};
  };
  p.d1 = [](const SpatialVec& x, int i) {
    const double v = 1.0 / (1.0 + x.squaredNorm());
    return Complex{-2.0 * x[i] * v * v, 0.0};
  };
  p.d2 = [](const SpatialVec& x, int i, int j) {
    const double v = 1.0 / (1.0 + x.squaredNorm());
    const double kron = (i == j) ? 1.0 : 0.0;
    return Complex{-2.0 * kron * v * v + 8.0 * x[i] * x[j] * v * v * v, 0.0};
  };
  p.tail = {TailKind::poly, -2.0, 0.0, {}};
  u.terms.push_back({Complex{1.0, 0.0}, p, temporal_constant()});
  return u;
}

TestFunction make_sqrt_radial(int n) {
  TestFunction u;
  u.name = "sqrt_radial";
  u.dim = n;
  u.decay_class = DecayClass::polynomial;
  SpatialProfile p;
  p.value = [](const SpatialVec& x) { return Complex{std::sqrt(x.norm()), 0.0}; };
  // no d1/d2: the kink at the origin makes classical derivatives unavailable
  p.tail = {TailKind::poly, 0.5, 0.0, {}};
  u.terms.push_back({Complex{1.0, 0.0}, p, temporal_constant()});
  return u;
}

TestFunction make_quadratic_radial(int n) {
  TestFunction u;
  u.name = "quadratic_radial";
  u.dim = n;
  u.decay_class = DecayClass::polynomial;
  SpatialProfile p;
  p.value = [](const SpatialVec& x) { return Complex{x.squaredNorm(), 0.0}; };
  p.d1 = [](const SpatialVec& x, int i) { return Complex{2.0 * x[i], 0.0}; };
  p.d2 = [](const SpatialVec&, int i, int j) {
    return Complex{i == j ? 2.0 : 0.0, 0.0};
  };
  p.tail = {TailKind::poly, 2.0, 0.0, {}};
  u.terms.push_back({Complex{1.0, 0.0}, p, temporal_constant()});
  return u;
}

TestFunction make_by_name(const std::string& name, int n) {
  if (name == "constant") return make_constant(n);
  if (name == "zero") {
    TestFunction u = make_constant(n, Complex{0.0, 0.0});
    u.name = "zero";
    return u;
  }
  if (name == "affine") return make_affine_x1(n);
  if (name == "gaussian") return make_gaussian(n);
  if (name == "cutoff") return make_cutoff_product(n);
  if (name == "bump") return make_time_bump(n, -1.0, 0.0);
  if (name == "planewave") {
    SpatialVec xi = spatial_zero(n);
    xi[0] = 1.0;
    return make_plane_wave(n, xi, 1.0);
  }
  if (name == "exponential") return make_exponential(n, 1.0);
  if (name == "invquad") return make_inv_quadratic(n);
  throw DomainError("unknown built-in function '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"constant", "zero",      "affine",      "gaussian", "cutoff",
          "bump",     "planewave", "exponential", "invquad"};
}

}  // namespace fracdual
