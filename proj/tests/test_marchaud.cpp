#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fracdual/core/test_function.hpp"
#include "fracdual/core/types.hpp"
#include "fracdual/marchaud/marchaud.hpp"

using namespace fracdual;

TEST_CASE("time symbol matches the closed form on both sides") {
  // left at rho = 1, alpha = 1/2: exp(i pi/4)
  const Complex l = time_symbol(1.0, 0.5, Side::left);
  CHECK(l.real() == doctest::Approx(0.70710678118654752440).epsilon(1e-14));
  CHECK(l.imag() == doctest::Approx(0.70710678118654752440).epsilon(1e-14));
  // right is the complex conjugate at every frequency
  for (double rho : {-3.0, -0.4, 0.7, 12.0}) {
    for (double alpha : {0.2, 0.5, 0.9}) {
      const Complex a = time_symbol(rho, alpha, Side::left);
      const Complex b = time_symbol(rho, alpha, Side::right);
      CHECK(std::abs(b - std::conj(a)) <= 1e-15);
      CHECK(std::abs(a) == doctest::Approx(std::pow(std::abs(rho), alpha)).epsilon(1e-14));
      CHECK(a.real() > 0.0);  // dissipative: strictly positive real part
      // negating the frequency conjugates the symbol
      CHECK(std::abs(time_symbol(-rho, alpha, Side::left) - std::conj(a)) <= 1e-15);
    }
  }
  CHECK(std::abs(time_symbol(0.0, 0.5, Side::left)) == 0.0);
}

TEST_CASE("derivative of a cosine matches the shifted-phase closed form") {
  // left derivative of cos(t) is Re[(i)^alpha e^{it}] = cos(t + alpha pi/2).
  const auto p = make_params(0.5, 0.5, 1);
  const auto w = make_plane_wave(1, spatial_point({0.0}), 1.0);  // e^{it} in time
  const auto x = spatial_point({0.0});
  // real part of marchaud of e^{it} equals the derivative of cos
  const auto at0 = marchaud_left(w, x, 0.0, p);
  CHECK(at0.value.real() == doctest::Approx(0.70710678118654752440).epsilon(1e-9));
  const auto at1 = marchaud_left(w, x, 1.0, p);
  CHECK(at1.value.real() == doctest::Approx(-0.21295841515929618765).epsilon(1e-8));
}

TEST_CASE("growing exponentials are eigenfunctions of the left derivative") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    const auto p = make_params(alpha, 0.5, 1);
    const auto u = make_exponential(1, 1.0);
    const auto x = spatial_point({0.0});
    for (double t : {-1.0, 0.0, 2.0}) {
      const auto r = marchaud_left(u, x, t, p);
      const double expect = std::exp(t);  // lambda = 1: 1^alpha e^t
      CHECK(std::abs(r.value.real() - expect) <= 1e-5 * expect);
      CHECK(std::abs(r.value.imag()) <= 1e-8 * expect);
    }
  }
  // lambda = 2: eigenvalue 2^alpha
  const auto p = make_params(0.5, 0.5, 1);
  const auto u2 = make_exponential(1, 2.0);
  const auto r2 = marchaud_left(u2, spatial_point({0.0}), 0.5, p);
  const double expect2 = std::pow(2.0, 0.5) * std::exp(1.0);
  CHECK(r2.value.real() == doctest::Approx(expect2).epsilon(1e-5));
}

TEST_CASE("left and right derivatives mirror under time reflection") {
  // v(t) = u(-t)  =>  (right derivative of v)(t) = (left derivative of u)(-t).
  const auto p = make_params(0.35, 0.5, 1);
  const auto u = make_gaussian(1, 1.0, 0.8, SpatialVec(), 0.4);
  const auto v = make_gaussian(1, 1.0, 0.8, SpatialVec(), -0.4);  // reflected center
  const auto x = spatial_point({0.0});
  for (double t : {-1.2, 0.0, 0.9}) {
    const auto rv = marchaud_right(v, x, t, p);
    const auto lu = marchaud_left(u, x, -t, p);
    CHECK(std::abs(rv.value - lu.value) <= 1e-8);
  }
}

TEST_CASE("derivative of a constant vanishes identically") {
  const auto p = make_params(0.6, 0.5, 1);
  const auto c = make_constant(1);
  const auto r = marchaud_left(c, spatial_point({0.0}), 1.3, p);
  CHECK(std::abs(r.value) <= 1e-13);
}

TEST_CASE("tightening tolerances does not move the value beyond the estimate") {
  const auto p = make_params(0.5, 0.5, 1);
  const auto u = make_gaussian(1);
  const auto x = spatial_point({0.3});
  TimeQuadrature loose;
  loose.abs_tol = 1e-8;
  loose.rel_tol = 1e-6;
  TimeQuadrature tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-11;
  const auto a = marchaud_left(u, x, 0.7, p, loose);
  const auto b = marchaud_left(u, x, 0.7, p, tight);
  CHECK(std::abs(a.value - b.value) <= std::max(a.err_estimate * 10.0, 1e-9));
}

TEST_CASE("profiles growing into the integration ray are rejected") {
  const auto p = make_params(0.5, 0.5, 1);
  // e^{-2t} explodes as t -> -inf, which the left derivative integrates over.
  const auto bad = make_exponential(1, -2.0);
  CHECK_THROWS_AS(marchaud_left(bad, spatial_point({0.0}), 0.0, p), DivergenceError);
  // the mirrored side is fine
  CHECK_NOTHROW(marchaud_right(bad, spatial_point({0.0}), 0.0, p));
}

TEST_CASE("quadrature controls are validated") {
  TimeQuadrature q;
  q.near_cut = -1.0;
  CHECK_THROWS_AS(q.validate(), DomainError);
  TimeQuadrature q2;
  q2.near_order = 3;
  CHECK_THROWS_AS(q2.validate(), DomainError);
  TimeQuadrature q3;
  q3.far_cut = q3.near_cut / 2.0;
  CHECK_THROWS_AS(q3.validate(), DomainError);
}
