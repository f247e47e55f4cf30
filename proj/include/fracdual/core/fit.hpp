#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracdual/core/types.hpp"

namespace fracdual {

/// Ordinary least squares y ~ slope * x + intercept with R^2.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

inline LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) throw FitError("fit_line: need >= 2 paired samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw FitError("fit_line: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = ys[i] - (f.intercept + f.slope * xs[i]);
      ss_res += e * e;
    }
    f.r2 = 1.0 - ss_res / syy;
    if (f.r2 < 0.0) f.r2 = 0.0;
  }
  return f;
}

/// Log-log power fit: magnitude ~ C * r^slope.  Throws FitError when any
/// magnitude underflows (no signal).
inline LinearFit fit_power_law(const std::vector<std::pair<double, double>>& samples) {
  std::vector<double> xs, ys;
  xs.reserve(samples.size());
  ys.reserve(samples.size());
  for (const auto& [r, mag] : samples) {
    if (!(r > 0.0)) throw FitError("fit_power_law: nonpositive radius");
    if (!(mag > 1e-290)) throw FitError("fit_power_law: sample magnitude underflowed");
    xs.push_back(std::log(r));
    ys.push_back(std::log(mag));
  }
  return fit_line(xs, ys);
}

}  // namespace fracdual
