#include "fracdual/dualop/fourier.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace fracdual {

namespace {

// Extracts each length-K line along the axis with element stride `st`,
// applies `op` to it in place, and writes it back.  The flat layout is
// time-fastest, so lines along an axis sit at base + j*st with the bases
// enumerating all index combinations of the other axes.
template <class Op>
void for_each_line(Eigen::ArrayXcd& vals, int K, std::size_t st, Op&& op) {
  const std::size_t total = static_cast<std::size_t>(vals.size());
  std::vector<Complex> line(static_cast<std::size_t>(K));
  for (std::size_t hi = 0; hi < total; hi += static_cast<std::size_t>(K) * st) {
    for (std::size_t lo = 0; lo < st; ++lo) {
      const std::size_t base = hi + lo;
      for (int j = 0; j < K; ++j)
        line[static_cast<std::size_t>(j)] = vals[static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * st)];
      op(line);
      for (int j = 0; j < K; ++j)
        vals[static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * st)] = line[static_cast<std::size_t>(j)];
    }
  }
}

// Forward centered DFT of one axis (no step/normalization factors):
//   out_k = e^(-i nu_k a0) * sum_j in_j (-1)^j e^(-2 pi i j k / K),
// which equals sum_j in_j e^(-i nu_k a_j) for a_j = a0 + j*step and
// nu_k = 2 pi (k - K/2) / (K step).
void axis_forward(Eigen::ArrayXcd& vals, int K, std::size_t st, double a0, double step) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out(static_cast<std::size_t>(K));
  const double dnu = 2.0 * M_PI / (K * step);
  std::vector<Complex> phase(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const double nu = dnu * (k - K / 2);
    phase[static_cast<std::size_t>(k)] = std::exp(Complex{0.0, -nu * a0});
  }
  for_each_line(vals, K, st, [&](std::vector<Complex>& line) {
    for (int j = 1; j < K; j += 2) line[static_cast<std::size_t>(j)] = -line[static_cast<std::size_t>(j)];
    fft.fwd(out, line);
    for (int k = 0; k < K; ++k)
      line[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k)] * phase[static_cast<std::size_t>(k)];
  });
}

// Exact inverse of axis_forward.
void axis_inverse(Eigen::ArrayXcd& vals, int K, std::size_t st, double a0, double step) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out(static_cast<std::size_t>(K));
  const double dnu = 2.0 * M_PI / (K * step);
  std::vector<Complex> phase(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const double nu = dnu * (k - K / 2);
    phase[static_cast<std::size_t>(k)] = std::exp(Complex{0.0, nu * a0});
  }
  for_each_line(vals, K, st, [&](std::vector<Complex>& line) {
    for (int k = 0; k < K; ++k) line[static_cast<std::size_t>(k)] *= phase[static_cast<std::size_t>(k)];
    fft.inv(out, line);  // includes the 1/K factor
    for (int j = 0; j < K; ++j)
      line[static_cast<std::size_t>(j)] = (j % 2 == 1) ? -out[static_cast<std::size_t>(j)] : out[static_cast<std::size_t>(j)];
  });
}

}  // namespace

SampledField ft_spacetime(const SampledField& f) {
  if (f.frequency_domain)
    throw DomainError("ft_spacetime: input is already a frequency-domain field");
  const SpaceTimeGrid& g = f.grid;
  SampledField out(g, true);
  out.values = f.values;

  const int n = g.dim();
  const int N = g.points_per_axis();
  const int M = g.t_steps();

  // time axis: contiguous (stride 1)
  axis_forward(out.values, M, 1, g.t_min(), g.dt());
  // spatial axes: axis a has stride M * N^(n-1-a)
  std::size_t st = static_cast<std::size_t>(M);
  for (int a = n - 1; a >= 0; --a) {
    axis_forward(out.values, N, st, -g.half_length(), g.dx());
    st *= static_cast<std::size_t>(N);
  }

  double scale = g.dt();
  for (int a = 0; a < n; ++a) scale *= g.dx();
  scale *= std::pow(2.0 * M_PI, -0.5 * (n + 1));
  out.values *= scale;
  return out;
}

SampledField ift_spacetime(const SampledField& f) {
  if (!f.frequency_domain)
    throw DomainError("ift_spacetime: input is not a frequency-domain field");
  const SpaceTimeGrid& g = f.grid;
  SampledField out(g, false);
  out.values = f.values;

  const int n = g.dim();
  const int N = g.points_per_axis();
  const int M = g.t_steps();

  double scale = g.dt();
  for (int a = 0; a < n; ++a) scale *= g.dx();
  scale *= std::pow(2.0 * M_PI, -0.5 * (n + 1));
  out.values /= scale;

  axis_inverse(out.values, M, 1, g.t_min(), g.dt());
  std::size_t st = static_cast<std::size_t>(M);
  for (int a = n - 1; a >= 0; --a) {
    axis_inverse(out.values, N, st, -g.half_length(), g.dx());
    st *= static_cast<std::size_t>(N);
  }
  return out;
}

Eigen::ArrayXcd dft_line_forward(const Eigen::ArrayXcd& samples, double step, double a0) {
  const int K = static_cast<int>(samples.size());
  if (K < 2 || K % 2 != 0)
    throw DomainError("dft_line_forward: need an even number of samples");
  Eigen::ArrayXcd work = samples;
  axis_forward(work, K, 1, a0, step);
  return work * step;
}

}  // namespace fracdual
