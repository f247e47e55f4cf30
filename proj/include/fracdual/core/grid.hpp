#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "fracdual/core/test_function.hpp"
#include "fracdual/core/types.hpp"

namespace fracdual {

/// Uniform periodic box [-L, L)^n x [t_min, t_max): both axes half-open so
/// the DFT algebra is exact and roundtrips are lossless.
///
/// Frequency lattices are centered:
///   xi_k  = pi (k - N/2) / L,                    k = 0..N-1 per axis
///   rho_m = 2 pi (m - M/2) / (t_max - t_min),    m = 0..M-1
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(int n, double half_length, int points_per_axis, double t_min,
                double t_max, int t_steps)
      : n_(n),
        L_(half_length),
        N_(points_per_axis),
        t_min_(t_min),
        t_max_(t_max),
        M_(t_steps) {
    if (n < 1 || n > 3) throw DomainError("SpaceTimeGrid: dimension must be 1..3");
    if (!(half_length > 0.0)) throw DomainError("SpaceTimeGrid: half_length must be > 0");
    if (N_ < 8 || (N_ & (N_ - 1)) != 0)
      throw DomainError("SpaceTimeGrid: points_per_axis must be a power of two >= 8");
    if (M_ < 8 || M_ % 2 != 0)
      throw DomainError("SpaceTimeGrid: t_steps must be even and >= 8");
    if (!(t_max > t_min)) throw DomainError("SpaceTimeGrid: need t_max > t_min");
  }

  int dim() const { return n_; }
  double half_length() const { return L_; }
  int points_per_axis() const { return N_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  int t_steps() const { return M_; }

  double dx() const { return 2.0 * L_ / N_; }
  double dt() const { return (t_max_ - t_min_) / M_; }
  double x_coord(int i) const { return -L_ + i * dx(); }
  double t_coord(int l) const { return t_min_ + l * dt(); }
  double xi(int k) const { return M_PI * (k - N_ / 2) / L_; }
  double rho(int m) const { return 2.0 * M_PI * (m - M_ / 2) / (t_max_ - t_min_); }

  std::size_t spatial_size() const {
    std::size_t s = 1;
    for (int i = 0; i < n_; ++i) s *= static_cast<std::size_t>(N_);
    return s;
  }
  std::size_t size() const { return spatial_size() * static_cast<std::size_t>(M_); }

  /// Flat index, time fastest: ((i1 * N + i2) * N + i3) * M + l.
  std::size_t index(const std::array<int, 3>& ix, int l) const {
    std::size_t s = 0;
    for (int a = 0; a < n_; ++a)
      s = s * static_cast<std::size_t>(N_) + static_cast<std::size_t>(ix[static_cast<std::size_t>(a)]);
    return s * static_cast<std::size_t>(M_) + static_cast<std::size_t>(l);
  }

  /// Inverse of the spatial part of index(): multi-index from flat spatial id.
  std::array<int, 3> spatial_multi(std::size_t spatial_idx) const {
    std::array<int, 3> ix{0, 0, 0};
    for (int a = n_ - 1; a >= 0; --a) {
      ix[static_cast<std::size_t>(a)] = static_cast<int>(spatial_idx % static_cast<std::size_t>(N_));
      spatial_idx /= static_cast<std::size_t>(N_);
    }
    return ix;
  }

  SpatialVec x_point(std::size_t spatial_idx) const {
    const auto ix = spatial_multi(spatial_idx);
    SpatialVec x = spatial_zero(n_);
    for (int a = 0; a < n_; ++a) x[a] = x_coord(ix[static_cast<std::size_t>(a)]);
    return x;
  }

  bool operator==(const SpaceTimeGrid& o) const {
    return n_ == o.n_ && L_ == o.L_ && N_ == o.N_ && t_min_ == o.t_min_ &&
           t_max_ == o.t_max_ && M_ == o.M_;
  }

 private:
  int n_;
  double L_;
  int N_;
  double t_min_, t_max_;
  int M_;
};

/// Grid samples of a space-time field, flattened time-fastest.
struct SampledField {
  SpaceTimeGrid grid;
  Eigen::ArrayXcd values;
  bool frequency_domain = false;

  explicit SampledField(const SpaceTimeGrid& g, bool freq = false)
      : grid(g), values(Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(g.size()))),
        frequency_domain(freq) {}
};

/// Pointwise samples of a closed-form field on the grid.
inline SampledField sample_function(const TestFunction& u, const SpaceTimeGrid& g) {
  if (u.dim != g.dim()) throw DomainError("sample_function: dimension mismatch");
  SampledField f(g);
  const std::size_t ns = g.spatial_size();
  const int M = g.t_steps();
  for (std::size_t si = 0; si < ns; ++si) {
    const SpatialVec x = g.x_point(si);
    for (int l = 0; l < M; ++l)
      f.values[static_cast<Eigen::Index>(si * static_cast<std::size_t>(M) +
                                         static_cast<std::size_t>(l))] =
          u.eval(x, g.t_coord(l));
  }
  return f;
}

}  // namespace fracdual
