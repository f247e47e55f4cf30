#pragma once

#include <Eigen/Dense>

#include "fracdual/core/grid.hpp"

namespace fracdual {

/// Forward space-time transform on the grid's centered frequency lattice:
///   F(xi_k, rho_m) = (2 pi)^(-(n+1)/2) * sum f(x, t) e^(-i(xi.x + rho t)) dx^n dt
/// computed axis by axis as a centered DFT (exact for the lattice duality of
/// the periodic box).  Input must be a physical-domain field.
SampledField ft_spacetime(const SampledField& f);

/// Exact algebraic inverse of ft_spacetime (roundtrip is lossless to
/// rounding).  Input must be a frequency-domain field.
SampledField ift_spacetime(const SampledField& f);

/// One-axis helper used by the verification pipeline: given samples f_j at
/// points a0 + j*step (j = 0..K-1), returns
///   T_k = step * sum_j f_j e^(-i nu_k (a0 + j step)),
///   nu_k = 2 pi (k - K/2) / (K step),
/// i.e. the Riemann-sum transform on the centered lattice, no (2 pi) factor.
Eigen::ArrayXcd dft_line_forward(const Eigen::ArrayXcd& samples, double step,
                                 double a0);

}  // namespace fracdual
