#pragma once

namespace fracdual {

/// Gamma function on the real line, poles excluded.
///
/// Lanczos approximation (g = 607/128, 15 terms) for x >= 0.5, reflection
/// formula below.  Relative accuracy ~1e-14 away from the poles at
/// x = 0, -1, -2, ...  Throws DomainError at a pole.
double gamma_fn(double x);

/// log|Gamma(x)| with the same domain rules; used where Gamma itself would
/// overflow (x > 171).
double log_abs_gamma(double x);

/// sin(pi * x) computed with range reduction so the result keeps full
/// relative accuracy near integer x (where naive sin(M_PI * x) loses digits).
double sin_pi(double x);

}  // namespace fracdual
