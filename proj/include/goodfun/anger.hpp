#pragma once

#include "goodfun/constants.hpp"
#include "goodfun/core.hpp"

namespace goodfun {

struct AngerParams {
  double nu = 0.0;
  double x = 0.0;
  long k = 0;
};

/// Throws DomainError unless nu and x are finite and |k| <= 1e6.
AngerParams validate(const AngerParams& p);

/// J_nu(x) = (1/pi) int_0^pi cos(nu t - x sin t) dt, by quadrature.
EvalResult anger_J(double nu, double x, const QuadConfig& cfg = {});

// Large-x forms. All require x > 2 and carry err = C / x with the calibrated C.

/// J_x(x) ~ (sqrt3 / (6 pi)) Gamma(1/3) (6/x)^(1/3).
EvalResult anger_diag_asym(double x, const Constants& c = {});

/// J_x(-x) ~ (Gamma(1/3) / (3 pi)) (6/x)^(1/3) cos(pi (x - 1/6)).
EvalResult anger_reflected_asym(double x, const Constants& c = {});

/// J_{x+k}(-x) ~ ((-1)^k / (3 pi)) [Gamma(1/3) (6/x)^(1/3) cos(pi (x - 1/6))
///                                 + k Gamma(2/3) (6/x)^(2/3) sin(pi (x - 1/3))],
/// err = c_shift (1 + |k|^3) / x.
EvalResult anger_shifted_asym(double x, long k, const Constants& c = {});

}  // namespace goodfun
