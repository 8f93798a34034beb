#pragma once

#include "goodfun/core.hpp"

namespace goodfun {

/// |(G(x+h) - 2 G(x) + G(x-h)) / h^2 - rho^2 G(x) + J_gamma(-x)|, which vanishes
/// for the exact functions since G'' - rho^2 G = -J_gamma(-x).
struct OdeResidual {
  double residual = 0.0;
  double noise_floor = 0.0;  // 4 * (quadrature err + rounding) / h^2
};

OdeResidual ode_residual(double gamma, double rho, double x, double h_step, const QuadConfig& cfg = {});

/// Truncation of the Anger series at k = 2, 4, ..., K.
struct SeriesTruncation {
  int K = 2;
  double beta = 1.0;     // sqrt(1 + rho^2)
  double t_param = 0.0;  // log(rho + beta)
  double tail_bound = 0.0;
};

SeriesTruncation series_truncation(double rho, int K);

struct SeriesSum {
  double value = 0.0;
  double err = 0.0;  // accumulated quadrature error of the Anger terms
  SeriesTruncation truncation;
};

/// G = (1/(rho beta)) (J_gamma(-x) + sum_{k=2,4,..,K} e^{-k t} (J_{gamma+k}(-x) + J_{gamma-k}(-x))).
SeriesSum series_partial_sum(double gamma, double rho, double x, int K, const QuadConfig& cfg = {});

/// Q_{gamma,xi}(x) = sqrt(1+rho^2) G_gamma + (G_{gamma+1} + G_{gamma-1}) / 2 with rho = sqrt(xi^2 - 1).
/// For gamma < 1 the order gamma - 1 is negative and evaluated from the integral directly.
EvalResult q_from_g(double gamma, double xi, double x, const QuadConfig& cfg = {});

}  // namespace goodfun
