#pragma once

#include "goodfun/constants.hpp"
#include "goodfun/core.hpp"

namespace goodfun {

/// int_0^inf exp(i lambda t^3 / 6) / (1 + t^2) dt = c_mod * exp(i pi psi_arg).
struct CubicTailIntegral {
  double lambda = 0.0;
  complex value;
  double c_mod = 0.0;
  double psi_arg = 0.0;  // in (-1/2, 1/2) since Re value > 0
  double err = 0.0;
  bool converged = true;
};

/// Evaluated on the ray t e^{i pi/6}, where the integrand becomes
/// e^{i pi/6} exp(-lambda t^3 / 6) / (1 + e^{i pi/3} t^2) and decays
/// super-exponentially. lambda = 0 returns pi/2 exactly.
CubicTailIntegral cubic_tail(double lambda, const QuadConfig& cfg = {});

struct ComplexApprox {
  complex main;
  double rest_bound = 0.0;
};

/// int_0^inf exp(i lambda u^3) / (1 + u^2) du
///   = e^{i pi/6} Gamma(1/3) / (3 lambda^(1/3)) + R,  |R| <= 1/(3 lambda).
ComplexApprox i_lambda_asym(double lambda);

/// Quadrature value of the same integral, i.e. cubic_tail(6 lambda).
CubicTailIntegral i_lambda_oracle(double lambda, const QuadConfig& cfg = {});

/// H ~ (Gamma(1/3) / (3 pi rho^2)) cos(pi (x - 1/6)) (6/x)^(1/3), for x > 2.
/// err = c_large max(rho^-4, rho^-2) / x.
EvalResult h_asym_large(double x, double rho, const Constants& c = {});

/// H ~ e^{-2 x rho} / (2 rho) + (1/(pi rho)) Re{e^{-i pi x} cubic_tail(x rho^3)}, err = c_small.
EvalResult h_asym_small(double x, double rho, const QuadConfig& cfg = {}, const Constants& c = {});

/// Regime of (x, rho) by the scaling products s = x rho^3 and u = x rho.
Regime classify(double x, double rho, const Constants& c = {});

struct RegimeApprox {
  Regime regime;
  EvalResult result;  // asymptotic for every regime except FIXED_POINT (oracle)
};

/// Routes to h_asym_large, h_asym_small or the quadrature oracle per classify().
RegimeApprox h_approx(double x, double rho, const QuadConfig& cfg = {}, const Constants& c = {});

/// Main terms along the path x = eta rho^(-alpha).
enum class PathRow {
  alpha_above_3,   // large-s term
  alpha_equals_3,  // (C(eta) / (pi rho)) cos(pi (x - psi(eta)))
  alpha_1_to_3,    // cos(pi x) / (2 rho)
  alpha_equals_1,  // (e^{-2 eta} + cos(pi x)) / (2 rho)
  alpha_below_1,   // (1 + cos(pi x)) / (2 rho)
};

const char* to_string(PathRow row);
PathRow path_row(double alpha);

struct PathMain {
  PathRow row = PathRow::alpha_below_1;
  double x = 0.0;
  EvalResult result;
};

/// Throws DomainError unless alpha > 0, eta > 0, rho > 0 and x = eta rho^-alpha > 2.
PathMain corollary_path_main(double alpha, double eta, double rho, const QuadConfig& cfg = {},
                             const Constants& c = {});

}  // namespace goodfun
