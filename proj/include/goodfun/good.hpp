#pragma once

#include "goodfun/core.hpp"

namespace goodfun {

/// H(x, rho) together with the complex integral it is the real part of.
struct HValue {
  double h = 0.0;
  complex h_complex;
  double err = 0.0;
  bool converged = true;
};

/// G_{gamma,rho}(x) = (1/pi) int_0^pi cos(gamma t + x sin t) / (rho^2 + sin^2 t) dt.
EvalResult eval_G(const GoodParams& p, const QuadConfig& cfg = {});

/// Same integral without the gamma >= 0 check. Negative orders are needed by
/// the Q-G relation and the Anger series; the definition extends verbatim.
EvalResult good_integral(double gamma, double rho, double x, const QuadConfig& cfg = {});

/// Q_{gamma,xi}(x) = (1/pi) int_0^pi cos(gamma t + x sin t) / (xi - cos t) dt.
/// Requires p.xi.
EvalResult eval_Q(const GoodParams& p, const QuadConfig& cfg = {});

/// H(x, rho) = G_{x,rho}(x), computed as the real part of
/// (1/pi) int_0^pi exp(i x (t + sin t)) / (rho^2 + sin^2 t) dt.
HValue eval_H(double x, double rho, const QuadConfig& cfg = {});

struct HBounds {
  double b0 = 0.0;    // |H|
  double bx = 0.0;    // |dH/dx|
  double brho = 0.0;  // |dH/drho|
};

/// A-priori bounds: b0 = min(1/rho^2, pi/(2 rho)), bx = pi b0, brho = 2 b0 / rho.
/// They hold uniformly in x.
HBounds bounds_H(double x, double rho);

}  // namespace goodfun
