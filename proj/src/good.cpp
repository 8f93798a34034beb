#include "goodfun/good.hpp"

#include <cmath>
#include <string>

#include "goodfun/quadrature.hpp"

namespace goodfun {
namespace {

constexpr double kTinyRho = 1e-6;

void check_precision(double rho, const QuadConfig& cfg) {
  if (rho < kTinyRho && !cfg.allow_tiny_rho)
    throw PrecisionError("rho = " + std::to_string(rho) +
                         " is below 1e-6; the integrand peak exhausts binary64 (set allow_tiny_rho to override)");
}

EvalResult oracle_result(const QuadResult<double>& q) {
  EvalResult r;
  r.value = q.value / pi;
  r.error_estimate = q.err / pi;
  r.method = Method::oracle;
  r.converged = q.converged;
  return r;
}

}  // namespace

EvalResult good_integral(double gamma, double rho, double x, const QuadConfig& cfg) {
  if (!std::isfinite(gamma)) throw DomainError("gamma", "gamma is not finite");
  if (!std::isfinite(x)) throw DomainError("x", "x is not finite");
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  check_precision(rho, cfg);

  // [pi/2, pi] is folded onto [0, pi/2] by t -> pi - t so both peaks sit at an
  // exact 0 and sin is evaluated without the rounding of the double pi.
  const double rho2 = rho * rho;
  const double turn = pi * std::fmod(gamma, 2.0);
  RealIntegrand near_zero;
  near_zero.f = [=](double t) {
    const double s = std::sin(t);
    return std::cos(gamma * t + x * s) / (rho2 + s * s);
  };
  near_zero.hot_spots = {0.0};
  near_zero.peak_width = rho;
  near_zero.frequency = std::abs(gamma) + std::abs(x);
  RealIntegrand near_pi = near_zero;
  near_pi.f = [=](double t) {
    const double s = std::sin(t);
    return std::cos(turn - gamma * t + x * s) / (rho2 + s * s);
  };
  const auto lo = integrate_finite(near_zero, 0.0, 0.5 * pi, cfg);
  const auto hi = integrate_finite(near_pi, 0.0, 0.5 * pi, cfg);
  return oracle_result({lo.value + hi.value, lo.err + hi.err, lo.panels + hi.panels, lo.converged && hi.converged});
}

EvalResult eval_G(const GoodParams& p, const QuadConfig& cfg) {
  const GoodParams v = validate(p);
  return good_integral(v.gamma, v.rho, v.x, cfg);
}

EvalResult eval_Q(const GoodParams& p, const QuadConfig& cfg) {
  if (!p.xi) throw DomainError("xi", "eval_Q needs xi");
  const GoodParams v = validate(p);
  const double xi = *v.xi;
  const double gamma = v.gamma;
  const double x = v.x;
  // xi - cos t ~ (xi - 1) + t^2 / 2 near t = 0.
  const double width = std::sqrt(2.0 * (xi - 1.0));
  check_precision(width, cfg);

  RealIntegrand g;
  g.f = [=](double t) { return std::cos(gamma * t + x * std::sin(t)) / (xi - std::cos(t)); };
  g.hot_spots = {0.0};
  g.peak_width = width;
  g.frequency = std::abs(gamma) + std::abs(x);
  return oracle_result(integrate_finite(g, 0.0, pi, cfg));
}

HValue eval_H(double x, double rho, const QuadConfig& cfg) {
  if (!std::isfinite(x)) throw DomainError("x", "x is not finite");
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  check_precision(rho, cfg);

  // Folded as in good_integral: e^{ix(t + sin t)} on [0, pi/2] plus
  // e^{i pi x} e^{-ix(t - sin t)} on [0, pi/2].
  const double rho2 = rho * rho;
  ComplexIntegrand near_zero;
  near_zero.f = [=](double t) {
    const double s = std::sin(t);
    return std::polar(1.0 / (rho2 + s * s), x * (t + s));
  };
  near_zero.hot_spots = {0.0};
  near_zero.peak_width = rho;
  near_zero.frequency = 2.0 * std::abs(x);
  ComplexIntegrand near_pi = near_zero;
  near_pi.f = [=](double t) {
    const double s = std::sin(t);
    return std::polar(1.0 / (rho2 + s * s), -x * (t - s));
  };
  const auto lo = integrate_finite(near_zero, 0.0, 0.5 * pi, cfg);
  const auto hi = integrate_finite(near_pi, 0.0, 0.5 * pi, cfg);
  const complex turn(cos_pi(x), sin_pi(x));
  QuadResult<complex> q{lo.value + turn * hi.value, lo.err + hi.err, lo.panels + hi.panels,
                        lo.converged && hi.converged};

  HValue out;
  out.h_complex = q.value / pi;
  out.h = out.h_complex.real();
  out.err = q.err / pi;
  out.converged = q.converged;
  return out;
}

HBounds bounds_H(double /*x*/, double rho) {
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  HBounds b;
  b.b0 = std::min(1.0 / (rho * rho), pi / (2.0 * rho));
  b.bx = pi * b.b0;
  b.brho = 2.0 / rho * b.b0;
  return b;
}

}  // namespace goodfun
