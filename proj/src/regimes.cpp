#include "goodfun/regimes.hpp"

#include <cmath>

#include "goodfun/good.hpp"
#include "goodfun/quadrature.hpp"

namespace goodfun {
namespace {

void require_positive(const char* name, double v) {
  if (!(std::isfinite(v) && v > 0.0)) throw DomainError(name, std::string(name) + " must be finite and > 0");
}

EvalResult asymptotic(double value, double err, RegimeKind regime) {
  EvalResult r;
  r.value = value;
  r.error_estimate = err;
  r.method = Method::asymptotic;
  r.regime = regime;
  return r;
}

}  // namespace

CubicTailIntegral cubic_tail(double lambda, const QuadConfig& cfg) {
  if (!(std::isfinite(lambda) && lambda >= 0.0)) throw DomainError("lambda", "lambda must be >= 0");
  CubicTailIntegral out;
  out.lambda = lambda;
  if (lambda == 0.0) {
    out.value = pi / 2.0;
  } else {
    const complex ray = std::polar(1.0, pi / 6.0);
    const complex ray2 = std::polar(1.0, pi / 3.0);
    ComplexIntegrand g;
    g.f = [=](double t) {
      const complex den = 1.0 + ray2 * (t * t);
      if (std::abs(den) < 0.5) throw NumericalError("rotated contour passed near the pole at i");
      return ray * std::exp(-lambda * t * t * t / 6.0) / den;
    };
    TailEnvelope env{EnvelopeKind::super_exponential, 1.0, lambda / 6.0};
    const auto q = integrate_tail(g, env, cfg);
    out.value = q.value;
    out.err = q.err;
    out.converged = q.converged;
  }
  out.c_mod = std::abs(out.value);
  out.psi_arg = std::arg(out.value) / pi;
  return out;
}

ComplexApprox i_lambda_asym(double lambda) {
  require_positive("lambda", lambda);
  return {std::polar(gamma_one_third / (3.0 * std::cbrt(lambda)), pi / 6.0), 1.0 / (3.0 * lambda)};
}

CubicTailIntegral i_lambda_oracle(double lambda, const QuadConfig& cfg) {
  require_positive("lambda", lambda);
  return cubic_tail(6.0 * lambda, cfg);
}

EvalResult h_asym_large(double x, double rho, const Constants& c) {
  if (!(std::isfinite(x) && x > 2.0)) throw DomainError("x", "the large-s formula needs x > 2");
  require_positive("rho", rho);
  const double rho2 = rho * rho;
  const double value = gamma_one_third / (3.0 * pi * rho2) * cos_pi(x, 1.0 / 6.0) * std::cbrt(6.0 / x);
  const double scale = std::max(1.0 / (rho2 * rho2), 1.0 / rho2);
  return asymptotic(value, c.c_large * scale / x, RegimeKind::large_s);
}

EvalResult h_asym_small(double x, double rho, const QuadConfig& cfg, const Constants& c) {
  require_positive("x", x);
  require_positive("rho", rho);
  const CubicTailIntegral ct = cubic_tail(x * rho * rho * rho, cfg);
  const complex rot = std::polar(1.0, -pi * std::fmod(x, 2.0));
  const double value = std::exp(-2.0 * x * rho) / (2.0 * rho) + (rot * ct.value).real() / (pi * rho);
  EvalResult r = asymptotic(value, c.c_small + ct.err / (pi * rho), classify(x, rho, c).kind);
  r.converged = ct.converged;
  return r;
}

Regime classify(double x, double rho, const Constants& c) {
  Regime r;
  r.s = x * rho * rho * rho;
  r.u = x * rho;
  if (x <= 2.0)
    r.kind = RegimeKind::fixed_point;
  else if (r.s >= c.s_hi || rho >= c.rho_cut)
    r.kind = RegimeKind::large_s;
  else if (r.s > c.s_lo)
    r.kind = RegimeKind::critical_s;
  else if (r.u >= c.u_hi)
    r.kind = RegimeKind::small_s_large_u;
  else
    r.kind = RegimeKind::finite_u;
  return r;
}

RegimeApprox h_approx(double x, double rho, const QuadConfig& cfg, const Constants& c) {
  require_positive("x", x);
  require_positive("rho", rho);
  RegimeApprox out;
  out.regime = classify(x, rho, c);
  switch (out.regime.kind) {
    case RegimeKind::fixed_point: {
      const HValue h = eval_H(x, rho, cfg);
      out.result.value = h.h;
      out.result.error_estimate = h.err;
      out.result.method = Method::oracle;
      out.result.converged = h.converged;
      break;
    }
    case RegimeKind::large_s:
      out.result = h_asym_large(x, rho, c);
      break;
    default:
      out.result = h_asym_small(x, rho, cfg, c);
      break;
  }
  return out;
}

const char* to_string(PathRow row) {
  switch (row) {
    case PathRow::alpha_above_3: return "alpha>3";
    case PathRow::alpha_equals_3: return "alpha=3";
    case PathRow::alpha_1_to_3: return "1<alpha<3";
    case PathRow::alpha_equals_1: return "alpha=1";
    case PathRow::alpha_below_1: return "0<alpha<1";
  }
  return "?";
}

PathRow path_row(double alpha) {
  require_positive("alpha", alpha);
  if (alpha > 3.0) return PathRow::alpha_above_3;
  if (alpha == 3.0) return PathRow::alpha_equals_3;
  if (alpha > 1.0) return PathRow::alpha_1_to_3;
  if (alpha == 1.0) return PathRow::alpha_equals_1;
  return PathRow::alpha_below_1;
}

PathMain corollary_path_main(double alpha, double eta, double rho, const QuadConfig& cfg, const Constants& c) {
  require_positive("alpha", alpha);
  require_positive("eta", eta);
  require_positive("rho", rho);
  PathMain out;
  out.row = path_row(alpha);
  out.x = eta * std::pow(rho, -alpha);
  const double x = out.x;
  if (!(std::isfinite(x) && x > 2.0)) throw DomainError("x", "the path point x = eta rho^-alpha must exceed 2");

  if (out.row == PathRow::alpha_above_3) {
    out.result = h_asym_large(x, rho, c);
    return out;
  }

  // The remaining rows are limits of the small-rho formula; their error is
  // bounded by that formula's error plus the distance to it.
  const EvalResult small = h_asym_small(x, rho, cfg, c);
  const double half_inv = 1.0 / (2.0 * rho);
  double main = 0.0;
  switch (out.row) {
    case PathRow::alpha_equals_3: {
      const CubicTailIntegral ct = cubic_tail(eta, cfg);
      main = ct.c_mod / (pi * rho) * cos_pi(x, ct.psi_arg);
      break;
    }
    case PathRow::alpha_1_to_3:
      main = cos_pi(x) * half_inv;
      break;
    case PathRow::alpha_equals_1:
      main = (std::exp(-2.0 * eta) + cos_pi(x)) * half_inv;
      break;
    default:
      main = (1.0 + cos_pi(x)) * half_inv;
      break;
  }
  out.result = asymptotic(main, small.error_estimate + std::abs(small.value - main), *small.regime);
  out.result.converged = small.converged;
  return out;
}

}  // namespace goodfun
