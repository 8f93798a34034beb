#include "goodfun/identities.hpp"

#include <cmath>
#include <limits>

#include "goodfun/anger.hpp"
#include "goodfun/good.hpp"

namespace goodfun {

OdeResidual ode_residual(double gamma, double rho, double x, double h_step, const QuadConfig& cfg) {
  if (!(std::isfinite(h_step) && h_step > 0.0)) throw DomainError("h_step", "h_step must be > 0");
  validate(GoodParams{gamma, rho, x, std::nullopt});
  const EvalResult gm = good_integral(gamma, rho, x - h_step, cfg);
  const EvalResult g0 = good_integral(gamma, rho, x, cfg);
  const EvalResult gp = good_integral(gamma, rho, x + h_step, cfg);
  const EvalResult j = anger_J(gamma, -x, cfg);

  const double h2 = h_step * h_step;
  const double second = (gp.value - 2.0 * g0.value + gm.value) / h2;
  OdeResidual out;
  out.residual = std::abs(second - rho * rho * g0.value + j.value);
  const double rounding = std::numeric_limits<double>::epsilon() *
                          (std::abs(gp.value) + 2.0 * std::abs(g0.value) + std::abs(gm.value));
  out.noise_floor = 4.0 * (gp.error_estimate + 2.0 * g0.error_estimate + gm.error_estimate + rounding) / h2 +
                    rho * rho * g0.error_estimate + j.error_estimate;
  return out;
}

SeriesTruncation series_truncation(double rho, int K) {
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  if (K < 2 || K % 2 != 0) throw DomainError("K", "K must be an even integer >= 2");
  SeriesTruncation s;
  s.K = K;
  s.beta = std::sqrt(1.0 + rho * rho);
  s.t_param = std::log(rho + s.beta);
  // Each bracket is at most 2 in modulus since |J_nu| <= 1.
  s.tail_bound = 2.0 / (rho * s.beta) * std::exp(-(K + 2) * s.t_param) / -std::expm1(-2.0 * s.t_param);
  return s;
}

SeriesSum series_partial_sum(double gamma, double rho, double x, int K, const QuadConfig& cfg) {
  SeriesSum out;
  out.truncation = series_truncation(rho, K);
  const double t = out.truncation.t_param;

  const EvalResult j0 = anger_J(gamma, -x, cfg);
  double sum = j0.value;
  double err = j0.error_estimate;
  for (int k = 2; k <= K; k += 2) {
    const double w = std::exp(-k * t);
    const EvalResult jp = anger_J(gamma + k, -x, cfg);
    const EvalResult jm = anger_J(gamma - k, -x, cfg);
    sum += w * (jp.value + jm.value);
    err += w * (jp.error_estimate + jm.error_estimate);
  }
  const double pre = 1.0 / (rho * out.truncation.beta);
  out.value = pre * sum;
  out.err = pre * err;
  return out;
}

EvalResult q_from_g(double gamma, double xi, double x, const QuadConfig& cfg) {
  const GoodParams p = validate(GoodParams::for_q(gamma, xi, x));
  const double rho = p.rho;
  const EvalResult g0 = good_integral(gamma, rho, x, cfg);
  const EvalResult gp = good_integral(gamma + 1.0, rho, x, cfg);
  const EvalResult gm = good_integral(gamma - 1.0, rho, x, cfg);
  // sqrt(1 + rho^2) is xi itself.
  EvalResult r;
  r.value = xi * g0.value + 0.5 * (gp.value + gm.value);
  r.error_estimate = xi * g0.error_estimate + 0.5 * (gp.error_estimate + gm.error_estimate);
  r.method = Method::identity;
  r.converged = g0.converged && gp.converged && gm.converged;
  return r;
}

}  // namespace goodfun
