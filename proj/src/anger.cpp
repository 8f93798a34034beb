#include "goodfun/anger.hpp"

#include <cmath>
#include <cstdlib>

#include "goodfun/quadrature.hpp"

namespace goodfun {
namespace {

constexpr long kMaxShift = 1000000;

void require_large(double x) {
  if (!(std::isfinite(x) && x > 2.0)) throw DomainError("x", "the large-x Anger forms need x > 2");
}

EvalResult asymptotic(double value, double err) {
  EvalResult r;
  r.value = value;
  r.error_estimate = err;
  r.method = Method::asymptotic;
  r.regime = RegimeKind::large_s;
  return r;
}

}  // namespace

AngerParams validate(const AngerParams& p) {
  if (!std::isfinite(p.nu)) throw DomainError("nu", "nu is not finite");
  if (!std::isfinite(p.x)) throw DomainError("x", "x is not finite");
  if (std::labs(p.k) > kMaxShift) throw DomainError("k", "|k| must be <= 1e6");
  return p;
}

EvalResult anger_J(double nu, double x, const QuadConfig& cfg) {
  validate(AngerParams{nu, x, 0});
  RealIntegrand g;
  g.f = [=](double t) { return std::cos(nu * t - x * std::sin(t)); };
  g.frequency = std::abs(nu) + std::abs(x);
  const auto q = integrate_finite(g, 0.0, pi, cfg);

  EvalResult r;
  r.value = q.value / pi;
  r.error_estimate = q.err / pi;
  r.method = Method::oracle;
  r.converged = q.converged;
  return r;
}

EvalResult anger_diag_asym(double x, const Constants& c) {
  require_large(x);
  const double value = std::sqrt(3.0) / (6.0 * pi) * gamma_one_third * std::cbrt(6.0 / x);
  return asymptotic(value, c.c_diag / x);
}

EvalResult anger_reflected_asym(double x, const Constants& c) {
  require_large(x);
  const double value = gamma_one_third / (3.0 * pi) * std::cbrt(6.0 / x) * cos_pi(x, 1.0 / 6.0);
  return asymptotic(value, c.c_ref / x);
}

EvalResult anger_shifted_asym(double x, long k, const Constants& c) {
  require_large(x);
  validate(AngerParams{0.0, x, k});
  const double r = std::cbrt(6.0 / x);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const double lead = gamma_one_third * r * cos_pi(x, 1.0 / 6.0);
  const double shift = static_cast<double>(k) * gamma_two_thirds * r * r * sin_pi(x, 1.0 / 3.0);
  const double ak = std::abs(static_cast<double>(k));
  return asymptotic(sign / (3.0 * pi) * (lead + shift), c.c_shift * (1.0 + ak * ak * ak) / x);
}

}  // namespace goodfun
