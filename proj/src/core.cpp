#include "goodfun/core.hpp"

#include <cmath>

namespace goodfun {

GoodParams GoodParams::for_q(double gamma, double xi, double x) {
  GoodParams p;
  p.gamma = gamma;
  p.x = x;
  p.xi = xi;
  p.rho = (xi > 1.0) ? std::sqrt((xi - 1.0) * (xi + 1.0)) : 0.0;
  return p;
}

GoodParams validate(const GoodParams& p) {
  if (!std::isfinite(p.gamma)) throw DomainError("gamma", "gamma is not finite");
  if (!std::isfinite(p.rho)) throw DomainError("rho", "rho is not finite");
  if (!std::isfinite(p.x)) throw DomainError("x", "x is not finite");
  if (p.gamma < 0.0) throw DomainError("gamma", "gamma must be >= 0");
  if (p.xi) {
    if (!std::isfinite(*p.xi)) throw DomainError("xi", "xi is not finite");
    if (*p.xi <= 1.0) throw DomainError("xi", "xi must be > 1");
  }
  if (p.rho <= 0.0) throw DomainError("rho", "rho must be > 0");
  return p;
}

const char* to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::large_s: return "LARGE_S";
    case RegimeKind::critical_s: return "CRITICAL_S";
    case RegimeKind::small_s_large_u: return "SMALL_S_LARGE_U";
    case RegimeKind::finite_u: return "FINITE_U";
    case RegimeKind::fixed_point: return "FIXED_POINT";
  }
  return "?";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::oracle: return "oracle";
    case Method::asymptotic: return "asymptotic";
    case Method::identity: return "identity";
  }
  return "?";
}

void QuadConfig::check() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(abs_tol)) throw DomainError("abs_tol", "abs_tol must be > 0");
  if (!positive(rel_tol)) throw DomainError("rel_tol", "rel_tol must be > 0");
  if (max_panels <= 0) throw DomainError("max_panels", "max_panels must be > 0");
  if (!positive(endpoint_scale)) throw DomainError("endpoint_scale", "endpoint_scale must be > 0");
  if (!positive(oscillation_panel_factor))
    throw DomainError("oscillation_panel_factor", "oscillation_panel_factor must be > 0");
}

}  // namespace goodfun
