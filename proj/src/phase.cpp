#include "goodfun/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace goodfun {
namespace {

constexpr int kMonotoneGrid = 1000;
constexpr int kNormGrid = 4096;
constexpr double kHypothesisTol = 1e-6;

void require(bool ok, const std::string& what) {
  if (!ok) throw HypothesisViolated(what);
}

double t_minus_sin(double t) {
  // Series near 0 avoids the cancellation in t - sin t.
  if (std::abs(t) < 1e-2) {
    const double t2 = t * t;
    return t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
  }
  return t - std::sin(t);
}

double one_minus_cos(double t) {
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s;
}

}  // namespace

void check_hypotheses(const PhaseProblem& prob) {
  require(std::isfinite(prob.b) && prob.b > 0.0, "b must be finite and > 0");
  require(static_cast<bool>(prob.psi) && static_cast<bool>(prob.dpsi) && static_cast<bool>(prob.amplitude),
          "phase problem is missing a callable");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double h = std::pow(eps, 0.25) * std::max(1.0, prob.b);
  const auto& d = prob.dpsi;
  const double dm2 = d(-2 * h), dm1 = d(-h), d0 = d(0.0), dp1 = d(h), dp2 = d(2 * h);
  const double scale = std::max({std::abs(dm2), std::abs(dm1), std::abs(d0), std::abs(dp1), std::abs(dp2), 1e-300});
  // Rounding in the psi' samples amplifies as 1/h^order.
  auto tol = [&](int order) { return kHypothesisTol + 16.0 * eps * scale / std::pow(h, order); };

  const double psi0 = prob.psi(0.0);
  const double d2 = (dp1 - dm1) / (2.0 * h);
  const double d3 = (dp1 - 2.0 * d0 + dm1) / (h * h);
  const double d4 = (dp2 - 2.0 * dp1 + 2.0 * dm1 - dm2) / (2.0 * h * h * h);
  require(std::abs(psi0) <= kHypothesisTol, "psi(0) != 0");
  require(std::abs(d0) <= kHypothesisTol, "psi'(0) != 0");
  require(std::abs(d2) <= tol(1), "psi''(0) != 0");
  require(std::abs(d3 - 1.0) <= tol(2), "psi'''(0) != 1");
  require(std::abs(d4) <= tol(3), "psi''''(0) != 0");

  for (int i = 1; i <= kMonotoneGrid; ++i) {
    const double t = prob.b * static_cast<double>(i) / kMonotoneGrid;
    // The closed endpoint t = b is allowed psi'(b) = 0 only if it is the last sample.
    const double v = d(t);
    require(v > 0.0 || (i == kMonotoneGrid && v >= 0.0), "psi' is not positive on (0, b)");
  }
}

AmplitudeNorms amplitude_norms(const PhaseProblem& prob, const QuadConfig& cfg) {
  AmplitudeNorms n;
  for (int i = 0; i <= kNormGrid; ++i) {
    const AmplitudeJet j = prob.amplitude(prob.b * static_cast<double>(i) / kNormGrid);
    n.sup0 = std::max(n.sup0, std::abs(j[0]));
    n.sup1 = std::max(n.sup1, std::abs(j[1]));
    n.sup2 = std::max(n.sup2, std::abs(j[2]));
  }
  RealIntegrand g;
  g.f = [&](double t) { return std::abs(prob.amplitude(t)[3]); };
  QuadConfig loose = cfg;
  loose.rel_tol = std::max(cfg.rel_tol, 1e-8);
  n.int3 = integrate_finite(g, 0.0, prob.b, loose).value;
  return n;
}

PhaseExpansion two_term_expansion(const PhaseProblem& prob, double x, const Constants& c) {
  if (!(std::isfinite(x) && std::abs(x) > 2.0))
    throw DomainError("x", "the stationary-phase expansion needs |x| > 2");
  check_hypotheses(prob);
  const AmplitudeNorms norms = prob.norms ? *prob.norms : amplitude_norms(prob);

  const AmplitudeJet j0 = prob.amplitude(0.0);
  const double ax = std::abs(x);
  const double r = std::cbrt(6.0 / ax);
  const double side = x > 0.0 ? 1.0 : -1.0;

  PhaseExpansion e;
  e.first = std::polar(gamma_one_third * r / 3.0, side * pi / 6.0) * j0[0];
  e.second = std::polar(gamma_two_thirds * r * r / 3.0, side * pi / 3.0) * j0[1];
  e.main = e.first + e.second;
  e.rest_bound = c.c_engine * norms.total() / ax;
  return e;
}

double substitution_tau(const std::function<double(double)>& psi, double t) {
  return std::cbrt(6.0 * psi(t));
}

QuadResult<complex> phase_oracle(const PhaseProblem& prob, double x, const QuadConfig& cfg) {
  double dmax = 0.0;
  for (int i = 0; i <= kMonotoneGrid; ++i)
    dmax = std::max(dmax, std::abs(prob.dpsi(prob.b * static_cast<double>(i) / kMonotoneGrid)));
  ComplexIntegrand g;
  g.f = [&](double t) { return prob.amplitude(t)[0] * std::polar(1.0, x * prob.psi(t)); };
  g.frequency = std::abs(x) * dmax;
  return integrate_finite(g, 0.0, prob.b, cfg);
}

PhaseProblem anger_phase_problem(long k) {
  const double kk = static_cast<double>(k);
  PhaseProblem p;
  p.amplitude = [kk](double t) {
    const complex e = std::polar(1.0, kk * t);
    const complex ik(0.0, kk);
    return AmplitudeJet{e, ik * e, ik * ik * e, ik * ik * ik * e};
  };
  p.psi = t_minus_sin;
  p.dpsi = one_minus_cos;
  p.b = pi;
  const double ak = std::abs(kk);
  p.norms = AmplitudeNorms{1.0, ak, ak * ak, pi * ak * ak * ak};
  return p;
}

PhaseProblem good_phase_problem(double rho) {
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  const double rho2 = rho * rho;
  PhaseProblem p;
  p.amplitude = [rho2](double t) {
    // f = 1/D with D = rho^2 + sin^2 t.
    const double s = std::sin(t);
    const double D = rho2 + s * s;
    const double D1 = std::sin(2.0 * t);
    const double D2 = 2.0 * std::cos(2.0 * t);
    const double D3 = -4.0 * std::sin(2.0 * t);
    const double iD = 1.0 / D;
    const double f0 = iD;
    const double f1 = -D1 * iD * iD;
    const double f2 = -D2 * iD * iD + 2.0 * D1 * D1 * iD * iD * iD;
    const double f3 = -D3 * iD * iD + 6.0 * D1 * D2 * iD * iD * iD - 6.0 * D1 * D1 * D1 * iD * iD * iD * iD;
    return AmplitudeJet{f0, f1, f2, f3};
  };
  p.psi = t_minus_sin;
  p.dpsi = one_minus_cos;
  p.b = pi;
  return p;
}

}  // namespace goodfun
