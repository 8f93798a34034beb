#pragma once

// Two-term stationary-phase expansion of
//
//     I(x) = int_0^b f(t) exp(i x psi(t)) dt
//
// when psi has a cubic-degenerate stationary point at t = 0 with the
// normalization psi(0) = psi'(0) = psi''(0) = psi''''(0) = 0, psi'''(0) = 1,
// and psi' > 0 on (0, b). Phases with another third-derivative scale must be
// rescaled by the caller.

#include <array>
#include <functional>
#include <optional>

#include "goodfun/constants.hpp"
#include "goodfun/core.hpp"
#include "goodfun/quadrature.hpp"

namespace goodfun {

/// f, f', f'', f''' at a point.
using AmplitudeJet = std::array<complex, 4>;

/// sup_[0,b] |f^(j)| for j = 0, 1, 2 and int_0^b |f'''|.
struct AmplitudeNorms {
  double sup0 = 0.0;
  double sup1 = 0.0;
  double sup2 = 0.0;
  double int3 = 0.0;
  double total() const { return sup0 + sup1 + sup2 + int3; }
};

struct PhaseProblem {
  std::function<AmplitudeJet(double)> amplitude;
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  double b = 0.0;
  std::optional<AmplitudeNorms> norms;  // computed on demand when absent
};

/// Numerical check of the phase hypotheses (central differences of psi' at 0
/// with h = eps^(1/4) max(1, b), tolerance 1e-6 plus a rounding allowance;
/// psi' > 0 on a 1000-point grid). psi and psi' must be evaluable on [-2h, b].
/// Throws HypothesisViolated.
void check_hypotheses(const PhaseProblem& prob);

/// Sup-norms sampled on a dense grid; the |f'''| integral by quadrature.
AmplitudeNorms amplitude_norms(const PhaseProblem& prob, const QuadConfig& cfg = {});

struct PhaseExpansion {
  complex first;    // (e^{i pi/6}/3) Gamma(1/3) (6/x)^(1/3) f(0)
  complex second;   // (e^{i pi/3}/3) Gamma(2/3) (6/x)^(2/3) f'(0)
  complex main;     // first + second
  double rest_bound = 0.0;  // c_engine * norms.total() / |x|
};

/// Two-term expansion for |x| > 2. For x < -2 the expansion of the conjugate
/// problem is conjugated, which for real f is the conjugate of the x > 2 value.
/// Throws DomainError for |x| <= 2 and HypothesisViolated if the checks fail.
PhaseExpansion two_term_expansion(const PhaseProblem& prob, double x, const Constants& c = {});

/// tau(t) = (6 psi(t))^(1/3), the variable in which the phase is exactly tau^3 / 6.
double substitution_tau(const std::function<double(double)>& psi, double t);

/// Quadrature value of I(x); the reference the expansion is checked against.
QuadResult<complex> phase_oracle(const PhaseProblem& prob, double x, const QuadConfig& cfg = {});

/// f(t) = exp(i k t), psi(t) = t - sin t on [0, pi]: the shifted Anger problem.
PhaseProblem anger_phase_problem(long k);

/// f(t) = 1 / (rho^2 + sin^2 t), psi(t) = t - sin t on [0, pi]: the Good amplitude.
PhaseProblem good_phase_problem(double rho);

}  // namespace goodfun
