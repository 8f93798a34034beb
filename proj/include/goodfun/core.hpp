#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace goodfun {

using complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Gamma(1/3) and Gamma(2/3) to 21 significant digits.
inline constexpr double gamma_one_third = 2.67893853470774763366;
inline constexpr double gamma_two_thirds = 1.35411793942640041695;

// cos(pi (x - shift)) and sin(pi (x - shift)) with x reduced modulo 2 first,
// so large x loses no phase accuracy beyond the representation of x itself.
// The reduced argument is split into a quarter turn count and |f| <= 1/4, which
// makes integers and half-integers exact.
inline std::pair<double, double> cos_sin_pi(double x, double shift = 0.0) {
  const double r = std::fmod(x, 2.0) - shift;
  const double n = std::nearbyint(2.0 * r);
  const double f = r - 0.5 * n;
  const double c = std::cos(pi * f), s = std::sin(pi * f);
  switch (static_cast<int>(std::fmod(std::fmod(n, 4.0) + 4.0, 4.0))) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}
inline double cos_pi(double x, double shift = 0.0) { return cos_sin_pi(x, shift).first; }
inline double sin_pi(double x, double shift = 0.0) { return cos_sin_pi(x, shift).second; }

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a domain constraint. `field()` names the offending input.
class DomainError : public Error {
 public:
  DomainError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A sampled integrand value or intermediate result was not finite.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The declared decay envelope of a tail integrand was exceeded.
class EnvelopeViolated : public Error {
 public:
  using Error::Error;
};

/// rho is below the binary64 headroom of the integrand peak.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A stationary-phase hypothesis failed its numerical check.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// Raised by callers that demand convergence (see EvalResult::converged).
class ToleranceNotReached : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Parameters

struct GoodParams {
  double gamma = 0.0;
  double rho = 1.0;
  double x = 0.0;
  std::optional<double> xi;

  /// Parameters for Q_{gamma,xi}(x); rho is set to the companion value sqrt(xi^2 - 1).
  static GoodParams for_q(double gamma, double xi, double x);
};

/// Returns `p` unchanged or throws DomainError naming the violated constraint.
GoodParams validate(const GoodParams& p);

// ---------------------------------------------------------------------------
// Regimes

enum class RegimeKind {
  large_s,            // x rho^3 large
  critical_s,         // x rho^3 of order one, rho small
  small_s_large_u,    // x rho^3 -> 0, x rho -> infinity
  finite_u,           // x rho bounded
  fixed_point,        // x <= 2, continuity regime
};

struct Regime {
  RegimeKind kind = RegimeKind::fixed_point;
  double s = 0.0;  // x * rho^3
  double u = 0.0;  // x * rho
};

const char* to_string(RegimeKind kind);

// ---------------------------------------------------------------------------
// Results

enum class Method { oracle, asymptotic, identity };

const char* to_string(Method method);

struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  Method method = Method::oracle;
  std::optional<RegimeKind> regime;  // set iff method == asymptotic
  bool converged = true;             // false when a quadrature hit max_panels
};

// ---------------------------------------------------------------------------
// Quadrature configuration

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_panels = 200000;
  double endpoint_scale = 0.25;            // hot-spot refinement length, in units of peak width
  double oscillation_panel_factor = 2.0;   // panel cap as a fraction of 2 pi / (1 + omega)
  bool allow_tiny_rho = false;             // bypass the rho < 1e-6 PrecisionError

  /// Throws DomainError unless every field is strictly positive and finite.
  void check() const;
};

}  // namespace goodfun
