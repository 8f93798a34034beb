#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "goodfun/quadrature.hpp"

using namespace goodfun;

namespace {

RealIntegrand real_fn(std::function<double(double)> f) {
  RealIntegrand g;
  g.f = std::move(f);
  return g;
}

// (1/pi) int_0^pi e^{ix(t + sin t)} / (rho^2 + sin^2 t) dt straight on [0, pi].
ComplexIntegrand good_integrand(double x, double rho) {
  ComplexIntegrand g;
  g.f = [=](double t) {
    const double s = std::sin(t);
    return std::polar(1.0 / (rho * rho + s * s), x * (t + s));
  };
  g.hot_spots = {0.0, pi};
  g.peak_width = rho;
  g.frequency = 2.0 * std::abs(x);
  return g;
}

}  // namespace

TEST(IntegrateFinite, Sine) {
  const auto r = integrate_finite(real_fn([](double t) { return std::sin(t); }), 0.0, pi, QuadConfig{});
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.err, 1e-12);
}

TEST(IntegrateFinite, PeakedDenominatorClosedForm) {
  const auto r = integrate_finite(real_fn([](double t) { return 1.0 / (1.0 + std::sin(t) * std::sin(t)); }), 0.0,
                                  pi, QuadConfig{});
  EXPECT_NEAR(r.value, pi / std::sqrt(2.0), 1e-12);
}

TEST(IntegrateFinite, ComplexExponential) {
  ComplexIntegrand g;
  g.f = [](double t) { return std::polar(1.0, t); };
  const auto r = integrate_finite(g, 0.0, pi, QuadConfig{});
  EXPECT_NEAR(r.value.real(), 0.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 2.0, 1e-12);
}

TEST(IntegrateFinite, HotSpotAtTinyRho) {
  // Only the peak at 0: near pi, sin t carries an absolute rounding error that
  // the 1/rho^2 peak would amplify.
  const double rho = 1e-3;
  auto g = good_integrand(0.0, rho);
  g.hot_spots = {0.0};
  const auto r = integrate_finite(g, 0.0, pi / 2, QuadConfig{});
  const double exact = pi / (2 * rho * std::sqrt(1.0 + rho * rho));
  EXPECT_LE(std::abs(r.value.real() - exact), std::max(r.err, 1e-16 * exact * 64));
}

TEST(IntegrateFinite, RejectsBadInterval) {
  auto g = real_fn([](double) { return 1.0; });
  EXPECT_THROW(integrate_finite(g, 1.0, 1.0, QuadConfig{}), DomainError);
  EXPECT_THROW(integrate_finite(g, 0.0, std::numeric_limits<double>::infinity(), QuadConfig{}), DomainError);
}

TEST(IntegrateFinite, NonFiniteSampleThrows) {
  auto g = real_fn([](double t) { return 1.0 / (t - 0.5); });
  g.hot_spots = {};
  EXPECT_THROW(integrate_finite(g, 0.0, 1.0, QuadConfig{}), NumericalError);
  auto h = real_fn([](double) { return std::numeric_limits<double>::quiet_NaN(); });
  EXPECT_THROW(integrate_finite(h, 0.0, 1.0, QuadConfig{}), NumericalError);
}

TEST(IntegrateFinite, PanelLimitFlagsNonConvergence) {
  QuadConfig cfg;
  cfg.max_panels = 4;
  const auto r = integrate_finite(real_fn([](double t) { return std::sqrt(std::abs(t - 0.3)); }), 0.0, 1.0, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.err, 0.0);
}

TEST(IntegrateFinite, RefinementConsistency) {
  for (double rho : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
    for (double x : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
      QuadConfig coarse;
      QuadConfig fine;
      fine.abs_tol = coarse.abs_tol / 2;
      const auto a = integrate_finite(good_integrand(x, rho), 0.0, pi, coarse);
      const auto b = integrate_finite(good_integrand(x, rho), 0.0, pi, fine);
      const double scale = std::abs(b.value);
      EXPECT_LE(std::abs(a.value - b.value), std::max({a.err, b.err, 64 * 1e-16 * scale}))
          << "rho=" << rho << " x=" << x;
    }
  }
}

TEST(IntegrateFinite, Linearity) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = u(rng), beta = u(rng), w = 5.0 + 10.0 * std::abs(u(rng));
    auto f = real_fn([=](double t) { return std::cos(w * t) / (1.0 + t * t); });
    auto g = real_fn([=](double t) { return std::exp(-t) * std::sin(3.0 * t); });
    auto h = real_fn([=](double t) { return alpha * f.f(t) + beta * g.f(t); });
    f.frequency = h.frequency = w;
    const auto rf = integrate_finite(f, 0.0, 4.0, QuadConfig{});
    const auto rg = integrate_finite(g, 0.0, 4.0, QuadConfig{});
    const auto rh = integrate_finite(h, 0.0, 4.0, QuadConfig{});
    EXPECT_LE(std::abs(rh.value - (alpha * rf.value + beta * rg.value)),
              rh.err + std::abs(alpha) * rf.err + std::abs(beta) * rg.err + 1e-15);
  }
}

TEST(IntegrateFinite, DeterministicOrder) {
  const auto a = integrate_finite(good_integrand(321.5, 0.02), 0.0, pi, QuadConfig{});
  const auto b = integrate_finite(good_integrand(321.5, 0.02), 0.0, pi, QuadConfig{});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.err, b.err);
  EXPECT_EQ(a.panels, b.panels);
}

TEST(IntegrateTail, Arctan) {
  RealIntegrand g = real_fn([](double t) { return 1.0 / (1.0 + t * t); });
  const auto r = integrate_tail(g, TailEnvelope{EnvelopeKind::algebraic, 1.0, 0.0}, QuadConfig{});
  EXPECT_NEAR(r.value, pi / 2, 1e-11);
  EXPECT_LE(std::abs(r.value - pi / 2), r.err);
}

TEST(IntegrateTail, CubicExponential) {
  RealIntegrand g = real_fn([](double t) { return std::exp(-t * t * t / 6.0); });
  const auto r = integrate_tail(g, TailEnvelope{EnvelopeKind::super_exponential, 1.0, 1.0 / 6.0}, QuadConfig{});
  // 6^(1/3) Gamma(4/3)
  EXPECT_NEAR(r.value, 1.62265145944966864, 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(IntegrateTail, PoissonKernel) {
  ComplexIntegrand g;
  g.f = [](double t) { return std::polar(1.0 / (1.0 + t * t), 2.0 * t); };
  g.frequency = 2.0;
  const auto r = integrate_tail(g, TailEnvelope{EnvelopeKind::algebraic, 1.0, 0.0}, QuadConfig{});
  // Real part (pi/2) e^{-2}; imaginary part (e^{-2} Ei(2) - e^2 Ei(-2)) / 2.
  EXPECT_LE(std::abs(r.value.real() - 0.212584165793818164), r.err);
  EXPECT_LE(std::abs(r.value.imag() - 0.515905663339147933), r.err);
  EXPECT_NEAR(r.value.real(), 0.212584165793818164, 1e-9);
  EXPECT_NEAR(r.value.imag(), 0.515905663339147933, 1e-9);
}

TEST(IntegrateTail, EnvelopeViolationDetected) {
  RealIntegrand g = real_fn([](double t) { return 2.0 / (1.0 + t * t); });
  EXPECT_THROW(integrate_tail(g, TailEnvelope{EnvelopeKind::algebraic, 1.0, 0.0}, QuadConfig{}), EnvelopeViolated);
  RealIntegrand h = real_fn([](double t) { return std::exp(-t); });
  EXPECT_THROW(integrate_tail(h, TailEnvelope{EnvelopeKind::super_exponential, 1.0, 1.0}, QuadConfig{}),
               EnvelopeViolated);
}

TEST(IntegrateTail, RejectsBadEnvelope) {
  RealIntegrand g = real_fn([](double t) { return std::exp(-t * t * t); });
  EXPECT_THROW(integrate_tail(g, TailEnvelope{EnvelopeKind::super_exponential, 1.0, 0.0}, QuadConfig{}), DomainError);
  EXPECT_THROW(integrate_tail(g, TailEnvelope{EnvelopeKind::algebraic, -1.0, 0.0}, QuadConfig{}), DomainError);
}

TEST(TailEnvelope, AnalyticTails) {
  TailEnvelope alg{EnvelopeKind::algebraic, 2.0, 0.0};
  EXPECT_NEAR(alg.tail_beyond(3.0), 2.0 * (pi / 2 - std::atan(3.0)), 1e-15);
  TailEnvelope sup{EnvelopeKind::super_exponential, 1.0, 0.5};
  EXPECT_NEAR(sup.tail_beyond(2.0), std::exp(-4.0) / (3.0 * 0.5 * 4.0), 1e-15);
}
