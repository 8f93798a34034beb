#include <gtest/gtest.h>

#include <cmath>

#include "goodfun/good.hpp"
#include "goodfun/identities.hpp"

using namespace goodfun;

TEST(Ode, ResidualSmall) {
  for (auto [gamma, rho, x] : {std::tuple{0.0, 1.0, 3.0}, std::tuple{2.5, 0.3, 10.0}, std::tuple{1.0, 2.0, 0.7}}) {
    const auto r = ode_residual(gamma, rho, x, 1e-2);
    EXPECT_LT(r.residual, 1e-4) << gamma << " " << rho << " " << x;
  }
}

TEST(Ode, ResidualDecaysLikeStepSquared) {
  const auto coarse = ode_residual(1.5, 0.8, 4.0, 0.1);
  const auto fine = ode_residual(1.5, 0.8, 4.0, 0.05);
  const double ratio = coarse.residual / fine.residual;
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
  EXPECT_LT(fine.noise_floor, fine.residual);
}

TEST(Ode, RejectsBadStep) {
  EXPECT_THROW(ode_residual(0.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(ode_residual(0.0, -1.0, 1.0, 0.1), DomainError);
}

TEST(Series, ZeroArgument) {
  const auto s = series_partial_sum(0.0, 1.0, 0.0, 10);
  EXPECT_NEAR(s.value, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Series, TruncationParameters) {
  const auto t = series_truncation(0.75, 4);
  EXPECT_DOUBLE_EQ(t.beta, 1.25);
  EXPECT_NEAR(t.t_param, std::log(2.0), 1e-15);
  EXPECT_THROW(series_truncation(1.0, 3), DomainError);
  EXPECT_THROW(series_truncation(1.0, 0), DomainError);
}

TEST(Series, CauchyGapsWithinTailBound) {
  for (double rho : {0.5, 1.0, 2.0}) {
    const auto s10 = series_partial_sum(1.3, rho, 7.0, 10);
    for (int K : {12, 20, 30}) {
      const auto sK = series_partial_sum(1.3, rho, 7.0, K);
      EXPECT_LE(std::abs(sK.value - s10.value), s10.truncation.tail_bound + s10.err + sK.err) << rho << " " << K;
    }
  }
}

TEST(Series, MatchesDirectIntegral) {
  for (double rho : {0.5, 1.0, 3.0}) {
    const auto s = series_partial_sum(2.0, rho, 5.0, 40);
    const auto g = eval_G({2.0, rho, 5.0, std::nullopt});
    EXPECT_LE(std::abs(s.value - g.value), s.truncation.tail_bound + s.err + g.error_estimate + 1e-13) << rho;
  }
}

TEST(QFromG, MatchesDirectQ) {
  for (double xi : {1.01, std::sqrt(2.0), 2.0, 10.0}) {
    for (double gamma : {1.0, 2.0, 5.0}) {
      for (double x : {0.0, 1.0, 10.0, 100.0}) {
        const auto a = q_from_g(gamma, xi, x);
        const auto b = eval_Q(GoodParams::for_q(gamma, xi, x));
        EXPECT_LE(std::abs(a.value - b.value), a.error_estimate + b.error_estimate + 1e-12)
            << xi << " " << gamma << " " << x;
        EXPECT_EQ(a.method, Method::identity);
      }
    }
  }
}

TEST(QFromG, OrderZeroUsesNegativeOrder) {
  const auto a = q_from_g(0.0, 2.0, 0.0);
  EXPECT_NEAR(a.value, 1.0 / std::sqrt(3.0), 1e-12);
  const auto b = q_from_g(0.0, 2.0, 3.0);
  EXPECT_NEAR(b.value, eval_Q(GoodParams::for_q(0.0, 2.0, 3.0)).value, 1e-11);
}
