#include "goodfun/calibration.hpp"

#include <cmath>
#include <cstdio>

#include "goodfun/anger.hpp"
#include "goodfun/good.hpp"
#include "goodfun/phase.hpp"
#include "goodfun/regimes.hpp"

namespace goodfun {
namespace {

constexpr double kSafety = 2.0;

// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

std::string where(const char* fmt, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

void offer(SweepMaximum& m, double scaled, const std::string& at) {
  ++m.points;
  if (scaled > m.observed) {
    m.observed = scaled;
    m.argmax = at;
  }
}

}  // namespace

SweepMaximum sweep_diag(const QuadConfig& cfg) {
  SweepMaximum m;
  m.key = "c_diag";
  for (double x : log_grid(100.0, 1e4, 16)) {
    const EvalResult j = anger_J(x, x, cfg);
    if (!j.converged) {
      ++m.skipped;
      continue;
    }
    offer(m, x * std::abs(j.value - anger_diag_asym(x).value), where("x=%.6g", x));
  }
  return m;
}

SweepMaximum sweep_reflected(const QuadConfig& cfg) {
  SweepMaximum m;
  m.key = "c_ref";
  for (double x : log_grid(100.0, 1e4, 16)) {
    const EvalResult j = anger_J(x, -x, cfg);
    if (!j.converged) {
      ++m.skipped;
      continue;
    }
    offer(m, x * std::abs(j.value - anger_reflected_asym(x).value), where("x=%.6g", x));
  }
  return m;
}

SweepMaximum sweep_shift(const QuadConfig& cfg) {
  SweepMaximum m;
  m.key = "c_shift";
  for (long k : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L}) {
    for (double x : log_grid(100.0, 1e4, 12)) {
      const EvalResult j = anger_J(x + static_cast<double>(k), -x, cfg);
      if (!j.converged) {
        ++m.skipped;
        continue;
      }
      const double ak = std::abs(static_cast<double>(k));
      offer(m, x * std::abs(j.value - anger_shifted_asym(x, k).value) / (1.0 + ak * ak * ak),
            where("x=%.6g k=%.0f", x, static_cast<double>(k)));
    }
  }
  return m;
}

SweepMaximum sweep_engine(const QuadConfig& cfg) {
  SweepMaximum m;
  m.key = "c_engine";
  std::vector<std::pair<std::string, PhaseProblem>> problems;
  for (double rho : {0.5, 1.0, 2.0}) problems.emplace_back(where("good rho=%.3g", rho), good_phase_problem(rho));
  for (long k : {0L, 1L, 2L, 5L})
    problems.emplace_back(where("anger k=%.0f", static_cast<double>(k)), anger_phase_problem(k));

  Constants unit;
  unit.c_engine = 1.0;
  for (auto& [name, prob] : problems) {
    prob.norms = amplitude_norms(prob, cfg);
    for (double x : log_grid(100.0, 1e4, 8)) {
      const auto q = phase_oracle(prob, x, cfg);
      if (!q.converged) {
        ++m.skipped;
        continue;
      }
      const PhaseExpansion e = two_term_expansion(prob, x, unit);
      // rest_bound with c_engine = 1 is norms / x.
      offer(m, std::abs(q.value - e.main) / e.rest_bound, name + where(" x=%.6g", x));
    }
  }
  return m;
}

SweepMaximum sweep_large(const QuadConfig& cfg) {
  SweepMaximum m;
  m.key = "c_large";
  auto visit = [&](double x, double rho) {
    const HValue h = eval_H(x, rho, cfg);
    if (!h.converged) {
      ++m.skipped;
      return;
    }
    Constants unit;
    unit.c_large = 1.0;
    const EvalResult a = h_asym_large(x, rho, unit);
    // error_estimate with c_large = 1 is the scale max(rho^-4, rho^-2) / x.
    offer(m, std::abs(h.h - a.value) / a.error_estimate, where("x=%.6g rho=%.3g", x, rho));
  };
  for (double rho : {0.5, 0.7, 1.0, 1.5, 2.0, 5.0})
    for (double x : log_grid(30.0, 1e5, 13)) visit(x, rho);
  // Small rho with x rho^3 >= 50.
  for (double rho : {0.2, 0.3})
    for (double x : log_grid(50.0 / (rho * rho * rho), 1e5, 5)) visit(x, rho);
  return m;
}

SweepMaximum sweep_small(const QuadConfig& cfg, const Constants& base) {
  SweepMaximum m;
  m.key = "c_small";
  for (double rho : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.2, 0.3, 0.5}) {
    for (double x : log_grid(2.5, 2e5, 11)) {
      const HValue h = eval_H(x, rho, cfg);
      if (!h.converged) {
        ++m.skipped;
        continue;
      }
      Constants unit = base;
      unit.c_small = 0.0;
      const EvalResult a = h_asym_small(x, rho, cfg, unit);
      offer(m, std::abs(h.h - a.value), where("x=%.6g rho=%.3g", x, rho));
    }
  }
  return m;
}

CalibrationReport calibrate(const Constants& base, const QuadConfig& cfg,
                            const std::function<void(const std::string&)>& progress) {
  CalibrationReport report;
  report.constants = base;
  auto record = [&](SweepMaximum s, double& slot) {
    slot = kSafety * s.observed;
    if (progress) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%-9s max scaled remainder %.6g at %s (%d points, %d skipped)", s.key.c_str(),
                    s.observed, s.argmax.c_str(), s.points, s.skipped);
      progress(buf);
    }
    report.sweeps.push_back(std::move(s));
  };
  record(sweep_diag(cfg), report.constants.c_diag);
  record(sweep_reflected(cfg), report.constants.c_ref);
  record(sweep_shift(cfg), report.constants.c_shift);
  record(sweep_engine(cfg), report.constants.c_engine);
  record(sweep_large(cfg), report.constants.c_large);
  record(sweep_small(cfg, base), report.constants.c_small);
  return report;
}

}  // namespace goodfun
