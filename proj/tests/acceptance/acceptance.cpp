// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "goodfun/anger.hpp"
#include "goodfun/cli.hpp"
#include "goodfun/constants.hpp"
#include "goodfun/good.hpp"
#include "goodfun/identities.hpp"
#include "goodfun/regimes.hpp"
#include "goodfun/zeros.hpp"

using namespace goodfun;

namespace {

const Constants kC = load_constants(GOODFUN_DEFAULT_CONSTANTS);

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Tracks the worst ratio observed/allowed over a set of checks.
struct Worst {
  double ratio = 0.0;
  std::string at;
  int checks = 0;
  bool ok = true;
  void add(double observed, double allowed, const std::string& where) {
    ++checks;
    const double r = observed / allowed;
    if (!(observed <= allowed)) ok = false;
    if (!(r <= ratio)) {
      ratio = r;
      at = where;
    }
  }
  std::string summary() const {
    std::ostringstream s;
    s << checks << " checks, worst observed/allowed " << ratio << " at " << at;
    return s.str();
  }
};

Verdict c1() {
  Worst w;
  for (double rho : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0}) {
    const double exact = 1.0 / (rho * std::sqrt(1.0 + rho * rho));
    w.add(std::abs(eval_H(0.0, rho).h - exact), 1e-10, fmt("rho=%g", rho));
  }
  return {w.ok, w.summary()};
}

Verdict c2() {
  Worst w0, wx, wr;
  for (double rho : log_grid(1e-3, 1e2, 6)) {
    for (double x : log_grid(1e-1, 1e4, 6)) {
      const auto b = bounds_H(x, rho);
      const auto h = eval_H(x, rho);
      const std::string at = fmt("x=%g rho=%g", x, rho);
      w0.add(std::abs(h.h), b.b0 + 2 * h.err, at);

      const double hx = 1e-4;
      const auto xp = eval_H(x + hx, rho), xm = eval_H(x - hx, rho);
      const double dx = std::abs(xp.h - xm.h) / (2 * hx);
      // O(h^2) truncation with |H'''| <= bx (2 pi^2) is far below the slack below.
      wx.add(dx, b.bx + 2 * (xp.err + xm.err) / (2 * hx) + 1e-6 * b.bx, at);

      const double hr = 1e-5 * rho;
      const auto rp = eval_H(x, rho + hr), rm = eval_H(x, rho - hr);
      const double dr = std::abs(rp.h - rm.h) / (2 * hr);
      wr.add(dr, bounds_H(x, rho - hr).brho + 2 * (rp.err + rm.err) / (2 * hr), at);
    }
  }
  return {w0.ok && wx.ok && wr.ok, "|H|: " + w0.summary() + "; |H'_x| (pi*b0): " + wx.summary() +
                                        "; |H'_rho|: " + wr.summary()};
}

Verdict c3() {
  Worst w;
  for (double rho : {2.0, 5.0, 10.0, 50.0}) {
    for (double x0 : {0.0, 1.0, 2.0, 5.0, 10.0}) {
      const auto h = eval_H(x0, rho);
      const auto j = anger_J(x0, -x0);
      const double rest = std::abs(h.h - j.value / (rho * rho));
      w.add(rest, std::pow(rho, -4) + 2 * (h.err + j.error_estimate / (rho * rho)), fmt("x0=%g rho=%g", x0, rho));
    }
  }
  return {w.ok, w.summary()};
}

Verdict c4() {
  Worst w;
  std::string slopes;
  bool slopes_ok = true;
  for (double rho : {0.5, 1.0, 2.0}) {
    std::vector<double> lx, lr;
    for (double x : log_grid(1e2, 1e5, 8)) {
      const auto h = eval_H(x, rho);
      const double rest = std::abs(h.h - h_asym_large(x, rho, kC).value);
      const double r4 = rho * rho * rho * rho;
      w.add(x * r4 * std::max(rest - h.err, 0.0), kC.c_large, fmt("x=%g rho=%g", x, rho));
      lx.push_back(std::log(x));
      lr.push_back(std::log(rest));
    }
    const double slope = ls_slope(lx, lr);
    slopes_ok = slopes_ok && slope <= -1.0 + 0.15;
    slopes += fmt(" rho=%g:%.3f", rho, slope);
  }
  return {w.ok && slopes_ok, "x rho^4 |R| <= C_large: " + w.summary() + "; log-log slopes" + slopes};
}

Verdict c5() {
  Worst w, rel;
  struct Case {
    double x, rho;
  };
  // (ii) u = 10, s = 1e-7 and (iii) u = 0.5.
  for (const Case& k : {Case{1e5, 1e-4}, Case{1e3, 5e-4}}) {
    const auto h = eval_H(k.x, k.rho);
    const auto small = h_asym_small(k.x, k.rho, {}, kC);
    const std::string at = fmt("x=%g rho=%g", k.x, k.rho);
    w.add(std::abs(h.h - small.value), kC.c_small + h.err, at);
    const double u = k.x * k.rho;
    const double limit = (std::exp(-2 * u) + cos_pi(k.x)) / (2 * k.rho);
    rel.add(std::abs(h.h - limit) / std::abs(h.h), 0.01, at);
  }
  return {w.ok && rel.ok, "|H - small-rho formula| <= C_small: " + w.summary() +
                              "; relative error of the limit form <= 1%: " + rel.summary()};
}

Verdict c6() {
  Worst w, rec;
  const double rho = 0.01;
  QuadConfig cfg;
  cfg.max_panels = 10000000;
  bool converged = true;
  for (double s : {0.5, 1.0, 6.0}) {
    const double x = s / (rho * rho * rho);
    const auto h = eval_H(x, rho, cfg);
    converged = converged && h.converged;
    const auto small = h_asym_small(x, rho, cfg, kC);
    w.add(std::abs(h.h - small.value), kC.c_small + h.err, fmt("s=%g x=%g", s, x));
    const auto ct = cubic_tail(s);
    const complex back = ct.c_mod * complex(cos_pi(ct.psi_arg), sin_pi(ct.psi_arg));
    rec.add(std::abs(back - ct.value), 1e-12, fmt("lambda=%g", s));
  }
  return {w.ok && rec.ok && converged,
          "|H - small-rho formula| <= C_small: " + w.summary() + "; reconstruction: " + rec.summary() +
              (converged ? "" : "; oracle did not converge")};
}

Verdict c7() {
  Worst w;
  for (double lambda : {10.0, 1e2, 1e3, 1e4}) {
    const auto a = i_lambda_asym(lambda);
    const auto q = i_lambda_oracle(lambda);
    w.add(std::abs(q.value - a.main), a.rest_bound + q.err, fmt("lambda=%g", lambda));
  }
  return {w.ok, w.summary()};
}

Verdict c8() {
  Worst w;
  for (long k : {0L, 1L, -1L, 2L, -2L, 5L, -5L}) {
    for (double x : {1e2, 1e3, 1e4}) {
      const auto j = anger_J(x + static_cast<double>(k), -x);
      const double kk = std::abs(static_cast<double>(k));
      const double rest = std::max(std::abs(j.value - anger_shifted_asym(x, k, kC).value) - j.error_estimate, 0.0);
      w.add(x * rest / (1 + kk * kk * kk), kC.c_shift, fmt("x=%g k=%g", x, static_cast<double>(k)));
    }
  }
  return {w.ok, w.summary()};
}

Verdict c9() {
  Worst ode, decay, series, qg;
  for (double gamma : {0.0, 1.5, 4.0}) {
    for (double rho : {0.3, 1.0, 3.0}) {
      for (double x : {0.5, 5.0, 25.0}) {
        const std::string at = fmt("gamma=%g rho=%g x=%g", gamma, rho, x);
        ode.add(ode_residual(gamma, rho, x, 1e-3).residual, 1e-4, at);
        const auto coarse = ode_residual(gamma, rho, x, 0.1);
        const auto fine = ode_residual(gamma, rho, x, 0.05);
        // Halving h must cut the residual by about 4 unless it already sits at the noise floor.
        const double expected = coarse.residual / 4.0;
        decay.add(std::abs(fine.residual - expected), 0.25 * expected + fine.noise_floor, at);
      }
    }
  }
  for (double gamma : {0.0, 1.5, 4.0}) {
    for (double rho : {0.5, 1.0, 3.0}) {
      for (double x : {0.5, 5.0, 25.0}) {
        const auto s = series_partial_sum(gamma, rho, x, 40);
        const auto g = eval_G({gamma, rho, x, std::nullopt});
        series.add(std::abs(s.value - g.value), s.truncation.tail_bound + 2 * (s.err + g.error_estimate),
                   fmt("gamma=%g rho=%g x=%g", gamma, rho, x));
      }
    }
  }
  for (double xi : {1.01, std::sqrt(2.0), 2.0, 10.0}) {
    for (double gamma : {1.0, 2.0, 5.0}) {
      for (double x : {0.0, 1.0, 10.0, 100.0}) {
        const auto a = q_from_g(gamma, xi, x);
        const auto b = eval_Q(GoodParams::for_q(gamma, xi, x));
        qg.add(std::abs(a.value - b.value), 1e-9, fmt("xi=%g gamma=%g x=%g", xi, gamma, x));
      }
    }
  }
  return {ode.ok && decay.ok && series.ok && qg.ok, "ODE residual: " + ode.summary() + "; h^2 decay: " +
                                                        decay.summary() + "; series K=40: " + series.summary() +
                                                        "; Q-G relation: " + qg.summary()};
}

Verdict c10() {
  const auto scan = find_zeros(1.0, 10.0, 31.5);
  bool ok = scan.ambiguous.empty();
  Worst res;
  std::vector<double> ms, offsets;
  for (int m = 10; m <= 30; ++m) {
    const double lo = m + 1.0 / 6.0, hi = m + 7.0 / 6.0;
    int count = 0;
    for (const auto& z : scan.zeros) {
      if (z.x_zero > lo && z.x_zero < hi) {
        ++count;
        const auto h = eval_H(z.x_zero, 1.0);
        res.add(z.residual, 1e-9 + h.err, fmt("x=%.10g", z.x_zero));
        ms.push_back(std::log(m));
        offsets.push_back(std::log(std::abs(z.x_zero - m - 2.0 / 3.0)));
      }
    }
    if (count != 1) ok = false;
  }
  const double slope = offsets.size() > 1 ? ls_slope(ms, offsets) : 0.0;
  const bool trend = slope < 0.0 && offsets.back() < offsets.front();
  return {ok && res.ok && trend,
          fmt("%g zeros, one per interval: ", static_cast<double>(scan.zeros.size())) + (ok ? "yes" : "no") +
              "; residual: " + res.summary() +
              fmt("; |x_m - m - 2/3| from %.4g to %.4g, log-log slope %.3f", std::exp(offsets.front()),
                  std::exp(offsets.back()), slope)};
}

Verdict c11() {
  const double x = 1e5, rho = 0.3;
  const auto large = h_asym_large(x, rho, kC);
  const auto small = h_asym_small(x, rho, {}, kC);
  const double gap = std::abs(large.value - small.value);
  const double allowed = large.error_estimate + small.error_estimate;
  return {gap <= allowed, fmt("|large - small| = %.3g, claimed errors %.3g + %.3g", gap, large.error_estimate,
                              small.error_estimate)};
}

Verdict c12() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "goodfun_acceptance_a.csv", b = dir / "goodfun_acceptance_b.csv";
  auto run_once = [&](const std::filesystem::path& p) {
    std::ostringstream out, err;
    return cli::run({"--constants-file", GOODFUN_DEFAULT_CONSTANTS, "--out", p.string(), "compare", "--rho", "0.05",
                     "--xmin", "3", "--xmax", "1e5", "--points", "40"},
                    out, err);
  };
  const int ca = run_once(a), cb = run_once(b);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const std::string sa = slurp(a), sb = slurp(b);
  const bool ok = ca == 0 && cb == 0 && !sa.empty() && sa == sb;
  for (const auto& p : {a, b}) {
    std::filesystem::remove(p);
    std::filesystem::remove(p.string() + ".manifest.json");
  }
  return {ok, fmt("exit codes %g/%g, %g bytes, identical: ", ca, cb, static_cast<double>(sa.size())) +
                  (sa == sb ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"closed form H(0, rho)", c1},
      {"a-priori bounds on |H|, |H'_x|, |H'_rho|", c2},
      {"comparison with the Anger function for large rho", c3},
      {"large-s remainder", c4},
      {"small-rho cases (ii) and (iii)", c5},
      {"critical regime", c6},
      {"cubic oscillatory integral bound", c7},
      {"shifted Anger remainder", c8},
      {"identities", c9},
      {"zeros", c10},
      {"overlap consistency", c11},
      {"determinism of compare", c12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failed;
    std::printf("criterion %2zu %s  %s (%.1f s): %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
