#include "goodfun/zeros.hpp"

#include <cmath>
#include <sstream>

#include "goodfun/good.hpp"

namespace goodfun {

const char* to_string(ZeroMethod m) {
  return m == ZeroMethod::bisection ? "bisection" : "secant-refined";
}

ZeroScan find_zeros(double rho, double x_min, double x_max, const QuadConfig& cfg, const ZeroOptions& opt) {
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && 2.0 < x_min && x_min < x_max))
    throw DomainError("range", "need 2 < x_min < x_max");
  const double k_first = std::ceil(x_min - 1.0 / 6.0);
  const double k_last = std::floor(x_max - 1.0 / 6.0);
  if (k_first > k_last) throw DomainError("range", "no alternation point 1/6 + k inside [x_min, x_max]");

  std::vector<double> nodes{x_min};
  for (double k = k_first; k <= k_last; k += 1.0) {
    const double xk = 1.0 / 6.0 + k;
    if (xk > nodes.back()) nodes.push_back(xk);
  }
  if (x_max > nodes.back()) nodes.push_back(x_max);

  ZeroScan out;
  struct Sample {
    double x, h;
    bool usable;
  };
  std::vector<Sample> samples;
  for (double x : nodes) {
    const HValue v = eval_H(x, rho, cfg);
    const bool usable = std::abs(v.h) > 2.0 * v.err;
    if (!usable) {
      out.ambiguous.push_back(x);
      std::ostringstream msg;
      msg << "ambiguous sign at x = " << x << " (|H| = " << std::abs(v.h) << ", err = " << v.err << ")";
      out.log.push_back(msg.str());
    }
    samples.push_back({x, v.h, usable});
  }

  auto H = [&](double x) { return eval_H(x, rho, cfg); };

  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Sample& l = samples[i];
    const Sample& r = samples[i + 1];
    if (!l.usable || !r.usable) continue;
    if ((l.h < 0.0) == (r.h < 0.0)) {
      out.no_bracket.emplace_back(l.x, r.x);
      continue;
    }

    ZeroRecord rec;
    rec.rho = rho;
    rec.bracket = {l.x, r.x};

    int changes = 0;
    double prev = l.h;
    for (int j = 1; j <= opt.scan_points; ++j) {
      const double xs = l.x + (r.x - l.x) * j / opt.scan_points;
      const double hs = (j == opt.scan_points) ? r.h : H(xs).h;
      if ((hs < 0.0) != (prev < 0.0)) ++changes;
      prev = hs;
    }
    rec.sign_changes = changes;
    if (changes > 1) {
      std::ostringstream msg;
      msg << "bracket [" << l.x << ", " << r.x << "] shows " << changes << " sign changes";
      out.log.push_back(msg.str());
    }

    double a = l.x, b = r.x, ha = l.h, hb = r.h;
    while (b - a > opt.bracket_width) {
      const double m = 0.5 * (a + b);
      const double hm = H(m).h;
      if (hm == 0.0) {
        a = b = m;
        ha = hb = 0.0;
        break;
      }
      if ((hm < 0.0) == (ha < 0.0)) {
        a = m;
        ha = hm;
      } else {
        b = m;
        hb = hm;
      }
    }
    double xz = 0.5 * (a + b);
    HValue hz = H(xz);
    rec.method = ZeroMethod::bisection;
    if (ha != hb && b > a) {
      const double xs = a - ha * (b - a) / (hb - ha);
      if (xs > a && xs < b) {
        const HValue hs = H(xs);
        if (std::abs(hs.h) < std::abs(hz.h)) {
          xz = xs;
          hz = hs;
          rec.method = ZeroMethod::secant_refined;
        }
      }
    }
    rec.x_zero = xz;
    rec.residual = std::abs(hz.h);
    if (rec.residual > opt.zero_tol + hz.err) {
      std::ostringstream msg;
      msg << "residual " << rec.residual << " at x = " << xz << " exceeds zero_tol + err";
      out.log.push_back(msg.str());
    }
    out.zeros.push_back(rec);
  }
  return out;
}

}  // namespace goodfun
