#pragma once

// Adaptive Gauss-Kronrod quadrature used as the reference evaluator for every
// closed-form approximation in the library.
//
// The partition is built in two stages. An a-priori stage grades panels
// geometrically toward declared hot spots (down to endpoint_scale * peak_width)
// and caps every panel at oscillation_panel_factor * 2 pi / (1 + frequency).
// An error-driven stage then bisects the panel with the largest estimate until
// the global tolerance is met or max_panels is reached. Panels whose estimate is
// already far below the absolute budget are folded into a compensated running
// sum, so memory stays bounded for partitions with millions of panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "goodfun/core.hpp"

namespace goodfun {

template <class T>
struct Integrand {
  std::function<T(double)> f;
  std::vector<double> hot_spots;  // points where the integrand peaks
  double peak_width = 0.0;        // width of each peak; 0 disables grading
  double frequency = 0.0;         // bound on |d(phase)/dt|
};

using ComplexIntegrand = Integrand<complex>;
using RealIntegrand = Integrand<double>;

template <class T>
struct QuadResult {
  T value{};
  double err = 0.0;
  long panels = 0;
  bool converged = true;
};

enum class EnvelopeKind { algebraic, super_exponential };

/// |g(t)| <= scale / (1 + t^2)            (algebraic)
/// |g(t)| <= scale * exp(-rate * t^3)     (super_exponential)
struct TailEnvelope {
  EnvelopeKind kind = EnvelopeKind::algebraic;
  double scale = 1.0;
  double rate = 0.0;

  double operator()(double t) const {
    return kind == EnvelopeKind::algebraic ? scale / (1.0 + t * t)
                                           : scale * std::exp(-rate * t * t * t);
  }
  /// Analytic bound on the integral of the envelope over [t, infinity).
  double tail_beyond(double t) const {
    if (kind == EnvelopeKind::algebraic) return scale * std::atan2(1.0, t);
    return scale * std::exp(-rate * t * t * t) / (3.0 * rate * t * t);
  }
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const complex& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Neumaier-compensated accumulator.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class T>
class Accumulator;

template <>
class Accumulator<double> {
 public:
  void add(double v) { s_.add(v); }
  double value() const { return s_.value(); }

 private:
  KahanSum s_;
};

template <>
class Accumulator<complex> {
 public:
  void add(const complex& v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double err = 0.0;
  double floor = 0.0;  // rounding level of the panel sum; bisection cannot go below it
};

struct Rule31 {
  std::array<double, 16> x{};   // Kronrod abscissae, x[0] = 0
  std::array<double, 16> wk{};  // Kronrod weights
  std::array<double, 8> wg{};   // Gauss weights at x[0], x[2], ..., x[14]
};

inline const Rule31& rule31() {
  static const Rule31 rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    Rule31 r;
    const auto& kx = gauss_kronrod<double, 31>::abscissa();
    const auto& kw = gauss_kronrod<double, 31>::weights();
    const auto& gw = gauss<double, 15>::weights();
    std::copy(kx.begin(), kx.end(), r.x.begin());
    std::copy(kw.begin(), kw.end(), r.wk.begin());
    std::copy(gw.begin(), gw.end(), r.wg.begin());
    return r;
  }();
  return rule;
}

// One G15/K31 panel with the QUADPACK error model. `noise` is the relative
// error of a single integrand sample; it raises the per-panel floor.
template <class T, class F>
Panel<T> kronrod_panel(const F& f, double a, double b, double noise) {
  const Rule31& r = rule31();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 31> fv;
  fv[0] = f(center);
  for (int i = 1; i < 16; ++i) {
    fv[2 * i - 1] = f(center - half * r.x[i]);
    fv[2 * i] = f(center + half * r.x[i]);
  }
  for (const T& v : fv)
    if (!finite(v)) throw NumericalError("non-finite integrand sample");

  T resk = r.wk[0] * fv[0];
  T resg = r.wg[0] * fv[0];
  double resabs = r.wk[0] * magnitude(fv[0]);
  for (int i = 1; i < 16; ++i) {
    const T pair = fv[2 * i - 1] + fv[2 * i];
    resk += r.wk[i] * pair;
    resabs += r.wk[i] * (magnitude(fv[2 * i - 1]) + magnitude(fv[2 * i]));
    if (i % 2 == 0) resg += r.wg[i / 2] * pair;
  }
  const T mean = resk * 0.5;
  double resasc = r.wk[0] * magnitude(fv[0] - mean);
  for (int i = 1; i < 16; ++i)
    resasc += r.wk[i] * (magnitude(fv[2 * i - 1] - mean) + magnitude(fv[2 * i] - mean));

  const double ah = std::abs(half);
  resabs *= ah;
  resasc *= ah;
  double err = magnitude((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = (50.0 * eps + noise) * resabs;
  err = std::max(err, floor);

  return {a, b, resk * half, err, floor};
}

// Global adaptive driver over an a-priori partition. `cells` are the graded
// breakpoints; each cell is split evenly so no panel exceeds `cap`. A phase
// growing like frequency * t is rounded to about eps * frequency * |t|, which
// bounds the accuracy of every sample.
template <class T, class F>
QuadResult<T> adaptive(const F& f, const std::vector<double>& cells, double cap, double abs_budget,
                       double frequency, const QuadConfig& cfg) {
  auto panel = [&](double a, double b) {
    const double noise = std::numeric_limits<double>::epsilon() * frequency * std::max(std::abs(a), std::abs(b));
    return kronrod_panel<T>(f, a, b, noise);
  };
  const double span = cells.back() - cells.front();
  auto by_err = [](const Panel<T>& l, const Panel<T>& r) { return l.err < r.err; };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(by_err)> active(by_err);

  Accumulator<T> settled;
  KahanSum settled_err;
  KahanSum settled_floor;
  T active_value{};
  double active_err = 0.0;
  double active_floor = 0.0;
  long count = 0;

  auto place = [&](const Panel<T>& p) {
    const double len = p.b - p.a;
    const bool tiny = len <= 64.0 * std::numeric_limits<double>::epsilon() *
                                 std::max(std::abs(p.a), std::abs(p.b));
    if (tiny || p.err <= p.floor || p.err <= 0.5 * abs_budget * len / span) {
      settled.add(p.value);
      settled_err.add(p.err);
      settled_floor.add(p.floor);
    } else {
      active.push(p);
      active_value += p.value;
      active_err += p.err;
      active_floor += p.floor;
    }
  };

  for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
    const double a = cells[c];
    const double b = cells[c + 1];
    const long pieces = std::max<long>(1, static_cast<long>(std::ceil((b - a) / cap)));
    const double h = (b - a) / static_cast<double>(pieces);
    for (long k = 0; k < pieces; ++k) {
      const double pa = a + h * static_cast<double>(k);
      const double pb = (k + 1 == pieces) ? b : a + h * static_cast<double>(k + 1);
      place(panel(pa, pb));
      ++count;
    }
  }

  bool converged = true;
  for (;;) {
    const T total = settled.value() + active_value;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(total));
    const double total_err = settled_err.value() + active_err;
    if (active.empty() || total_err <= tol) break;
    // What is left above the rounding floors is within tolerance; more
    // bisection only reshuffles rounding noise.
    if (total_err - settled_floor.value() - active_floor <= 0.5 * tol) break;
    if (count >= cfg.max_panels) {
      converged = false;
      break;
    }
    Panel<T> worst = active.top();
    active.pop();
    active_value -= worst.value;
    active_err -= worst.err;
    active_floor -= worst.floor;
    const double mid = 0.5 * (worst.a + worst.b);
    place(panel(worst.a, mid));
    place(panel(mid, worst.b));
    ++count;
    if (active.empty()) {
      active_value = T{};
      active_err = 0.0;
      active_floor = 0.0;
    }
  }

  // Final sums in a fixed order, independent of incremental drift.
  std::vector<Panel<T>> rest;
  rest.reserve(active.size());
  while (!active.empty()) {
    rest.push_back(active.top());
    active.pop();
  }
  std::sort(rest.begin(), rest.end(), [](const Panel<T>& l, const Panel<T>& r) { return l.a < r.a; });
  Accumulator<T> value = settled;
  KahanSum err = settled_err;
  for (const auto& p : rest) {
    value.add(p.value);
    err.add(p.err);
  }
  // Without the panel limit the error is within tolerance or down to the
  // rounding floors, i.e. as small as binary64 allows.
  return {value.value(), err.value(), count, converged};
}

inline std::vector<double> graded_cells(double a, double b, const std::vector<double>& hot_spots,
                                        double width) {
  std::vector<double> pts{a, b};
  for (double h : hot_spots) {
    if (h < a || h > b) continue;
    pts.push_back(h);
    if (width <= 0.0 || width >= 0.25 * (b - a)) continue;
    for (double d = width; d < b - a; d *= 2.0) {
      if (h - d > a) pts.push_back(h - d);
      if (h + d < b) pts.push_back(h + d);
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> cells;
  const double min_gap = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  for (double p : pts)
    if (cells.empty() || p - cells.back() > min_gap) cells.push_back(p);
  if (cells.back() != b) cells.back() = b;
  return cells;
}

inline double panel_cap(double frequency, const QuadConfig& cfg) {
  return cfg.oscillation_panel_factor * 2.0 * pi / (1.0 + std::abs(frequency));
}

}  // namespace detail

/// Integral of `g.f` over the finite interval [a, b].
///
/// On return `err` is a heuristic absolute-error estimate; `converged` is false
/// when max_panels stopped refinement before the tolerance was met.
template <class T>
QuadResult<T> integrate_finite(const Integrand<T>& g, double a, double b, const QuadConfig& cfg) {
  cfg.check();
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw DomainError("interval", "integrate_finite needs finite a < b");
  const auto cells = detail::graded_cells(a, b, g.hot_spots, cfg.endpoint_scale * g.peak_width);
  return detail::adaptive<T>(g.f, cells, detail::panel_cap(g.frequency, cfg), cfg.abs_tol,
                             std::abs(g.frequency), cfg);
}

/// Integral of `g.f` over [0, infinity).
///
/// The interval is truncated at a point T chosen from the envelope so that the
/// analytic tail bound is below a quarter of abs_tol, unless the oscillation
/// cap would then need more than max_panels panels; the tail bound is always
/// added to the returned error. Samples exceeding the envelope by more than
/// 10% raise EnvelopeViolated.
template <class T>
QuadResult<T> integrate_tail(const Integrand<T>& g, const TailEnvelope& env, const QuadConfig& cfg) {
  cfg.check();
  if (!(std::isfinite(env.scale) && env.scale > 0.0))
    throw DomainError("envelope", "envelope scale must be finite and > 0");
  if (env.kind == EnvelopeKind::super_exponential && !(std::isfinite(env.rate) && env.rate > 0.0))
    throw DomainError("envelope", "super-exponential envelope needs a finite rate > 0");

  const double target = 0.25 * cfg.abs_tol;
  double t_end = 1.0;
  while (env.tail_beyond(t_end) > target && t_end < 1e300) t_end *= 2.0;
  if (env.kind == EnvelopeKind::super_exponential) {
    double lo = t_end * 0.5, hi = t_end;
    for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (env.tail_beyond(mid) > target ? lo : hi) = mid;
    }
    t_end = std::max(hi, 1.0);
  } else {
    t_end = std::max(1.0, std::tan(0.5 * pi - target / env.scale));
  }
  // Without oscillation the geometric cells alone resolve the decay.
  const double cap = g.frequency > 0.0 ? detail::panel_cap(g.frequency, cfg) : INFINITY;
  if (g.frequency > 0.0) t_end = std::min(t_end, std::max(1.0, cap * 0.5 * cfg.max_panels));

  std::vector<double> cells{0.0};
  for (double t = 1.0; t < t_end; t *= 2.0) cells.push_back(t);
  cells.push_back(t_end);

  auto checked = [&](double t) {
    const T v = g.f(t);
    if (detail::magnitude(v) > 1.1 * env(t) + 1e-300)
      throw EnvelopeViolated("integrand exceeds its declared envelope");
    return v;
  };
  QuadResult<T> r = detail::adaptive<T>(checked, cells, cap, 0.5 * cfg.abs_tol, std::abs(g.frequency), cfg);
  const double tail = env.tail_beyond(t_end);
  r.err += tail;
  if (tail > std::max(cfg.abs_tol, cfg.rel_tol * detail::magnitude(r.value))) r.converged = false;
  return r;
}

}  // namespace goodfun
