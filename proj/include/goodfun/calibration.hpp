#pragma once

#include <functional>
#include <string>
#include <vector>

#include "goodfun/constants.hpp"
#include "goodfun/core.hpp"

namespace goodfun {

/// Largest scaled remainder seen for one constant, and where.
struct SweepMaximum {
  std::string key;
  double observed = 0.0;
  std::string argmax;
  int points = 0;
  int skipped = 0;  // oracle did not converge
};

struct CalibrationReport {
  Constants constants;  // thresholds copied from the input, C values = 2 * observed
  std::vector<SweepMaximum> sweeps;
};

/// Runs every remainder sweep against the quadrature oracle. `progress`, when
/// set, receives one line per finished sweep.
CalibrationReport calibrate(const Constants& base, const QuadConfig& cfg = {},
                            const std::function<void(const std::string&)>& progress = {});

// The individual sweeps, each returning the largest scaled remainder.
SweepMaximum sweep_diag(const QuadConfig& cfg);
SweepMaximum sweep_reflected(const QuadConfig& cfg);
SweepMaximum sweep_shift(const QuadConfig& cfg);
SweepMaximum sweep_engine(const QuadConfig& cfg);
SweepMaximum sweep_large(const QuadConfig& cfg);
SweepMaximum sweep_small(const QuadConfig& cfg, const Constants& base);

}  // namespace goodfun
