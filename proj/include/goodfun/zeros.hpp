#pragma once

#include <string>
#include <utility>
#include <vector>

#include "goodfun/core.hpp"

namespace goodfun {

enum class ZeroMethod { bisection, secant_refined };

const char* to_string(ZeroMethod m);

struct ZeroRecord {
  double x_zero = 0.0;
  std::pair<double, double> bracket;
  double rho = 0.0;
  double residual = 0.0;  // |H(x_zero, rho)|
  ZeroMethod method = ZeroMethod::bisection;
  int sign_changes = 1;   // observed on a sub-grid of the bracket; > 1 means several zeros
};

struct ZeroOptions {
  double zero_tol = 1e-9;
  double bracket_width = 1e-10;
  int scan_points = 16;  // sub-grid used to count sign changes inside each bracket
};

struct ZeroScan {
  std::vector<ZeroRecord> zeros;                          // increasing x_zero
  std::vector<std::pair<double, double>> no_bracket;      // node pairs without a sign change
  std::vector<double> ambiguous;                          // nodes with |H| <= 2 err, skipped
  std::vector<std::string> log;
};

/// Zeros of x -> H(x, rho) in [x_min, x_max], bracketed at the alternation
/// nodes x_k = 1/6 + k (plus the interval ends) and refined by bisection.
ZeroScan find_zeros(double rho, double x_min, double x_max, const QuadConfig& cfg = {},
                    const ZeroOptions& opt = {});

}  // namespace goodfun
