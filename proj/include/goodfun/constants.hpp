#pragma once

#include <map>
#include <string>

namespace goodfun {

/// Remainder constants and regime thresholds.
///
/// The C_* values bound scaled remainders of the asymptotic formulas; they are
/// measured by the calibration sweep (`goodfun calibrate`) as twice the largest
/// scaled remainder seen on its grid. The defaults below mirror the committed
/// data/constants.txt.
struct Constants {
  double c_diag = 0.3153600431936327;  // |J_x(x) - diag| <= c_diag / x
  double c_ref = 0.063125878010739947;  // |J_x(-x) - reflected| <= c_ref / x
  double c_shift = 0.25239288421284284;  // |J_{x+k}(-x) - two-term| <= c_shift (1 + |k|^3) / x
  double c_engine = 1.1968254023754867;  // stationary-phase rest <= c_engine * norms / x
  double c_large = 1.1943944597550809;  // |H - large-s formula| <= c_large max(rho^-4, rho^-2) / x
  double c_small = 0.17724968905713467;  // |H - small-rho formula| <= c_small
  double s_hi = 50.0;
  double s_lo = 0.02;
  double u_hi = 50.0;
  double rho_cut = 0.5;

  bool operator==(const Constants&) const = default;
};

/// Parses the `key = value` text format (`#` starts a comment). Unknown keys
/// and malformed lines throw DomainError; missing keys keep their defaults.
Constants parse_constants(const std::string& text);
Constants load_constants(const std::string& path);

/// Serializes with 17 significant digits and a short header comment.
std::string format_constants(const Constants& c);
void save_constants(const std::string& path, const Constants& c);

/// Key -> value view, sorted by key.
std::map<std::string, double> to_map(const Constants& c);

/// FNV-1a 64-bit hash of `text`, as 16 lowercase hex digits.
std::string content_hash(const std::string& text);

/// Path resolution: explicit flag, then $GOODFUN_CONSTANTS, then the
/// compiled-in repository default.
std::string resolve_constants_path(const std::string& flag_value);

}  // namespace goodfun
