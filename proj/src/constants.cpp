#include "goodfun/constants.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "goodfun/core.hpp"

#ifndef GOODFUN_DEFAULT_CONSTANTS
#define GOODFUN_DEFAULT_CONSTANTS "data/constants.txt"
#endif

namespace goodfun {
namespace {

double* slot(Constants& c, const std::string& key) {
  if (key == "c_diag") return &c.c_diag;
  if (key == "c_ref") return &c.c_ref;
  if (key == "c_shift") return &c.c_shift;
  if (key == "c_engine") return &c.c_engine;
  if (key == "c_large") return &c.c_large;
  if (key == "c_small") return &c.c_small;
  if (key == "s_hi") return &c.s_hi;
  if (key == "s_lo") return &c.s_lo;
  if (key == "u_hi") return &c.u_hi;
  if (key == "rho_cut") return &c.rho_cut;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Constants parse_constants(const std::string& text) {
  Constants c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("constants", "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double* dst = slot(c, key);
    if (!dst) throw DomainError("constants", "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    char* end = nullptr;
    const double v = std::strtod(val.c_str(), &end);
    if (val.empty() || *end != '\0' || !(v > 0.0))
      throw DomainError("constants", "line " + std::to_string(lineno) + ": bad value for " + key);
    *dst = v;
  }
  return c;
}

Constants load_constants(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("constants", "cannot open constants file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_constants(ss.str());
}

std::map<std::string, double> to_map(const Constants& c) {
  return {{"c_diag", c.c_diag},     {"c_ref", c.c_ref},   {"c_shift", c.c_shift}, {"c_engine", c.c_engine},
          {"c_large", c.c_large},   {"c_small", c.c_small}, {"s_hi", c.s_hi},     {"s_lo", c.s_lo},
          {"u_hi", c.u_hi},         {"rho_cut", c.rho_cut}};
}

std::string format_constants(const Constants& c) {
  std::string out =
      "# goodfun remainder constants and regime thresholds.\n"
      "# c_* values are written by `goodfun calibrate`: twice the largest scaled\n"
      "# remainder observed on the calibration grid.\n";
  const char* order[] = {"c_diag", "c_ref", "c_shift", "c_engine", "c_large", "c_small",
                         "s_hi",   "s_lo",  "u_hi",    "rho_cut"};
  const auto m = to_map(c);
  for (const char* key : order) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", m.at(key));
    out += std::string(key) + " = " + buf + "\n";
  }
  return out;
}

void save_constants(const std::string& path, const Constants& c) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("constants", "cannot write constants file " + path);
  out << format_constants(c);
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string resolve_constants_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("GOODFUN_CONSTANTS"); env && *env) return env;
  return GOODFUN_DEFAULT_CONSTANTS;
}

}  // namespace goodfun
