#include "goodfun/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "goodfun/calibration.hpp"
#include "goodfun/constants.hpp"
#include "goodfun/good.hpp"
#include "goodfun/regimes.hpp"
#include "goodfun/zeros.hpp"

namespace goodfun::cli {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Globals {
  std::optional<double> tol;
  std::string constants_file;
  bool json_out = false;
  bool csv_out = false;
  std::string out;
  bool best_effort = false;
  int threads = 1;
};

struct LoadedConstants {
  Constants values;
  std::string path;
  std::string hash;
};

LoadedConstants load(const Globals& g) {
  LoadedConstants lc;
  lc.path = resolve_constants_path(g.constants_file);
  std::ifstream in(lc.path, std::ios::binary);
  if (!in) {
    // Only the compiled-in default may be absent; then the built-in values apply.
    const char* env = std::getenv("GOODFUN_CONSTANTS");
    if (g.constants_file.empty() && !(env && *env)) {
      lc.hash = content_hash(format_constants(lc.values));
      return lc;
    }
    throw DomainError("constants", "cannot open constants file " + lc.path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  lc.values = parse_constants(ss.str());
  lc.hash = content_hash(ss.str());
  return lc;
}

QuadConfig quad_config(const Globals& g) {
  QuadConfig cfg;
  if (g.tol) {
    cfg.abs_tol = *g.tol;
    cfg.rel_tol = std::min(cfg.rel_tol, *g.tol);
  }
  cfg.check();
  return cfg;
}

std::string timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

using Params = std::vector<std::pair<std::string, std::string>>;

json manifest(const std::string& command, const Params& params, const LoadedConstants& lc,
              const QuadConfig& cfg) {
  json m;
  m["command"] = command;
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = v;
  m["parameters"] = p;
  m["constants_file"] = lc.path;
  m["constants_file_hash"] = lc.hash;
  m["tolerances"] = {{"abs_tol", cfg.abs_tol},
                     {"rel_tol", cfg.rel_tol},
                     {"max_panels", cfg.max_panels},
                     {"endpoint_scale", cfg.endpoint_scale},
                     {"oscillation_panel_factor", cfg.oscillation_panel_factor}};
  m["timestamp"] = timestamp();
  return m;
}

// Evaluates fn(0..n-1) on up to `threads` workers; results keep input order.
template <class Row>
std::vector<Row> parallel_rows(int n, int threads, const std::function<Row(int)>& fn) {
  std::vector<Row> rows(static_cast<std::size_t>(n));
  int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) rows[i] = fn(i);
    });
  for (auto& t : pool) t.join();
  return rows;
}

/// A table: header plus rows of preformatted cells. JSON output keeps numbers
/// as numbers by parsing the cells back, so both views hold identical digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<bool>> numeric;

  void add(std::vector<std::pair<std::string, bool>> cells) {
    std::vector<std::string> r;
    std::vector<bool> n;
    for (auto& [c, num] : cells) {
      r.push_back(std::move(c));
      n.push_back(num);
    }
    rows.push_back(std::move(r));
    numeric.push_back(std::move(n));
  }

  std::string csv() const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
        if (!quote) {
          s += cells[i];
          continue;
        }
        s += '"';
        for (char c : cells[i]) {
          if (c == '"') s += '"';
          s += c;
        }
        s += '"';
      }
      s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
  }

  json as_json() const {
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json o;
      for (std::size_t j = 0; j < header.size(); ++j) {
        const auto& c = rows[i][j];
        if (numeric[i][j] && !c.empty() && c != "nan" && c != "inf" && c != "-inf")
          o[header[j]] = json::parse(c);
        else
          o[header[j]] = c;
      }
      arr.push_back(o);
    }
    return arr;
  }
};

std::pair<std::string, bool> num(double v) { return {format_number(v), true}; }
std::pair<std::string, bool> str(std::string v) { return {std::move(v), false}; }

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DomainError("out", "cannot write " + path);
  f << data;
  if (!f) throw DomainError("out", "write failed for " + path);
}

/// Emits a table per the format flags: CSV by default, JSON on --json. With
/// --out the data goes to the file and the manifest to <out>.manifest.json.
void emit_table(const Globals& g, const Table& t, const json& man, const json& summary, std::ostream& out,
                std::ostream& err) {
  if (g.json_out) {
    json doc;
    doc["manifest"] = man;
    doc["rows"] = t.as_json();
    if (!summary.is_null()) doc["summary"] = summary;
    std::string text = doc.dump(2) + "\n";
    if (g.out.empty()) {
      out << text;
    } else {
      write_file(g.out, text);
    }
    return;
  }
  std::string text = t.csv();
  if (g.out.empty()) {
    out << text;
    if (!summary.is_null()) err << "# " << summary.dump() << "\n";
  } else {
    write_file(g.out, text);
    write_file(g.out + ".manifest.json", man.dump(2) + "\n");
    if (!summary.is_null()) out << summary.dump() << "\n";
  }
}

std::vector<double> spaced(double a, double b, int n, bool log_spacing) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[i] = log_spacing ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a);
  }
  v.front() = a;
  v.back() = b;
  return v;
}

int finish(bool all_converged, const Globals& g, std::ostream& err) {
  if (all_converged || g.best_effort) return ok;
  err << "error: quadrature tolerance not reached (use --best-effort to accept)\n";
  return tolerance_failure;
}

// --------------------------------------------------------------------------

struct EvalArgs {
  std::string fn = "H";
  std::optional<double> gamma, rho, x, xi;
};

int cmd_eval(const Globals& g, const EvalArgs& a, std::ostream& out, std::ostream& err) {
  auto lc = load(g);
  auto cfg = quad_config(g);
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw DomainError(name, std::string("--") + name + " is required");
    return *v;
  };
  Params params{{"fn", a.fn}};
  auto record = [&](const char* k, const std::optional<double>& v) {
    if (v) params.emplace_back(k, format_number(*v));
  };
  record("gamma", a.gamma);
  record("rho", a.rho);
  record("x", a.x);
  record("xi", a.xi);

  json inputs;
  EvalResult r;
  std::optional<Regime> regime;
  if (a.fn == "G") {
    GoodParams p{need(a.gamma, "gamma"), need(a.rho, "rho"), need(a.x, "x"), std::nullopt};
    inputs = {{"gamma", p.gamma}, {"rho", p.rho}, {"x", p.x}};
    r = eval_G(p, cfg);
  } else if (a.fn == "Q") {
    auto p = GoodParams::for_q(need(a.gamma, "gamma"), need(a.xi, "xi"), need(a.x, "x"));
    inputs = {{"gamma", p.gamma}, {"xi", *p.xi}, {"x", p.x}};
    r = eval_Q(p, cfg);
  } else if (a.fn == "H") {
    double x = need(a.x, "x"), rho = need(a.rho, "rho");
    inputs = {{"x", x}, {"rho", rho}};
    auto h = eval_H(x, rho, cfg);
    r.value = h.h;
    r.error_estimate = h.err;
    r.converged = h.converged;
    regime = classify(x, rho, lc.values);
  } else {
    throw DomainError("fn", "--fn must be G, Q or H");
  }

  json doc;
  doc["function"] = a.fn;
  doc["inputs"] = inputs;
  doc["value"] = r.value;
  doc["error_estimate"] = r.error_estimate;
  doc["method"] = to_string(r.method);
  doc["converged"] = r.converged;
  if (regime) doc["regime"] = to_string(regime->kind);
  doc["manifest"] = manifest("eval", params, lc, cfg);
  std::string text = doc.dump(2) + "\n";
  if (g.out.empty())
    out << text;
  else
    write_file(g.out, text);
  return finish(r.converged, g, err);
}

// --------------------------------------------------------------------------

struct CompareArgs {
  double rho = 0.0, xmin = 0.0, xmax = 0.0;
  int points = 50;
  std::string spacing = "log";
};

struct CompareRow {
  double x = 0.0;
  Regime regime;
  double oracle = NAN, oracle_err = NAN, approx = NAN, claimed = NAN, actual = NAN;
  bool converged = true;
  std::string status = "ok";
};

int cmd_compare(const Globals& g, const CompareArgs& a, std::ostream& out, std::ostream& err) {
  if (!(std::isfinite(a.rho) && a.rho > 0.0)) throw DomainError("rho", "rho must be > 0");
  if (!(std::isfinite(a.xmin) && std::isfinite(a.xmax) && a.xmin < a.xmax))
    throw DomainError("range", "need xmin < xmax");
  if (a.points < 2) throw DomainError("points", "points must be >= 2");
  bool log_spacing = a.spacing == "log";
  if (!log_spacing && a.spacing != "linear") throw DomainError("spacing", "spacing must be log or linear");
  if (log_spacing && a.xmin <= 0.0) throw DomainError("range", "log spacing needs xmin > 0");

  auto lc = load(g);
  auto cfg = quad_config(g);
  auto xs = spaced(a.xmin, a.xmax, a.points, log_spacing);
  std::function<CompareRow(int)> fn = [&](int i) {
    CompareRow row;
    row.x = xs[i];
    try {
      row.regime = classify(row.x, a.rho, lc.values);
      auto h = eval_H(row.x, a.rho, cfg);
      row.oracle = h.h;
      row.oracle_err = h.err;
      row.converged = h.converged;
      auto ap = h_approx(row.x, a.rho, cfg, lc.values);
      row.approx = ap.result.value;
      row.claimed = ap.result.error_estimate;
      row.converged = row.converged && ap.result.converged;
      row.actual = std::abs(row.oracle - row.approx);
      if (!row.converged)
        row.status = "unconverged";
      else if (row.actual > row.claimed + row.oracle_err)
        row.status = "exceeds_claim";
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
      row.converged = false;
    }
    return row;
  };
  auto rows = parallel_rows<CompareRow>(a.points, g.threads, fn);

  Table t;
  t.header = {"x", "rho", "s", "u", "regime", "oracle", "oracle_err", "approx", "err_claimed", "err_actual",
              "status"};
  double max_ratio = 0.0;
  int flagged = 0;
  bool all_ok = true;
  for (const auto& r : rows) {
    double s = r.x * a.rho * a.rho * a.rho, u = r.x * a.rho;
    t.add({num(r.x), num(a.rho), num(s), num(u), str(to_string(r.regime.kind)), num(r.oracle), num(r.oracle_err),
           num(r.approx), num(r.claimed), num(r.actual), str(r.status)});
    if (r.status != "ok") ++flagged;
    all_ok = all_ok && r.converged;
    if (std::isfinite(r.actual) && r.claimed > 0.0) max_ratio = std::max(max_ratio, r.actual / r.claimed);
  }
  json summary = {{"rows", rows.size()}, {"flagged", flagged}, {"max_ratio", max_ratio}};
  Params params{{"rho", format_number(a.rho)},
                {"xmin", format_number(a.xmin)},
                {"xmax", format_number(a.xmax)},
                {"points", std::to_string(a.points)},
                {"spacing", a.spacing}};
  emit_table(g, t, manifest("compare", params, lc, cfg), summary, out, err);
  return finish(all_ok, g, err);
}

// --------------------------------------------------------------------------

struct ZerosArgs {
  double rho = 0.0, xmin = 0.0, xmax = 0.0;
};

int cmd_zeros(const Globals& g, const ZerosArgs& a, std::ostream& out, std::ostream& err) {
  auto lc = load(g);
  auto cfg = quad_config(g);
  auto scan = find_zeros(a.rho, a.xmin, a.xmax, cfg);
  for (const auto& line : scan.log) err << "# " << line << "\n";
  Table t;
  t.header = {"x_zero", "bracket_lo", "bracket_hi", "rho", "residual", "method", "sign_changes", "regime"};
  for (const auto& z : scan.zeros)
    t.add({num(z.x_zero), num(z.bracket.first), num(z.bracket.second), num(z.rho), num(z.residual),
           str(to_string(z.method)), {std::to_string(z.sign_changes), true},
           str(to_string(classify(z.x_zero, z.rho, lc.values).kind))});
  json summary = {{"zeros", scan.zeros.size()},
                  {"no_bracket", scan.no_bracket.size()},
                  {"ambiguous", scan.ambiguous.size()}};
  Params params{{"rho", format_number(a.rho)}, {"xmin", format_number(a.xmin)}, {"xmax", format_number(a.xmax)}};
  emit_table(g, t, manifest("zeros", params, lc, cfg), summary, out, err);
  return ok;
}

// --------------------------------------------------------------------------

struct ScanArgs {
  double alpha = 0.0, eta = 0.0;
  std::string rho_range;
  int points = 5;
  bool oracle = false;
};

struct ScanRow {
  double rho = 0.0, x = NAN;
  std::string row, regime;
  double main = NAN, main_err = NAN, oracle = NAN, oracle_err = NAN;
  bool converged = true;
  std::string status = "ok";
};

std::pair<double, double> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw DomainError("rho-range", "expected lo:hi");
  try {
    std::size_t p1 = 0, p2 = 0;
    std::string lo = s.substr(0, colon), hi = s.substr(colon + 1);
    double a = std::stod(lo, &p1), b = std::stod(hi, &p2);
    if (p1 != lo.size() || p2 != hi.size()) throw std::invalid_argument(s);
    if (!(a > 0.0 && a <= b && std::isfinite(b))) throw DomainError("rho-range", "need 0 < lo <= hi");
    return {a, b};
  } catch (const std::logic_error&) {
    throw DomainError("rho-range", "expected lo:hi, got " + s);
  }
}

int cmd_scan(const Globals& g, const ScanArgs& a, std::ostream& out, std::ostream& err) {
  auto [lo, hi] = parse_range(a.rho_range);
  if (a.points < 1) throw DomainError("points", "points must be >= 1");
  int n = lo == hi ? 1 : a.points;
  auto lc = load(g);
  auto cfg = quad_config(g);
  auto rhos = n == 1 ? std::vector<double>{lo} : spaced(lo, hi, n, true);
  std::function<ScanRow(int)> fn = [&](int i) {
    ScanRow r;
    r.rho = rhos[i];
    try {
      auto pm = corollary_path_main(a.alpha, a.eta, r.rho, cfg, lc.values);
      r.x = pm.x;
      r.row = to_string(pm.row);
      r.regime = to_string(classify(pm.x, r.rho, lc.values).kind);
      r.main = pm.result.value;
      r.main_err = pm.result.error_estimate;
      r.converged = pm.result.converged;
      if (a.oracle) {
        auto h = eval_H(pm.x, r.rho, cfg);
        r.oracle = h.h;
        r.oracle_err = h.err;
        r.converged = r.converged && h.converged;
      }
      if (!r.converged) r.status = "unconverged";
    } catch (const Error& e) {
      r.status = std::string("error: ") + e.what();
    }
    return r;
  };
  auto rows = parallel_rows<ScanRow>(n, g.threads, fn);
  Table t;
  t.header = {"rho", "x", "alpha", "eta", "row", "regime", "main", "main_err"};
  if (a.oracle) t.header.insert(t.header.end(), {"oracle", "oracle_err", "err_actual"});
  t.header.push_back("status");
  bool all_ok = true;
  for (const auto& r : rows) {
    std::vector<std::pair<std::string, bool>> cells{num(r.rho),   num(r.x),      num(a.alpha),  num(a.eta),
                                                    str(r.row),   str(r.regime), num(r.main),   num(r.main_err)};
    if (a.oracle) {
      cells.push_back(num(r.oracle));
      cells.push_back(num(r.oracle_err));
      cells.push_back(num(std::abs(r.oracle - r.main)));
    }
    cells.push_back(str(r.status));
    t.add(std::move(cells));
    all_ok = all_ok && r.converged;
  }
  Params params{{"alpha", format_number(a.alpha)},
                {"eta", format_number(a.eta)},
                {"rho_range", a.rho_range},
                {"points", std::to_string(n)},
                {"oracle", a.oracle ? "true" : "false"}};
  emit_table(g, t, manifest("scan", params, lc, cfg), json(), out, err);
  return finish(all_ok, g, err);
}

// --------------------------------------------------------------------------

int cmd_calibrate(const Globals& g, bool dry_run, std::ostream& out, std::ostream& err) {
  auto lc = load(g);
  auto cfg = quad_config(g);
  auto report = calibrate(lc.values, cfg, [&](const std::string& line) { err << "# " << line << "\n"; });
  auto before = to_map(lc.values), after = to_map(report.constants);
  for (const auto& [k, v] : after) out << k << ": " << format_number(before[k]) << " -> " << format_number(v) << "\n";
  for (const auto& s : report.sweeps)
    out << "# " << s.key << " max " << format_number(s.observed) << " at " << s.argmax << " (" << s.points
        << " points, " << s.skipped << " skipped)\n";
  if (!dry_run) {
    std::string path = g.out.empty() ? lc.path : g.out;
    save_constants(path, report.constants);
    out << "wrote " << path << "\n";
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Good's restricted special functions: evaluation, asymptotics and zeros", "goodfun"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "absolute quadrature tolerance");
  app.add_option("--constants-file", g.constants_file, "remainder constants file");
  auto* jf = app.add_flag("--json", g.json_out, "JSON output for tables");
  auto* cf = app.add_flag("--csv", g.csv_out, "CSV output for tables (default)");
  jf->excludes(cf);
  app.add_option("--out", g.out, "write output to this file");
  app.add_flag("--best-effort", g.best_effort, "exit 0 even when a quadrature did not converge");
  app.add_option("--threads", g.threads, "worker threads for table rows")->check(CLI::Range(1, 1024));

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate G, Q or H by quadrature");
  eval->add_option("--fn", ea.fn, "G, Q or H")->check(CLI::IsMember({"G", "Q", "H"}));
  eval->add_option("--gamma", ea.gamma);
  eval->add_option("--rho", ea.rho);
  eval->add_option("--x", ea.x);
  eval->add_option("--xi", ea.xi);

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "oracle vs regime approximation table");
  compare->add_option("--rho", ca.rho)->required();
  compare->add_option("--xmin", ca.xmin)->required();
  compare->add_option("--xmax", ca.xmax)->required();
  compare->add_option("--points", ca.points);
  compare->add_option("--spacing", ca.spacing, "log or linear");

  ZerosArgs za;
  auto* zeros = app.add_subcommand("zeros", "zeros of x -> H(x, rho)");
  zeros->add_option("--rho", za.rho)->required();
  zeros->add_option("--xmin", za.xmin)->required();
  zeros->add_option("--xmax", za.xmax)->required();

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "main terms along x = eta rho^-alpha");
  scan->add_option("--alpha", sa.alpha)->required();
  scan->add_option("--eta", sa.eta)->required();
  scan->add_option("--rho-range", sa.rho_range, "lo:hi")->required();
  scan->add_option("--points", sa.points);
  scan->add_flag("--oracle", sa.oracle, "add the quadrature value of H");

  bool dry_run = false;
  auto* cal = app.add_subcommand("calibrate", "re-measure the remainder constants");
  cal->add_flag("--dry-run", dry_run, "print the new values without writing");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return domain_error;
  }

  try {
    if (eval->parsed()) return cmd_eval(g, ea, out, err);
    if (compare->parsed()) return cmd_compare(g, ca, out, err);
    if (zeros->parsed()) return cmd_zeros(g, za, out, err);
    if (scan->parsed()) return cmd_scan(g, sa, out, err);
    if (cal->parsed()) return cmd_calibrate(g, dry_run, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.field() << ": " << e.what() << "\n";
    return domain_error;
  } catch (const PrecisionError& e) {
    err << "error: " << e.what() << "\n";
    return domain_error;
  } catch (const ToleranceNotReached& e) {
    err << "error: " << e.what() << "\n";
    return g.best_effort ? ok : tolerance_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return tolerance_failure;
  }
  return domain_error;
}

}  // namespace goodfun::cli
