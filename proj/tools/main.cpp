// Copyright 2026 The oscpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// oscpair: relaxation curves, steady-state scans and FDT baselines for two
// coupled oscillators in separate Ohmic baths.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscpair/config.hpp"
#include "oscpair/errors.hpp"
#include "oscpair/fdt_analysis.hpp"
#include "oscpair/kernel_cache.hpp"
#include "oscpair/relaxation.hpp"
#include "oscpair/units.hpp"
#include "oscpair/version.hpp"
#include "run_manifest.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace oscpair;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitPartial = 4;

struct Options {
  std::string config;
  std::string out = ".";
  int jobs = 1;
  bool svg = true;
  std::optional<double> t_end;
  std::optional<int> t_points;
  double t_start = 0.0;
  bool log_grid = false;
  std::optional<double> omega_cutoff;
  std::optional<double> quad_tol;
  std::vector<double> lambdas;
  std::vector<double> T2_list;
  std::vector<double> gammas;
};

// Fixed-format numbers keep CSV output byte-identical across runs.
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

RunConfig resolve(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.omega_cutoff) cfg.spec.omega_cutoff = *o.omega_cutoff;
  if (o.quad_tol) cfg.spec.rel_tol = *o.quad_tol;
  return cfg;
}

std::shared_ptr<KernelCache> make_cache(const RunConfig& cfg) {
  return std::make_shared<KernelCache>(fs::path(cfg.cache_dir));
}

double default_t_end(const Options& o, const SystemParams& p) {
  if (o.t_end) {
    if (!(*o.t_end > 0.0)) throw DomainError("--t-end must be > 0");
    return *o.t_end;
  }
  if (!(p.gamma > 0.0)) throw DomainError("gamma = 0 needs an explicit --t-end");
  return 10.0 / p.gamma;
}

void reading_warnings(const RunConfig& cfg, std::vector<std::string>& w) {
  if (cfg.readings.f14 != F14Reading::paired)
    w.push_back("f14 reading 'printed' selected (default is 'paired')");
  if (cfg.readings.mixed_d != MixedDReading::mode_consistent)
    w.push_back("mixed D reading 'printed' selected (default is 'mode_consistent')");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

// FDT baselines; on failure a warning is recorded and NaN is used.
std::pair<double, double> fdt_pair(const SystemParams& p, const QuadratureSpec& spec,
                                   std::vector<std::string>& warnings) {
  auto one = [&](double theta, int bath) {
    if (!(p.gamma > 0.0)) {
      warnings.push_back("no FDT baseline at gamma = 0; normalized columns are nan");
      return std::nan("");
    }
    try {
      return fdt_variance(theta, p.gamma, spec).variance;
    } catch (const QuadratureError& e) {
      warnings.push_back("FDT baseline of bath " + std::to_string(bath) + " failed: " + e.what());
      return std::nan("");
    }
  };
  return {one(p.theta1, 1), one(p.theta2, 2)};
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void finish(cli::RunManifest& m, const fs::path& out, std::chrono::steady_clock::time_point t0,
            const std::vector<fs::path>& files) {
  m.wall_time_s = elapsed_s(t0);
  const auto mpath = m.write(out);
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  std::cout << "manifest " << mpath.string() << "\n";
}

int cmd_relax(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = resolve(o);
  const SystemParams p = cfg.system();
  validate(cfg.spec, mode_structure(p));
  auto cache = make_cache(cfg);
  const RelaxationModel model(p, cfg.spec, cfg.readings, cache);

  const double t_end = default_t_end(o, p);
  const int n = o.t_points.value_or(400);
  if (n < 2) throw DomainError("--t-points must be >= 2");
  double t_start = o.t_start;
  if (t_start <= 0.0) t_start = o.log_grid ? 0.1 : t_end / n;
  if (!(t_start < t_end)) throw DomainError("--t-start must be below --t-end");

  cli::RunManifest m;
  m.command = "relax";
  m.config = cfg;
  m.args = {{"t_start", fmt(t_start)},
            {"t_end", fmt(t_end)},
            {"t_points", std::to_string(n)},
            {"grid", o.log_grid ? "log" : "linear"}};
  reading_warnings(cfg, m.warnings);

  std::vector<GridShift> shifts;
  const auto times = shift_singular_times(
      o.log_grid ? log_grid(t_start, t_end, n) : linear_grid(t_start, t_end, n), model.modes(),
      &shifts);
  for (const auto& s : shifts)
    m.warnings.push_back("singular time shift: t = " + fmt(s.from) + " -> " + fmt(s.to) +
                         " (mode " + std::to_string(s.mode) + ")");

  const auto [fdt1, fdt2] = fdt_pair(p, cfg.spec, m.warnings);
  const double fdt12 = std::sqrt(fdt1 * fdt2);
  const auto results = evaluate_grid(model, times, o.jobs);

  std::size_t failed = 0;
  std::ostringstream body;
  body << "t_omega0,sigma1_sq,sigma2_sq,cov,sigma1_norm,sigma2_norm,cov_norm,pd_flag\n";
  std::vector<double> xs, y1, y2, yc;
  for (const auto& r : results) {
    const bool has_state = r.status == PointStatus::ok || r.status == PointStatus::degenerate;
    if (!r.usable()) {
      ++failed;
      m.warnings.push_back("point t = " + fmt(r.t) + ": " + to_string(r.status) + ": " +
                           r.message);
    }
    const double nan = std::nan("");
    const double s1 = has_state ? r.state.sigma1_sq : nan;
    const double s2 = has_state ? r.state.sigma2_sq : nan;
    const double c = has_state ? r.state.cov : nan;
    body << fmt(r.t) << ',' << fmt(s1) << ',' << fmt(s2) << ',' << fmt(c) << ',' << fmt(s1 / fdt1)
         << ',' << fmt(s2 / fdt2) << ',' << fmt(c / fdt12) << ','
         << (has_state && r.state.positive_definite ? 1 : 0) << '\n';
    xs.push_back(r.t);
    y1.push_back(s1 / fdt1);
    y2.push_back(s2 / fdt2);
    yc.push_back(c / fdt12);
  }
  cache->flush();

  const fs::path out(o.out);
  fs::create_directories(out);
  std::vector<fs::path> files{out / "relax.csv"};
  write_text(files[0], m.csv_header() + body.str());
  if (o.svg) {
    cli::SvgPlot plot("Normalized variances, lambda = " + fmt(p.lambda), "omega0 t",
                      "sigma^2 / sigma^2(FDT)", o.log_grid);
    plot.add_series("sigma1^2 norm", xs, y1);
    plot.add_series("sigma2^2 norm", xs, y2);
    plot.add_series("<x1 x2> norm", xs, yc, true);
    files.push_back(out / "relax.svg");
    write_text(files.back(), plot.render());
  }
  finish(m, out, t0, files);
  if (failed == results.size()) return kExitNumerical;
  return failed ? kExitPartial : kExitOk;
}

void scan_row(std::ostringstream& body, const ScanPoint& s) {
  SteadyState st = s.steady;
  if (!s.error.empty()) {
    const double nan = std::nan("");
    st.sigma1_norm = st.sigma2_norm = st.cov_norm = nan;
    st.sigma1_sq = st.sigma2_sq = st.cov = st.flatness = st.growth_rate = nan;
  }
  body << fmt(s.lambda) << ',' << fmt(s.theta1) << ',' << fmt(s.theta2) << ','
       << fmt(st.sigma1_norm) << ',' << fmt(st.sigma2_norm) << ',' << fmt(st.cov_norm) << ','
       << fmt(st.sigma1_sq) << ',' << fmt(st.sigma2_sq) << ',' << fmt(st.cov) << ','
       << fmt(st.flatness) << ',' << fmt(st.growth_rate) << ',' << (st.converged ? 1 : 0) << ','
       << st.failed_points << '\n';
}

constexpr const char* kScanColumns =
    "lambda_tilde,theta1,theta2,sigma1_norm,sigma2_norm,cov_norm,sigma1_sq,sigma2_sq,cov,"
    "flatness,growth_rate,converged,failed_points";

ScanOptions scan_options(const Options& o, const RunConfig& cfg, const SystemParams& p,
                         cli::RunManifest& m) {
  ScanOptions opt;
  opt.t_end = default_t_end(o, p);
  if (o.t_points) {
    if (*o.t_points < 4) throw DomainError("--t-points must be >= 4 for a plateau window");
    opt.window.points = *o.t_points;
  }
  opt.spec = cfg.spec;
  opt.readings = cfg.readings;
  opt.cache = make_cache(cfg);
  opt.jobs = o.jobs;
  m.args["t_end"] = fmt(opt.t_end);
  m.args["window_points"] = std::to_string(opt.window.points);
  m.args["window_fraction"] = fmt(opt.window.fraction);
  return opt;
}

// Records warnings and returns the exit code of a finished scan.
int scan_status(const std::vector<ScanPoint>& pts, cli::RunManifest& m) {
  std::size_t errors = 0;
  for (const auto& s : pts) {
    const std::string where = "lambda = " + fmt(s.lambda) + ", theta2 = " + fmt(s.theta2);
    if (!s.error.empty()) {
      ++errors;
      m.warnings.push_back(where + ": " + s.error);
      continue;
    }
    if (!s.steady.converged)
      m.warnings.push_back(where + ": plateau not converged (flatness " +
                           fmt(s.steady.flatness) + ", growth rate " +
                           fmt(s.steady.growth_rate) + ")");
    if (s.steady.failed_points > 0)
      m.warnings.push_back(where + ": " + std::to_string(s.steady.failed_points) +
                           " window points failed");
  }
  if (errors == pts.size()) return kExitNumerical;
  return errors ? kExitPartial : kExitOk;
}

int cmd_scan_lambda(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = resolve(o);
  const SystemParams p = cfg.system();
  cli::RunManifest m;
  m.command = "scan-lambda";
  m.config = cfg;
  const auto lambdas =
      o.lambdas.empty() ? std::vector<double>{0.0, 0.01, 0.1, 0.5, 0.9, 0.99} : o.lambdas;
  m.args["lambdas"] = join(lambdas);
  const ScanOptions opt = scan_options(o, cfg, p, m);
  reading_warnings(cfg, m.warnings);

  const auto pts = scan_lambda(p, lambdas, opt);
  opt.cache->flush();
  const int code = scan_status(pts, m);

  std::ostringstream body;
  body << kScanColumns << '\n';
  std::vector<double> xs, y1, y2, yc;
  for (const auto& s : pts) {
    scan_row(body, s);
    const bool ok = s.error.empty();
    xs.push_back(s.lambda);
    y1.push_back(ok ? s.steady.sigma1_norm : std::nan(""));
    y2.push_back(ok ? s.steady.sigma2_norm : std::nan(""));
    yc.push_back(ok ? s.steady.cov_norm : std::nan(""));
  }
  const fs::path out(o.out);
  fs::create_directories(out);
  std::vector<fs::path> files{out / "scan_lambda.csv"};
  write_text(files[0], m.csv_header() + body.str());
  if (o.svg) {
    cli::SvgPlot plot("Steady-state variances versus coupling", "lambda (log scale)",
                      "normalized steady value", true);
    plot.add_series("sigma1^2 norm", xs, y1);
    plot.add_series("sigma2^2 norm", xs, y2);
    plot.add_series("<x1 x2> norm", xs, yc, true);
    files.push_back(out / "scan_lambda.svg");
    write_text(files.back(), plot.render());
  }
  finish(m, out, t0, files);
  return code;
}

int cmd_scan_temp(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = resolve(o);
  const SystemParams p = cfg.system();
  cli::RunManifest m;
  m.command = "scan-temp";
  m.config = cfg;
  const auto lambdas = o.lambdas.empty() ? std::vector<double>{0.01, 0.1} : o.lambdas;
  const auto T2 =
      o.T2_list.empty() ? std::vector<double>{300.0, 400.0, 500.0, 600.0, 700.0} : o.T2_list;
  std::vector<double> theta2;
  for (double T : T2) {
    if (!(T > 0.0)) throw DomainError("--T2-list entries must be > 0");
    theta2.push_back(reduced_temperature(T, cfg.omega0_radps));
  }
  m.args["lambdas"] = join(lambdas);
  m.args["T2_list_K"] = join(T2);
  const ScanOptions opt = scan_options(o, cfg, p, m);
  reading_warnings(cfg, m.warnings);

  const auto pts = scan_temperature(p, theta2, lambdas, opt);
  opt.cache->flush();
  const int code = scan_status(pts, m);

  std::ostringstream body;
  body << "T2_K," << kScanColumns << '\n';
  const std::size_t nt = T2.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    body << fmt(T2[i % nt]) << ',';
    scan_row(body, pts[i]);
  }
  const fs::path out(o.out);
  fs::create_directories(out);
  std::vector<fs::path> files{out / "scan_temp.csv"};
  write_text(files[0], m.csv_header() + body.str());
  if (o.svg) {
    cli::SvgPlot plot("Steady-state variances versus T2, T1 = " + fmt(cfg.T1_K) + " K", "T2 (K)",
                      "sigma^2 / sigma^2(FDT)");
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      std::vector<double> y1, y2;
      for (std::size_t i = 0; i < nt; ++i) {
        const auto& s = pts[l * nt + i];
        const bool ok = s.error.empty();
        y1.push_back(ok ? s.steady.sigma1_norm : std::nan(""));
        y2.push_back(ok ? s.steady.sigma2_norm : std::nan(""));
      }
      const bool dashed = l == 0 && lambdas.size() > 1;
      plot.add_series("sigma1^2, lambda = " + fmt(lambdas[l]), T2, y1, dashed);
      plot.add_series("sigma2^2, lambda = " + fmt(lambdas[l]), T2, y2, dashed);
    }
    files.push_back(out / "scan_temp.svg");
    write_text(files.back(), plot.render());
  }
  finish(m, out, t0, files);
  return code;
}

int cmd_fdt(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = resolve(o);
  const SystemParams p = cfg.system();
  cli::RunManifest m;
  m.command = "fdt";
  m.config = cfg;
  const auto gammas = o.gammas.empty() ? std::vector<double>{p.gamma} : o.gammas;
  m.args["gammas"] = join(gammas);
  for (double g : gammas)
    if (!(g > 0.0 && g < 1.0)) throw DomainError("FDT gamma must lie in (0, 1)");

  std::ostringstream body;
  body << "bath,T_K,theta,gamma,sigma_sq_fdt,quad_error\n";
  std::printf("%-5s %10s %12s %8s %16s %12s\n", "bath", "T [K]", "theta", "gamma",
              "sigma^2(FDT)", "quad err");
  const double T[2] = {cfg.T1_K, cfg.T2_K};
  const double th[2] = {p.theta1, p.theta2};
  for (int b = 0; b < 2; ++b)
    for (double g : gammas) {
      const FdtResult r = fdt_variance(th[b], g, cfg.spec);
      body << b + 1 << ',' << fmt(T[b]) << ',' << fmt(th[b]) << ',' << fmt(g) << ','
           << fmt(r.variance) << ',' << fmt(r.error) << '\n';
      std::printf("%-5d %10.4g %12.6g %8.4g %16.10g %12.3g\n", b + 1, T[b], th[b], g, r.variance,
                  r.error);
    }
  for (int b = 0; b < 2; ++b)
    if (th[b] == 0.0)
      m.warnings.push_back("bath " + std::to_string(b + 1) +
                           " at zero temperature: the gamma -> 0 limit is exactly 1, finite "
                           "gamma shifts it by O(gamma log cutoff)");
  std::printf("variances in units of hbar / (2 M omega0)\n");

  const fs::path out(o.out);
  fs::create_directories(out);
  std::vector<fs::path> files{out / "fdt.csv"};
  write_text(files[0], m.csv_header() + body.str());
  finish(m, out, t0, files);
  return kExitOk;
}

// Fast built-in consistency checks on reduced grids.
int cmd_selftest(const Options& o) {
  const RunConfig cfg = resolve(o);
  QuadratureSpec spec = cfg.spec;
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++failures;
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

  SystemParams base;
  base.theta1 = base.theta2 = reduced_temperature(300.0, 1e13);

  {
    const RelaxationModel model(base, spec, cfg.readings);
    double worst = 0.0;
    for (double t : {0.7, 7.0, 70.0}) {
      const MomentState s = model.at(t);
      const double u = uncoupled_variance(t, base.theta1, base.sigma01_sq, base, spec);
      worst = std::max({worst, rel(s.sigma1_sq, u), rel(s.sigma2_sq, u)});
    }
    report("uncoupled limit", worst < 1e-6, "max rel dev " + fmt(worst));
  }
  {
    SystemParams p = base;
    p.lambda = 0.3;
    p.sigma01_sq = 10.0;
    const MomentState s = RelaxationModel(p, spec, cfg.readings).at(1e-3);
    const double d = std::max(rel(s.sigma1_sq, 10.0), rel(s.sigma2_sq, 1.0));
    report("initial variances", d < 1e-4, "max rel dev " + fmt(d));
  }
  {
    SystemParams p = base;
    p.theta2 = reduced_temperature(700.0, 1e13);
    p.lambda = 0.3;
    const MomentState a = RelaxationModel(p, spec, cfg.readings).at(40.0);
    p.lambda = -0.3;
    const MomentState b = RelaxationModel(p, spec, cfg.readings).at(40.0);
    const double d = std::max({rel(a.sigma1_sq, b.sigma1_sq), rel(a.sigma2_sq, b.sigma2_sq),
                               rel(a.cov, -b.cov)});
    report("coupling parity", d < 1e-4, "max rel dev " + fmt(d));
  }
  {
    const double theta = 20.0;
    const FdtResult r = fdt_variance(theta, 0.01, spec);
    // Classical equipartition with the leading quantum correction.
    const double hi_t = 2.0 * theta + 1.0 / (6.0 * theta);
    const double d = rel(r.variance, hi_t);
    report("FDT high-temperature limit", d < 0.01, "rel dev " + fmt(d));
  }
  return failures ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two coupled oscillators in separate Ohmic baths: relaxation and steady states"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config, "Configuration file (key = value lines)");
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--svg,!--no-svg", o.svg, "Emit SVG plots")->capture_default_str();
  app.add_option("--t-end", o.t_end, "Final time in units of 1/omega0 (default 10/gamma)");
  app.add_option("--t-points", o.t_points,
                 "Time points for relax, plateau-window points for scans");
  app.add_option("--omega-cutoff", o.omega_cutoff, "Bath cutoff frequency in units of omega0")
      ->check(CLI::PositiveNumber);
  app.add_option("--quad-tol", o.quad_tol, "Relative quadrature tolerance")
      ->check(CLI::PositiveNumber);

  auto* relax = app.add_subcommand("relax", "Moments versus time");
  relax->add_option("--t-start", o.t_start, "First time point (default t_end / t_points)");
  relax->add_flag("--log-grid", o.log_grid, "Logarithmic time grid");
  auto* scan_l = app.add_subcommand("scan-lambda", "Steady states versus coupling");
  scan_l->add_option("--lambdas", o.lambdas, "Comma-separated coupling values")->delimiter(',');
  auto* scan_t = app.add_subcommand("scan-temp", "Steady states versus second bath temperature");
  scan_t->add_option("--lambdas", o.lambdas, "Comma-separated coupling values")->delimiter(',');
  scan_t->add_option("--T2-list", o.T2_list, "Comma-separated temperatures in K")->delimiter(',');
  auto* fdt = app.add_subcommand("fdt", "Equilibrium variances of each bath");
  fdt->add_option("--gammas", o.gammas, "Comma-separated damping values")->delimiter(',');
  auto* self = app.add_subcommand("selftest", "Quick built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*relax) return cmd_relax(o);
    if (*scan_l) return cmd_scan_lambda(o);
    if (*scan_t) return cmd_scan_temp(o);
    if (*fdt) return cmd_fdt(o);
    if (*self) return cmd_selftest(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
