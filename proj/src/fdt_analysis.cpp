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

#include "oscpair/fdt_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "oscpair/errors.hpp"
#include "oscpair/quadrature.hpp"

namespace oscpair {

double fdt_integrand(double nu, double theta, double gamma) {
  const double d = nu * nu - 1.0;
  return 2.0 * gamma * thermal_weight(nu, theta) / (M_PI * (d * d + 4.0 * gamma * gamma * nu * nu));
}

namespace {

FdtResult fdt_compute(double theta, double gamma, const QuadratureSpec& spec) {
  const double wc = spec.omega_cutoff;
  std::vector<double> breaks = {0.0};
  for (double x : {1.0 - 5.0 * gamma, 1.0, 1.0 + 5.0 * gamma})
    if (x > 0.0 && x < wc) breaks.push_back(x);
  breaks.push_back(wc);
  std::sort(breaks.begin(), breaks.end());

  AdaptiveOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_floor = spec.abs_floor;
  opt.max_depth = spec.max_depth;
  opt.max_panels = spec.max_panels;
  auto f = [&](double nu) {
    QVec<1> v;
    v[0] = fdt_integrand(nu, theta, gamma);
    return v;
  };
  const auto res = integrate_adaptive<1>(f, breaks, opt);
  return {res.value[0] / kLengthSqPerDispersion, res.error[0] / kLengthSqPerDispersion};
}

}  // namespace

FdtResult fdt_variance(double theta, double gamma, const QuadratureSpec& spec) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("fdt_variance: theta must be >= 0");
  if (!(gamma > 0.0)) throw DomainError("fdt_variance: gamma must be > 0");
  if (!(spec.omega_cutoff > 1.0)) throw DomainError("fdt_variance: omega_cutoff must exceed 1");

  // Normalization constants are reused across every point of a scan.
  using Key = std::tuple<double, double, double, double, double, int, int>;
  static std::mutex mu;
  static std::map<Key, FdtResult> memo;
  const Key key{theta, gamma, spec.omega_cutoff, spec.rel_tol, spec.abs_floor, spec.max_depth,
                spec.max_panels};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const FdtResult r = fdt_compute(theta, gamma, spec);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, r);
  return r;
}

namespace {

double mean(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += v[i];
  return s / static_cast<double>(hi - lo);
}

double spread(const std::vector<double>& v) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double m = mean(v, 0, v.size());
  return (*mx - *mn) / std::abs(m);
}

}  // namespace

SteadyState steady_state(const std::vector<PointResult>& series, double fdt1, double fdt2,
                         double gamma, const WindowSpec& window) {
  if (series.empty()) throw DomainError("steady_state: empty series");
  if (!(window.fraction > 0.0 && window.fraction <= 1.0))
    throw DomainError("steady_state: window fraction must lie in (0, 1]");
  double t_end = 0.0;
  for (const auto& p : series) t_end = std::max(t_end, p.t);
  if (gamma * t_end < 5.0) {
    std::ostringstream os;
    os << "steady_state: series ends at gamma t = " << gamma * t_end << " < 5 damping times";
    throw DomainError(os.str());
  }

  SteadyState ss;
  ss.t_a = t_end * (1.0 - window.fraction);
  ss.t_b = t_end;
  std::vector<const PointResult*> pts;
  for (const auto& p : series) {
    if (p.t < ss.t_a) continue;
    if (p.usable())
      pts.push_back(&p);
    else
      ++ss.failed_points;
  }
  std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->t < b->t; });
  if (pts.size() < 4) {
    ss.converged = false;
    return ss;
  }

  std::vector<double> t, s1, s2, cv;
  for (auto* p : pts) {
    t.push_back(p->t);
    s1.push_back(p->state.sigma1_sq);
    s2.push_back(p->state.sigma2_sq);
    cv.push_back(p->state.cov);
  }
  const std::size_t n = t.size(), h = n / 2;
  ss.sigma1_sq = mean(s1, 0, n);
  ss.sigma2_sq = mean(s2, 0, n);
  ss.cov = mean(cv, 0, n);
  ss.sigma1_norm = ss.sigma1_sq / fdt1;
  ss.sigma2_norm = ss.sigma2_sq / fdt2;
  ss.cov_norm = ss.cov / std::sqrt(fdt1 * fdt2);
  ss.flatness = std::max(spread(s1), spread(s2));

  const double halves = std::max(std::abs(mean(s1, h, n) - mean(s1, 0, h)) / std::abs(ss.sigma1_sq),
                                 std::abs(mean(s2, h, n) - mean(s2, 0, h)) / std::abs(ss.sigma2_sq));

  // Least-squares slope of sigma1^2 + sigma2^2, relative to its mean.
  const double tm = mean(t, 0, n);
  const double ym = ss.sigma1_sq + ss.sigma2_sq;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (t[i] - tm) * (s1[i] + s2[i] - ym);
    sxx += (t[i] - tm) * (t[i] - tm);
  }
  ss.growth_rate = sxx > 0.0 ? sxy / sxx / ym : 0.0;
  ss.converged = ss.flatness < window.flatness && halves < window.flatness;
  return ss;
}

std::vector<double> plateau_grid(double t_end, const ModeStructure& modes,
                                 const WindowSpec& window) {
  const double t_a = t_end * (1.0 - window.fraction);
  return shift_singular_times(linear_grid(t_a, t_end, std::max(window.points, 4)), modes);
}

SteadyState run_steady_state(const RelaxationModel& model, double t_end,
                             const WindowSpec& window, int jobs) {
  const auto& p = model.params();
  const double f1 = fdt_variance(p.theta1, p.gamma, model.spec()).variance;
  const double f2 = fdt_variance(p.theta2, p.gamma, model.spec()).variance;
  const auto series = evaluate_grid(model, plateau_grid(t_end, model.modes(), window), jobs);
  return steady_state(series, f1, f2, p.gamma, window);
}

namespace {

ScanPoint scan_one(const SystemParams& params, const ScanOptions& opt) {
  ScanPoint sp;
  sp.lambda = params.lambda;
  sp.theta1 = params.theta1;
  sp.theta2 = params.theta2;
  try {
    const RelaxationModel model(params, opt.spec, opt.readings, opt.cache);
    sp.steady = run_steady_state(model, opt.t_end, opt.window, 1);
  } catch (const std::exception& e) {
    sp.error = e.what();
  }
  return sp;
}

}  // namespace

std::vector<ScanPoint> scan_lambda(const SystemParams& base, const std::vector<double>& lambdas,
                                   const ScanOptions& opt) {
  std::vector<ScanPoint> out(lambdas.size());
  parallel_for(lambdas.size(), opt.jobs, [&](std::size_t i) {
    SystemParams p = base;
    p.lambda = lambdas[i];
    out[i] = scan_one(p, opt);
  });
  return out;
}

std::vector<ScanPoint> scan_temperature(const SystemParams& base,
                                        const std::vector<double>& theta2_grid,
                                        const std::vector<double>& lambdas,
                                        const ScanOptions& opt) {
  for (double th : theta2_grid)
    if (!(th > 0.0)) throw DomainError("scan_temperature: theta2 grid must be positive");
  const std::size_t nt = theta2_grid.size();
  std::vector<ScanPoint> out(nt * lambdas.size());
  parallel_for(out.size(), opt.jobs, [&](std::size_t i) {
    SystemParams p = base;
    p.lambda = lambdas[i / nt];
    p.theta2 = theta2_grid[i % nt];
    out[i] = scan_one(p, opt);
  });
  return out;
}

}  // namespace oscpair
