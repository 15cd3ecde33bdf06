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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "kernel_oracle.hpp"
#include "oscpair/bath_kernels.hpp"
#include "oscpair/density_matrix.hpp"
#include "oscpair/errors.hpp"
#include "oscpair/fdt_analysis.hpp"
#include "oscpair/kinematics.hpp"
#include "oscpair/normal_modes.hpp"
#include "oscpair/relaxation.hpp"

namespace {

using namespace oscpair;

constexpr double kTheta300 = 3.92765029395;
constexpr double kTheta700 = 9.16451735255;

struct Outcome {
  bool pass = true;
  std::string detail;
};

SystemParams params(double lambda, double th1, double th2, double s1 = 1.0, double s2 = 1.0) {
  SystemParams p;
  p.lambda = lambda;
  p.theta1 = th1;
  p.theta2 = th2;
  p.sigma01_sq = s1;
  p.sigma02_sq = s2;
  return p;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome uncoupled_reduction() {
  const auto start = std::chrono::steady_clock::now();
  const SystemParams p = params(0.0, 3.93, 3.93);
  const RelaxationModel model(p);
  const auto times = shift_singular_times(log_grid(0.1, 1000.0, 50), model.modes());
  double worst = 0.0;
  for (double t : times) {
    const MomentState s = model.at(t);
    const double ref = uncoupled_variance(t, p.theta1, p.sigma01_sq, p, model.spec());
    worst = std::max({worst, std::abs(s.sigma1_sq - ref) / ref, std::abs(s.sigma2_sq - ref) / ref});
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst < 1e-6 && secs < 60.0,
          fmt("max rel diff %.2e over 50 points (tol 1e-6), %.1f s (limit 60 s)", worst, secs)};
}

Outcome fdt_plateau() {
  const SteadyState weak = run_steady_state(RelaxationModel(params(0.01, 3.93, 3.93)), 1000.0);
  const SteadyState none = run_steady_state(RelaxationModel(params(0.0, 3.93, 3.93)), 1000.0);
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  const bool ok = weak.converged && none.converged && in(weak.sigma1_norm, 0.95, 1.05) &&
                  in(weak.sigma2_norm, 0.95, 1.05) && in(none.sigma1_norm, 0.995, 1.005) &&
                  in(none.sigma2_norm, 0.995, 1.005);
  return {ok, fmt("lambda 0.01: %.5f %.5f in [0.95,1.05]; lambda 0: %.5f %.5f in [0.995,1.005]",
                  weak.sigma1_norm, weak.sigma2_norm, none.sigma1_norm, none.sigma2_norm)};
}

Outcome splitting_direction() {
  ScanOptions opt;
  const auto pts = scan_lambda(params(0.0, kTheta300, kTheta700), {0.01, 0.1}, opt);
  for (const auto& pt : pts)
    if (!pt.error.empty() || !pt.steady.converged) return {false, "scan failed: " + pt.error};
  const SteadyState& a = pts[0].steady;
  const SteadyState& b = pts[1].steady;
  const double split_a = a.sigma1_norm - a.sigma2_norm, split_b = b.sigma1_norm - b.sigma2_norm;
  const bool ok = b.sigma1_norm > 1.0 && b.sigma2_norm < 1.0 && split_b > split_a;
  return {ok, fmt("lambda 0.1: %.4f > 1 > %.4f; splitting %.4f (0.1) vs %.4f (0.01)", b.sigma1_norm,
                  b.sigma2_norm, split_b, split_a)};
}

Outcome parity() {
  double worst = 0.0;
  for (double l : {0.05, 0.3, 0.7}) {
    const RelaxationModel plus(params(l, kTheta300, kTheta700, 10.0, 1.0));
    const RelaxationModel minus(params(-l, kTheta300, kTheta700, 10.0, 1.0));
    const auto times = shift_singular_times(log_grid(0.1, 1000.0, 12), plus.modes());
    for (double t : times) {
      const MomentState a = plus.at(t), b = minus.at(t);
      const double scale = std::max(a.sigma1_sq, a.sigma2_sq);
      worst = std::max({worst, std::abs(a.sigma1_sq - b.sigma1_sq) / a.sigma1_sq,
                        std::abs(a.sigma2_sq - b.sigma2_sq) / a.sigma2_sq,
                        std::abs(a.cov + b.cov) / scale});
    }
  }
  return {worst < 1e-4, fmt("max rel parity defect %.2e (tol 1e-4)", worst)};
}

Outcome divergence_trend() {
  ScanOptions opt;
  const auto pts = scan_lambda(params(0.0, kTheta300, kTheta300), {0.5, 0.9, 0.99}, opt);
  for (const auto& pt : pts)
    if (!pt.error.empty()) return {false, "scan failed: " + pt.error};
  const double v[3] = {pts[0].steady.sigma1_norm, pts[1].steady.sigma1_norm,
                       pts[2].steady.sigma1_norm};
  const bool increasing = v[0] < v[1] && v[1] < v[2];
  const SteadyState& top = pts[2].steady;
  const bool large = v[2] > 3.0 * v[0] || (!top.converged && top.growth_rate > 0.0);
  double wm = 1.0;
  bool shrinking = true;
  for (double l : {0.9, 0.99, 0.999, 0.999999}) {
    const double w = decoupled_modes(params(l, 1.0, 1.0)).omega_minus_sq;
    shrinking = shrinking && w < wm;
    wm = w;
  }
  const bool vanishes = shrinking && wm < 1e-5 &&
                        decoupled_modes(params(1.0, 1.0, 1.0)).omega_minus_sq == 0.0;
  return {increasing && large && vanishes,
          fmt("sigma^2 norm %.3f < %.3f < %.3f; omega_minus^2 at 0.999999 = %.1e", v[0], v[1], v[2],
              wm)};
}

Outcome initial_recovery() {
  double worst = 0.0;
  for (double s0 : {1.0, 10.0}) {
    const MomentState s = RelaxationModel(params(0.3, kTheta300, kTheta700, s0, s0)).at(1e-3);
    worst = std::max({worst, std::abs(s.sigma1_sq - s0) / s0, std::abs(s.sigma2_sq - s0) / s0});
  }
  return {worst < 1e-4, fmt("max rel deviation at t = 1e-3: %.2e (tol 1e-4)", worst)};
}

struct Sample {
  double t;
  SystemParams p;
  ModeStructure m;
};

std::vector<Sample> kinematic_samples(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ul(-0.95, 0.95), ulogt(std::log(0.01), std::log(1000.0));
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < n) {
    SystemParams p = params(ul(rng), 1.0, 1.0);
    const ModeStructure m = mode_structure(p);
    const double t = std::exp(ulogt(rng));
    if (std::abs(std::sin(m.omega1 * t)) < 0.05 || std::abs(std::sin(m.omega2 * t)) < 0.05) continue;
    out.push_back({t, p, m});
  }
  return out;
}

Outcome kinematic_identities() {
  double worst = 0.0;
  auto track = [&worst](double a, double b, double scale) {
    worst = std::max(worst, std::abs(a - b) / std::max(scale, 1e-300));
  };
  for (const Sample& x : kinematic_samples(100, 7)) {
    const KinematicSet k = kinematic_set(x.t, x.p, x.m);
    const auto& s = k.s;
    double ss = 0.0;
    for (int i = 1; i <= 14; ++i) ss = std::max(ss, std::abs(s[i]));
    track(s[7], s[11], ss);
    track(s[8], s[13], ss);
    track(s[9], s[12], ss);
    track(s[10], s[14], ss);
    double bs = 0.0;
    for (int i = 1; i <= 16; ++i) bs = std::max({bs, std::abs(k.b[i]), std::abs(k.bp[i])});
    const int mirror[][2] = {{5, 5}, {6, 6}, {7, 8}, {8, 7}, {9, 9}, {10, 10}, {11, 11}, {12, 12}};
    for (const auto& pr : mirror) track(k.b[pr[0]], -k.bp[pr[1]], bs);
    track(k.bp[1], k.b[13], bs);
    track(k.bp[13], k.b[1], bs);
    track(k.D3, k.D3p, std::abs(k.D3));
    track(k.D4, k.D4p, std::abs(k.D4));
    track(k.D9s, k.D10s, std::abs(k.D9s));
    track(k.D11s, k.D12s, std::abs(k.D11s));
    track(k.Pi5, k.Pi8, std::abs(k.Pi5));
    track(k.Pi6, k.Pi7, std::abs(k.Pi6));
    track(k.Pi13, k.Pi16, std::abs(k.Pi13));
    track(k.Pi14, k.Pi15, std::abs(k.Pi14));
  }
  double jump = 0.0;
  for (double t : {0.5, 3.0, 40.0, 700.0}) {
    for (double x : {kSincSeriesArg, 2.0 * kSincSeriesArg}) {
      const double d = x / t;
      const SValues a = s_functions(t, 1.0, 1.0 - d * (1.0 + 1e-12));
      const SValues b = s_functions(t, 1.0, 1.0 - d * (1.0 - 1e-12));
      for (int i = 7; i <= 14; ++i)
        jump = std::max(jump, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-3 * t));
    }
  }
  return {worst < 1e-12 && jump < 1e-10,
          fmt("max identity defect %.2e (tol 1e-12); branch jump %.2e (tol 1e-10)", worst, jump)};
}

Outcome kernel_oracle() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.3, 12.0), ul(-0.9, 0.9), uw(0.0, 5.0), ug(0.005, 0.1);
  double worst = 0.0;
  int done = 0;
  while (done < 10) {
    SystemParams p = params(ul(rng), 1.0, 1.0);
    p.gamma = ug(rng);
    const ModeStructure m = mode_structure(p);
    const double t = ut(rng);
    if (std::abs(std::sin(m.omega1 * t)) < 0.05 || std::abs(std::sin(m.omega2 * t)) < 0.05) continue;
    ++done;
    const auto nm = mode_factors(t, m.omega1, m.omega2, p.gamma);
    const auto samples = oracle::sample_kernels(t, p.gamma, m, nm.m1, nm.m2, F14Reading::paired);
    const TimeIntegralKernel inner(t, p.gamma, m, nm.m1, nm.m2);
    const double w = uw(rng);
    const Eigen::Array3d a = inner(w), b = oracle::brute_force_inner(samples, w);
    worst = std::max(worst, (a - b).abs().maxCoeff() / b.abs().maxCoeff());
  }
  // Uncoupled separation.
  double e_ratio = 0.0, theta_dep = 0.0;
  bool theta_ok = true;
  const ModeStructure m0 = mode_structure(params(0.0, 1.0, 1.0));
  const QuadratureSpec spec;
  for (double t : {0.5, 7.0, 60.0, 400.0}) {
    const BathKernels a = bath_integrals(t, params(0.0, kTheta300, kTheta700), m0, spec);
    const BathKernels b = bath_integrals(t, params(0.0, kTheta300, kTheta300), m0, spec);
    e_ratio = std::max(e_ratio, std::abs(a.E1) / std::max(a.C1, a.C2));
    const double d = std::abs(a.C1 - b.C1);
    theta_dep = std::max(theta_dep, d / a.C1);
    theta_ok = theta_ok && d <= spec.rel_tol * a.C1 + a.err_C1 + b.err_C1;
  }
  return {worst < 1e-4 && e_ratio < 1e-10 && theta_ok,
          fmt("inner integral max rel diff %.2e (tol 1e-4); |E1|/max C %.1e (tol 1e-10); "
              "C1 theta2 dependence %.1e",
              worst, e_ratio, theta_dep)};
}

// Centred moving average; entries whose window leaves the series are NaN.
std::vector<double> moving_average(const std::vector<double>& x, int half) {
  std::vector<double> out(x.size(), std::nan(""));
  for (std::size_t i = static_cast<std::size_t>(half); i + static_cast<std::size_t>(half) < x.size();
       ++i) {
    double acc = 0.0;
    for (std::size_t j = i - static_cast<std::size_t>(half); j <= i + static_cast<std::size_t>(half); ++j)
      acc += x[j];
    out[i] = acc / (2 * half + 1);
  }
  return out;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Outcome exchange_dynamics() {
  // First oscillator excited tenfold, strong coupling.
  const SystemParams p = params(0.9, kTheta300, kTheta300, 10.0, 1.0);
  const RelaxationModel model(p);
  const double W1 = model.modes().omega1, W2 = model.modes().omega2;
  const double t_end = 300.0, dt = 0.2;
  const auto times = linear_grid(dt, t_end, static_cast<int>(std::lround(t_end / dt)));
  const auto res = evaluate_grid(model, shift_singular_times(times, model.modes()));
  std::vector<double> s1, s2;
  for (const auto& r : res) {
    if (!r.usable()) return {false, "point failed at t = " + std::to_string(r.t) + ": " + r.message};
    s1.push_back(r.state.sigma1_sq);
    s2.push_back(r.state.sigma2_sq);
  }
  // Extrema before the plateau (one relaxation time).
  int extrema = 0;
  for (std::size_t i = 1; i + 1 < s1.size() && times[i] < 1.0 / p.gamma; ++i)
    if ((s1[i] - s1[i - 1]) * (s1[i + 1] - s1[i]) < 0.0) ++extrema;

  // Band-pass: average out the in-phase breathing at 2 W2, then remove the
  // relaxation trend with an average over one exchange (beat) period.
  const double beat = 2.0 * M_PI / (W2 - W1);
  const int fast = static_cast<int>(std::lround(0.5 * M_PI / W2 / dt));
  const int slow = static_cast<int>(std::lround(0.5 * beat / dt));
  const auto f1 = moving_average(s1, fast), f2 = moving_average(s2, fast);
  const auto g1 = moving_average(s1, slow), g2 = moving_average(s2, slow);
  std::vector<double> d1, d2;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (times[i] < 2.0 * beat || times[i] > 1.5 / p.gamma) continue;
    d1.push_back(f1[i] - g1[i]);
    d2.push_back(f2[i] - g2[i]);
  }
  const double r = correlation(d1, d2);
  return {extrema >= 3 && r < 0.0,
          fmt("%.0f extrema of sigma1^2 before t = 1/gamma (need >= 3); detrended correlation "
              "%.3f (need < 0)",
              extrema, r)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"uncoupled reduction", uncoupled_reduction},
      {"equilibrium plateau", fdt_plateau},
      {"temperature splitting", splitting_direction},
      {"coupling parity", parity},
      {"divergence trend", divergence_trend},
      {"initial-state recovery", initial_recovery},
      {"kinematic identities", kinematic_identities},
      {"bath-kernel oracle", kernel_oracle},
      {"exchange dynamics", exchange_dynamics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
