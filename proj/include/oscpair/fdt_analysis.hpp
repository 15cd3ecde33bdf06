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

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "oscpair/bath_kernels.hpp"
#include "oscpair/density_matrix.hpp"
#include "oscpair/relaxation.hpp"

namespace oscpair {

struct FdtResult {
  double variance = 0.0;  ///< units of hbar / 2 M omega0
  double error = 0.0;
};

/// Equilibrium variance of a single damped oscillator at temperature theta:
///   (hbar / pi M) int_0^wc dv coth(v / 2 theta) 2 gamma v / ((v^2 - w0^2)^2 + 4 gamma^2 v^2),
/// cut off at the same omega_cutoff as the bath kernels.
FdtResult fdt_variance(double theta, double gamma, const QuadratureSpec& spec = {});

/// Integrand of fdt_variance in internal length^2 per unit frequency.
double fdt_integrand(double nu, double theta, double gamma);

struct WindowSpec {
  double fraction = 0.2;   ///< trailing part of [t_start, t_end] used as plateau
  int points = 16;         ///< samples in the window when a runner builds it
  double flatness = 0.01;  ///< (max - min) / mean threshold
};

struct SteadyState {
  double sigma1_norm = 0.0;  ///< plateau sigma1^2 / sigma1^2(FDT)
  double sigma2_norm = 0.0;
  double cov_norm = 0.0;     ///< plateau <x1 x2> / sqrt(FDT1 FDT2)
  double sigma1_sq = 0.0;    ///< plateau values before normalization
  double sigma2_sq = 0.0;
  double cov = 0.0;
  double t_a = 0.0, t_b = 0.0;
  double flatness = 0.0;
  double growth_rate = 0.0;  ///< relative slope of the variances over the window
  bool converged = false;
  int failed_points = 0;
};

/// Plateau from a time series. The series must reach gamma t_end >= 5.
/// Degenerate or failed points in the window are counted and skipped.
SteadyState steady_state(const std::vector<PointResult>& series, double fdt1, double fdt2,
                         double gamma, const WindowSpec& window = {});

/// Time grid for a plateau: window.points evenly spaced over the trailing
/// fraction of [0, t_end], shifted off singular times.
std::vector<double> plateau_grid(double t_end, const ModeStructure& modes,
                                 const WindowSpec& window = {});

/// Evaluates the plateau of one model directly.
SteadyState run_steady_state(const RelaxationModel& model, double t_end,
                             const WindowSpec& window = {}, int jobs = 1);

struct ScanPoint {
  double lambda = 0.0;
  double theta1 = 0.0, theta2 = 0.0;
  SteadyState steady;
  std::string error;  ///< non-empty when the model could not be built or run
};

struct ScanOptions {
  double t_end = 1000.0;
  WindowSpec window;
  QuadratureSpec spec;
  FormulaReadings readings;
  std::shared_ptr<KernelCache> cache;
  int jobs = 1;
};

std::vector<ScanPoint> scan_lambda(const SystemParams& base, const std::vector<double>& lambdas,
                                   const ScanOptions& opt);

/// Steady states over theta2 at fixed theta1 = base.theta1 for every lambda in the set.
std::vector<ScanPoint> scan_temperature(const SystemParams& base,
                                        const std::vector<double>& theta2_grid,
                                        const std::vector<double>& lambdas,
                                        const ScanOptions& opt);

}  // namespace oscpair
