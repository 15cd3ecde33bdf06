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

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "oscpair/kinematics.hpp"
#include "oscpair/normal_modes.hpp"
#include "oscpair/units.hpp"

namespace oscpair {

/// Ohmic bath regularization and quadrature controls.
struct QuadratureSpec {
  double omega_cutoff = 50.0;  ///< sharp spectral cutoff, units of omega0
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  int max_depth = 50;
  int max_panels = 200000;
  bool split_resonances = true;

  bool operator==(const QuadratureSpec&) const = default;
};

/// Throws DomainError unless omega_cutoff > max(W1, W2) and rel_tol in (1e-14, 1e-2).
void validate(const QuadratureSpec& spec, const ModeStructure& modes);

/// Thermally weighted influence integrals at one time t.
struct BathKernels {
  double t = 0.0;
  double C1 = 0.0, C2 = 0.0, E1 = 0.0;
  double err_C1 = 0.0, err_C2 = 0.0, err_E1 = 0.0;
  int panels = 0;
};

/// f1..f16 at (tau, s).
OneBased<double, 16> kernel_basis(double tau, double s, double omega1, double omega2,
                                  F14Reading reading = F14Reading::paired);

/// Pointwise kernels C^(1) = C1^(1) = C2^(2), C^(2) = C1^(2) = C2^(1) and E = E1^(1) = E1^(2).
struct KernelValues {
  double C_same = 0.0;   ///< C^(1): weight of the own bath
  double C_cross = 0.0;  ///< C^(2): weight of the partner bath
  double E = 0.0;
};

KernelValues kernel_CE(double tau, double s, double m1, double m2, const ModeStructure& modes,
                       F14Reading reading = F14Reading::paired);

/// omega coth(omega / 2 theta), with its limits 2 theta at omega = 0 and omega at theta = 0.
double thermal_weight(double omega, double theta);

/// Closed-form inner integrals
///   I_k(omega) = int_0^t dtau int_0^tau ds K_k(tau, s) cos[omega (tau - s)] e^{gamma (tau + s)}
/// for the three kernels (same, cross, E). Built once per (t, modes); cheap per omega.
class TimeIntegralKernel {
 public:
  TimeIntegralKernel(double t, double gamma, const ModeStructure& modes, double m1, double m2,
                     F14Reading reading = F14Reading::paired);

  Eigen::Array3d operator()(double omega) const;

  double t() const { return t_; }

 private:
  double t_;
  double gamma_;
  std::array<double, 4> nu_{};
  // Complex coefficient matrices per kernel in the exponential basis.
  std::array<Eigen::Matrix4cd, 3> h_;
  // E(alpha + beta) is independent of omega; cached per exponent pair.
  Eigen::Matrix4cd e_sum_;
};

/// Inner integrals at a single omega (convenience wrapper).
Eigen::Array3d inner_time_integrals(double omega, double t, double gamma,
                                    const ModeStructure& modes, double m1, double m2,
                                    F14Reading reading = F14Reading::paired);

/// Initial omega breakpoints: 0, resonance windows W +/- 5 gamma, cutoff; then
/// split so no panel is wider than the oscillation scale of the time integrals.
std::vector<double> frequency_breaks(double t, double gamma, const ModeStructure& modes,
                                     const QuadratureSpec& spec);

/// C1(t), C2(t), E1(t) for the current parameters.
BathKernels bath_integrals(double t, const SystemParams& params, const ModeStructure& modes,
                           const QuadratureSpec& spec, const FormulaReadings& readings = {});

/// E(z) = (e^{z t} - 1) / z, stable as z t -> 0.
std::complex<double> exp_integral(std::complex<double> z, double t);

/// int_0^t dtau int_0^tau ds e^{alpha tau + beta s}.
std::complex<double> double_exp_integral(std::complex<double> alpha, std::complex<double> beta,
                                         double t);

}  // namespace oscpair
