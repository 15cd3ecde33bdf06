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

namespace oscpair {

namespace constants {
inline constexpr double hbar_cgs = 1.0546e-27;  // erg s
inline constexpr double kB_cgs = 1.3807e-16;    // erg / K
}  // namespace constants

/// Physical parameters in natural units, hbar = M = omega0 = k_B = 1.
///
/// Lengths are measured in sqrt(hbar / M omega0); the initial dispersions are
/// stored in units of the ground-state variance hbar / 2 M omega0, so a value
/// of 1 is the "natural" (cold) initial state.
struct SystemParams {
  double mass = 1.0;
  double omega0 = 1.0;
  double gamma = 0.01;        ///< damping, units of omega0
  double lambda = 0.0;        ///< coupling lambda / (M omega0^2)
  double sigma01_sq = 1.0;    ///< initial dispersion 1, units of hbar/2M omega0
  double sigma02_sq = 1.0;    ///< initial dispersion 2, units of hbar/2M omega0
  double theta1 = 0.0;        ///< k_B T1 / (hbar omega0)
  double theta2 = 0.0;        ///< k_B T2 / (hbar omega0)

  double hbar() const { return 1.0; }

  /// Initial variances in natural length^2.
  double initial_variance1() const { return 0.5 * sigma01_sq; }
  double initial_variance2() const { return 0.5 * sigma02_sq; }

  double a1() const { return 1.0 / (8.0 * initial_variance1()); }
  double a2() const { return 1.0 / (8.0 * initial_variance2()); }
};

/// Throws DomainError when the parameters leave the admissible region:
/// |lambda| <= 1, gamma > 0, positive dispersions, non-negative temperatures.
void validate(const SystemParams& p);

/// Raw laboratory (CGS) inputs.
struct LabParams {
  double mass_g = 1e-23;
  double omega0_radps = 1e13;
  double gamma_radps = 1e11;
  double lambda_cgs = 0.0;     ///< g / s^2
  double T1_K = 300.0;
  double T2_K = 300.0;
  double sigma01_sq_cm2 = 0.0;
  double sigma02_sq_cm2 = 0.0;
};

/// hbar / (2 M omega0) in cm^2.
double natural_dispersion_cm2(double mass_g, double omega0_radps);

/// k_B T / (hbar omega0).
double reduced_temperature(double T_K, double omega0_radps);

SystemParams to_natural_units(const LabParams& raw);
LabParams to_lab_units(const SystemParams& p, double mass_g, double omega0_radps);

}  // namespace oscpair
