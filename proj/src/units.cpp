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

#include "oscpair/units.hpp"

#include <cmath>
#include <sstream>

#include "oscpair/errors.hpp"

namespace oscpair {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

void validate(const SystemParams& p) {
  require(std::isfinite(p.gamma) && p.gamma > 0.0, "damping gamma must be > 0");
  if (!(std::isfinite(p.lambda) && std::abs(p.lambda) <= 1.0)) {
    std::ostringstream os;
    os << "coupling |lambda| = " << std::abs(p.lambda)
       << " exceeds the bound M omega0^2 (|lambda_tilde| <= 1)";
    throw DomainError(os.str());
  }
  require(std::isfinite(p.sigma01_sq) && p.sigma01_sq > 0.0,
          "initial dispersion sigma01^2 must be > 0");
  require(std::isfinite(p.sigma02_sq) && p.sigma02_sq > 0.0,
          "initial dispersion sigma02^2 must be > 0");
  require(std::isfinite(p.theta1) && p.theta1 >= 0.0, "temperature T1 must be >= 0");
  require(std::isfinite(p.theta2) && p.theta2 >= 0.0, "temperature T2 must be >= 0");
}

double natural_dispersion_cm2(double mass_g, double omega0_radps) {
  return constants::hbar_cgs / (2.0 * mass_g * omega0_radps);
}

double reduced_temperature(double T_K, double omega0_radps) {
  return constants::kB_cgs * T_K / (constants::hbar_cgs * omega0_radps);
}

SystemParams to_natural_units(const LabParams& raw) {
  const double vals[] = {raw.mass_g,     raw.omega0_radps,   raw.gamma_radps,
                         raw.lambda_cgs, raw.T1_K,           raw.T2_K,
                         raw.sigma01_sq_cm2, raw.sigma02_sq_cm2};
  for (double v : vals) require(std::isfinite(v), "raw parameters must be finite");
  require(raw.mass_g > 0.0, "mass must be > 0");
  require(raw.omega0_radps > 0.0, "eigenfrequency must be > 0");

  const double k0 = raw.mass_g * raw.omega0_radps * raw.omega0_radps;
  if (std::abs(raw.lambda_cgs) > k0) {
    std::ostringstream os;
    os << "coupling |lambda| = " << std::abs(raw.lambda_cgs)
       << " g/s^2 exceeds the bound M omega0^2 = " << k0 << " g/s^2";
    throw DomainError(os.str());
  }

  const double unit = natural_dispersion_cm2(raw.mass_g, raw.omega0_radps);
  SystemParams p;
  p.gamma = raw.gamma_radps / raw.omega0_radps;
  p.lambda = raw.lambda_cgs / k0;
  p.theta1 = reduced_temperature(raw.T1_K, raw.omega0_radps);
  p.theta2 = reduced_temperature(raw.T2_K, raw.omega0_radps);
  p.sigma01_sq = raw.sigma01_sq_cm2 / unit;
  p.sigma02_sq = raw.sigma02_sq_cm2 / unit;
  validate(p);
  return p;
}

LabParams to_lab_units(const SystemParams& p, double mass_g, double omega0_radps) {
  const double unit = natural_dispersion_cm2(mass_g, omega0_radps);
  const double T_unit = constants::hbar_cgs * omega0_radps / constants::kB_cgs;
  LabParams raw;
  raw.mass_g = mass_g;
  raw.omega0_radps = omega0_radps;
  raw.gamma_radps = p.gamma * omega0_radps;
  raw.lambda_cgs = p.lambda * mass_g * omega0_radps * omega0_radps;
  raw.T1_K = p.theta1 * T_unit;
  raw.T2_K = p.theta2 * T_unit;
  raw.sigma01_sq_cm2 = p.sigma01_sq * unit;
  raw.sigma02_sq_cm2 = p.sigma02_sq * unit;
  return raw;
}

}  // namespace oscpair
