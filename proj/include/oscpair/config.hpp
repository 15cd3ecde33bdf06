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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "oscpair/bath_kernels.hpp"
#include "oscpair/kinematics.hpp"
#include "oscpair/units.hpp"

namespace oscpair {

/// Resolved run configuration. Defaults are the solid-state parameter set
/// M = 1e-23 g, omega0 = 1e13 rad/s, gamma = 0.01 omega0, T1 = T2 = 300 K.
struct RunConfig {
  double mass_g = 1e-23;
  double omega0_radps = 1e13;
  double gamma_over_omega0 = 0.01;
  double lambda_tilde = 0.0;
  double T1_K = 300.0;
  double T2_K = 300.0;
  double sigma01_sq_natural = 1.0;
  double sigma02_sq_natural = 1.0;
  QuadratureSpec spec;
  FormulaReadings readings;
  std::string cache_dir;

  /// Natural-unit parameters; throws DomainError outside the admissible region.
  SystemParams system() const;
};

/// Parses "key = value" lines. '#' starts a comment; blank lines are ignored.
/// Unknown keys, duplicates and malformed values raise ConfigError with the
/// 1-based line number.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical key = value dump, one key per line in a fixed order.
std::string to_config_string(const RunConfig& cfg);

const char* to_string(F14Reading r);
const char* to_string(MixedDReading r);

}  // namespace oscpair
