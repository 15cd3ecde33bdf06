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

#include <stdexcept>
#include <string>

namespace oscpair {

/// Parameter outside the admissible region (bad coupling, negative damping, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation time sits on t = k*pi/Omega_mode, where n and m diverge.
class SingularTimeError : public std::runtime_error {
 public:
  SingularTimeError(const std::string& what, int mode, double t)
      : std::runtime_error(what), mode_(mode), t_(t) {}
  int mode() const noexcept { return mode_; }
  double time() const noexcept { return t_; }

 private:
  int mode_;
  double t_;
};

/// Adaptive quadrature ran out of subdivisions.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double panel_lo, double panel_hi,
                  double panel_error)
      : std::runtime_error(what),
        lo_(panel_lo),
        hi_(panel_hi),
        err_(panel_error) {}
  double worst_panel_lo() const noexcept { return lo_; }
  double worst_panel_hi() const noexcept { return hi_; }
  double worst_panel_error() const noexcept { return err_; }

 private:
  double lo_, hi_, err_;
};

/// Z1 <= 0 or Y1 <= 0: the integrated Gaussian cannot be normalized.
class NonNormalizableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// beta11*beta22 - beta12^2 <= 0 (or a non-positive diagonal).
class DegenerateGaussianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration input; carries the 1-based line number (0 if none).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace oscpair
