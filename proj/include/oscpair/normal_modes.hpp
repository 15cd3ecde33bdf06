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

#include <complex>

#include <Eigen/Core>

#include "oscpair/errors.hpp"
#include "oscpair/units.hpp"

namespace oscpair {

/// Normal modes of the identical damped pair. Mode 1 is the in-phase
/// combination x1 + x2, mode 2 the anti-phase combination x2 - x1.
struct ModeStructure {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double ratio1 = 1.0;
  double ratio2 = -1.0;
};

/// Symmetric/antisymmetric decomposition of the Hamiltonian, with the
/// free-particle diagnostic for |lambda| -> M omega0^2.
struct DecoupledModes {
  double reduced_mass = 0.5;
  double omega_plus_sq = 1.0;
  double omega_minus_sq = 1.0;
  bool free_particle = false;
  double diffusion1 = 0.0;  ///< k_B T1 / (M gamma)
  double diffusion2 = 0.0;  ///< k_B T2 / (M gamma)

  /// Free-particle growth law <x^2> = 2 D t for bath 1 or 2.
  double free_variance(double t, int bath) const {
    return 2.0 * (bath == 1 ? diffusion1 : diffusion2) * t;
  }
};

DecoupledModes decoupled_modes(const SystemParams& p);

/// Raised when one normal mode stops oscillating (lambda_tilde >= 1 - gamma^2).
class FreeParticleRegime : public DomainError {
 public:
  FreeParticleRegime(const std::string& what, DecoupledModes diag)
      : DomainError(what), diag_(diag) {}
  const DecoupledModes& diagnostic() const noexcept { return diag_; }

 private:
  DecoupledModes diag_;
};

/// Omega_{1,2}^2 = omega0^2 - gamma^2 -/+ lambda/M, delta = gamma, r = +/-1.
ModeStructure mode_structure(const SystemParams& p);

/// Inputs for the non-identical mode diagnostic.
struct OscillatorPair {
  double omega01 = 1.0;
  double omega02 = 1.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double mass1 = 1.0;
  double mass2 = 1.0;
  double lambda = 0.0;
};

struct GeneralModeReport {
  std::complex<double> omega1_sq;
  std::complex<double> omega2_sq;
  double omega1 = 0.0;  ///< NaN when omega1_sq is not real and positive
  double omega2 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::complex<double> r1;
  std::complex<double> r2;
  double kappa1 = 0.0;  ///< loss angle of r1
  double kappa2 = 0.0;
  bool complex_frequency = false;
  bool ratios_divergent = false;  ///< lambda == 0: amplitude ratios are 1/lambda
  int iterations = 0;
};

/// Quartic mode roots and amplitude ratios for non-identical oscillators.
/// The decay estimate drops terms cubic in the damping; delta and the roots
/// are solved together by fixed-point iteration starting at the mean damping.
/// Diagnostic only.
GeneralModeReport general_mode_diagnostic(const OscillatorPair& pair);

/// Boundary data of the classical paths: X(0) = Xi, X(t) = Xf, same for xi.
struct TrajectoryEndpoints {
  double X_i1 = 0.0, X_i2 = 0.0, X_f1 = 0.0, X_f2 = 0.0;
  double xi_i1 = 0.0, xi_i2 = 0.0, xi_f1 = 0.0, xi_f2 = 0.0;
  double t = 1.0;
};

/// Values and first/second time derivatives of (X1, X2, xi1, xi2).
struct TrajectoryState {
  Eigen::Vector4d value;
  Eigen::Vector4d rate;
  Eigen::Vector4d accel;
};

inline constexpr double kSingularEps = 1e-8;

/// Closed-form classical paths of the identical pair at time tau in [0, t].
/// X decays as exp(-gamma tau), xi grows as exp(+gamma tau).
TrajectoryState classical_trajectory(const ModeStructure& modes,
                                     const TrajectoryEndpoints& ends, double tau);

}  // namespace oscpair
