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

#include <Eigen/Core>

#include "oscpair/bath_kernels.hpp"
#include "oscpair/kinematics.hpp"
#include "oscpair/units.hpp"

namespace oscpair {

/// Reported variances are in units of the natural dispersion hbar / 2 M omega0;
/// internal lengths^2 are in hbar / M omega0. This is the conversion factor.
inline constexpr double kLengthSqPerDispersion = 0.5;

/// Helper quantities of the Gaussian integration over the initial coordinates.
/// Y4 and Y5 are purely imaginary; y4 and y5 hold their imaginary parts.
struct Intermediates {
  double e3 = 0.0, e4 = 0.0, e5 = 0.0, e6 = 0.0;
  double Z1 = 0.0, Z2 = 0.0, Z3 = 0.0, Z6 = 0.0;
  double Y1 = 0.0;
  double y4 = 0.0, y5 = 0.0;
  double denom = 0.0;  ///< 4 hbar a2 (C2 + hbar a2) + (D'4 + Pi16)^2
};

/// Throws NonNormalizableError when Z1 <= 0 or Y1 <= 0, and DomainError when
/// C2 + hbar a2 <= 0.
Intermediates intermediates(const KinematicSet& kin, const BathKernels& bk, double a1,
                            double a2, double hbar = 1.0);

/// Coefficients of the Gaussian exp[-b11 x1^2 / 2 - b12 x1 x2 - b22 x2^2 / 2]
/// in natural inverse length^2.
struct BetaCoefficients {
  double b11 = 0.0, b22 = 0.0, b12 = 0.0;

  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << b11, b12, b12, b22;
    return m;
  }
};

BetaCoefficients beta_coefficients(const Intermediates& im, const KinematicSet& kin,
                                   const BathKernels& bk, double a2, double hbar = 1.0);

struct MomentState {
  double t = 0.0;
  BetaCoefficients beta;
  double sigma1_sq = 0.0;  ///< <x1^2>, units of hbar / 2 M omega0
  double sigma2_sq = 0.0;  ///< <x2^2>
  double cov = 0.0;        ///< <x1 x2> = -b12 / det, same units
  double beta12_inv = 0.0; ///< b12 / det, the customary "inverse beta12" (= -cov)
  bool positive_definite = true;
};

/// Second moments of the Gaussian. Throws DegenerateGaussianError when the
/// form is not positive definite unless allow_degenerate is set, in which
/// case the record is returned with positive_definite = false.
MomentState moments(const BetaCoefficients& beta, double t, bool allow_degenerate = false);

/// Single damped oscillator (no coupling) variance in units of hbar / 2 M omega0.
/// Independent closed path: own kinematics and own kernel quadrature.
double uncoupled_variance(double t, double theta, double sigma0_sq, const SystemParams& params,
                          const QuadratureSpec& spec);

namespace reference {

/// Same coefficients as beta_coefficients, evaluated with complex Y4, Y5.
BetaCoefficients beta_coefficients_complex(const KinematicSet& kin, const BathKernels& bk,
                                           double a1, double a2, double hbar = 1.0);

}  // namespace reference

}  // namespace oscpair
