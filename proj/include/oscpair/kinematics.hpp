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
#include <cmath>
#include <cstddef>

#include "oscpair/normal_modes.hpp"
#include "oscpair/units.hpp"

namespace oscpair {

/// Fixed-size array indexed from 1, so table entries keep their usual labels.
template <class T, std::size_t N>
struct OneBased {
  std::array<T, N> v{};

  T& operator[](int i) { return v[static_cast<std::size_t>(i - 1)]; }
  const T& operator[](int i) const { return v[static_cast<std::size_t>(i - 1)]; }
  static constexpr int size() { return static_cast<int>(N); }
};

using SValues = OneBased<double, 14>;
using BTable = OneBased<double, 16>;

/// Two places where the printed formula tables are ambiguous. The default
/// readings are the ones that pass the uncoupled reduction.
enum class F14Reading {
  paired,   ///< f14 = cos(W2 tau) sin(W2 s), partner of f13
  printed,  ///< f14 = cos(W2 tau) sin(W1 s), a duplicate of f16
};

enum class MixedDReading {
  mode_consistent,  ///< D11 + D'11 uses -m2^2 (b13 + b'1)
  printed,          ///< D11 + D'11 uses -m2^2 (b1 + b'13)
};

struct FormulaReadings {
  F14Reading f14 = F14Reading::paired;
  MixedDReading mixed_d = MixedDReading::mode_consistent;

  bool operator==(const FormulaReadings&) const = default;
};

/// Below this |x|, sin(x)/x switches to its Taylor series. It is the only
/// branch in s7..s14 and carries the degenerate limit W1 -> W2.
inline constexpr double kSincSeriesArg = 1e-3;

namespace detail {

/// s1..s14 straight from the closed forms. Loses accuracy as W1 -> W2; kept
/// generic so tests can run it in extended precision.
template <class Scalar>
std::array<Scalar, 15> s_functions_direct(const Scalar& t, const Scalar& w1,
                                          const Scalar& w2) {
  using std::cos;
  using std::sin;
  std::array<Scalar, 15> s{};
  const Scalar half_t = t / 2;
  s[1] = half_t + sin(2 * w1 * t) / (4 * w1);
  s[2] = half_t - sin(2 * w1 * t) / (4 * w1);
  s[3] = half_t + sin(2 * w2 * t) / (4 * w2);
  s[4] = half_t - sin(2 * w2 * t) / (4 * w2);
  const Scalar s1t = sin(w1 * t), s2t = sin(w2 * t);
  const Scalar c1t = cos(w1 * t), c2t = cos(w2 * t);
  s[5] = s1t * s1t / (2 * w1);
  s[6] = s2t * s2t / (2 * w2);
  const Scalar den = w1 * w1 - w2 * w2;
  s[7] = (w1 * c2t * s1t - w2 * c1t * s2t) / den;
  s[8] = (-w2 + w2 * c2t * c1t + w1 * s1t * s2t) / den;
  s[9] = (w1 - w1 * c2t * c1t - w2 * s1t * s2t) / den;
  s[10] = (w2 * c2t * s1t - w1 * c1t * s2t) / den;
  s[11] = s[7];
  s[13] = s[8];
  s[12] = s[9];
  s[14] = s[10];
  return s;
}

}  // namespace detail

/// s1..s14 at time t. Accurate for all t >= 0, including W1 == W2.
SValues s_functions(double t, double omega1, double omega2);

struct BTables {
  BTable b;
  BTable bp;  ///< primed (mirror) table
};

/// Linear combinations of the s-values. w0 is the bare eigenfrequency.
BTables b_tables(const SValues& s, double omega1, double omega2, double gamma, double omega0);

/// Boundary-value factors n = e^{gamma t}/2 sin(W t), nbar = e^{-gamma t}/2 sin(W t),
/// m = cot(W t)/2.
struct ModeFactors {
  double n1 = 0.0, n2 = 0.0;
  double nbar1 = 0.0, nbar2 = 0.0;
  double m1 = 0.0, m2 = 0.0;
};

/// Throws SingularTimeError (mode index 1 or 2) when |sin(W t)| < kSingularEps.
ModeFactors mode_factors(double t, double omega1, double omega2, double gamma);

/// Sums that enter the Gaussian exponent. Identical oscillators make the
/// primed partners equal, so D3 stands for D3 = D'3 and so on.
struct DPiValues {
  double D3 = 0.0, D3p = 0.0, D4 = 0.0, D4p = 0.0;
  double D9s = 0.0;   ///< D9 + D'9
  double D10s = 0.0;  ///< D10 + D'10
  double D11s = 0.0;  ///< D11 + D'11
  double D12s = 0.0;  ///< D12 + D'12
  double Pi5 = 0.0, Pi6 = 0.0, Pi7 = 0.0, Pi8 = 0.0;
  double Pi13 = 0.0, Pi14 = 0.0, Pi15 = 0.0, Pi16 = 0.0;
};

DPiValues d_pi_functions(const BTables& tables, const SValues& s, const ModeFactors& nm,
                         double lambda, double mass,
                         MixedDReading reading = MixedDReading::mode_consistent);

/// Every deterministic time function at one evaluation time.
struct KinematicSet : DPiValues {
  double t = 0.0;
  SValues s;
  BTable b;
  BTable bp;
  ModeFactors nm;
};

/// Largest gamma * t accepted; beyond it the e^{gamma t} factors overflow
/// in the Gaussian assembly.
inline constexpr double kMaxGammaT = 200.0;

KinematicSet kinematic_set(double t, const SystemParams& params, const ModeStructure& modes,
                           const FormulaReadings& readings = {});

}  // namespace oscpair
