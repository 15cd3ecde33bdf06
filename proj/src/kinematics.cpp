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

#include "oscpair/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscpair/errors.hpp"

namespace oscpair {

namespace {

double sinc(double x) {
  if (std::abs(x) < kSincSeriesArg) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// x - sin(x) without cancellation at small x.
double x_minus_sin(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k <= 6; ++k) {
      term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
    }
    return sum;
  }
  return x - std::sin(x);
}

// sin(d t)/(2 d) and sin^2(d t / 2)/d, both regular at d = 0.
double half_sin_ratio(double d, double t) { return 0.5 * t * sinc(d * t); }
double sin_sq_ratio(double d, double t) {
  const double h = 0.5 * d * t;
  return 0.5 * t * std::sin(h) * sinc(h);
}

}  // namespace

SValues s_functions(double t, double omega1, double omega2) {
  SValues s;
  const double x1 = 2.0 * omega1 * t;
  const double x2 = 2.0 * omega2 * t;
  s[1] = t - x_minus_sin(x1) / (4.0 * omega1);
  s[2] = x_minus_sin(x1) / (4.0 * omega1);
  s[3] = t - x_minus_sin(x2) / (4.0 * omega2);
  s[4] = x_minus_sin(x2) / (4.0 * omega2);
  const double sn1 = std::sin(omega1 * t), sn2 = std::sin(omega2 * t);
  s[5] = sn1 * sn1 / (2.0 * omega1);
  s[6] = sn2 * sn2 / (2.0 * omega2);

  // Sum/difference form: exact for any W1, W2 and free of the 1/(W1^2 - W2^2)
  // cancellation, with the degenerate limit carried by sin(x)/x.
  const double diff = omega1 - omega2;
  const double sum = omega1 + omega2;
  const double ss = std::sin(sum * t) / (2.0 * sum);
  const double sq = std::pow(std::sin(0.5 * sum * t), 2) / sum;
  s[7] = ss + half_sin_ratio(diff, t);
  s[10] = -ss + half_sin_ratio(diff, t);
  s[8] = sq - sin_sq_ratio(diff, t);
  s[9] = sq + sin_sq_ratio(diff, t);
  s[11] = s[7];
  s[13] = s[8];
  s[12] = s[9];
  s[14] = s[10];
  return s;
}

BTables b_tables(const SValues& s, double omega1, double omega2, double gamma, double omega0) {
  const double W1 = omega1, W2 = omega2, g = gamma;
  const double w = omega0 * omega0 - gamma * gamma;
  BTables t;
  BTable& b = t.b;
  BTable& p = t.bp;

  b[1] = W1 * W1 * s[1] - w * s[2] - 2.0 * W1 * g * s[5];
  b[2] = -W1 * W1 * s[5] - w * s[5] - W1 * g * (s[1] - s[2]);
  b[3] = -W1 * W1 * s[5] - w * s[5] - W1 * g * (s[1] - s[2]);
  b[4] = W1 * W1 * s[2] - w * s[1] + 2.0 * W1 * g * s[5];
  b[5] = -W1 * W2 * s[7] + w * s[10] + W1 * g * s[8] + W2 * g * s[9];
  b[6] = W1 * W2 * s[8] + w * s[9] + W1 * g * s[7] - W2 * g * s[10];
  b[7] = W1 * W2 * s[9] + w * s[8] - W1 * g * s[10] + W2 * g * s[7];
  b[8] = -W1 * W2 * s[10] + w * s[7] - W1 * g * s[9] - W2 * g * s[8];
  b[9] = -W1 * W2 * s[11] + w * s[14] + W2 * g * s[12] + W1 * g * s[13];
  b[10] = W1 * W2 * s[12] + w * s[13] + W2 * g * s[11] - W1 * g * s[14];
  b[11] = W1 * W2 * s[13] + w * s[12] - W2 * g * s[14] + W1 * g * s[11];
  b[12] = -W1 * W2 * s[14] + w * s[11] - W2 * g * s[13] - W1 * g * s[12];
  b[13] = W2 * W2 * s[3] - w * s[4] - 2.0 * W2 * g * s[6];
  b[14] = -W2 * W2 * s[6] - w * s[6] + W2 * g * (s[4] - s[3]);
  b[15] = -W2 * W2 * s[6] - w * s[6] + W2 * g * (s[4] - s[3]);
  b[16] = W2 * W2 * s[4] - w * s[3] + 2.0 * W2 * g * s[6];

  p[1] = W2 * W2 * s[3] - w * s[4] - 2.0 * W2 * g * s[6];
  p[2] = -W2 * W2 * s[6] - w * s[6] - W2 * g * (s[3] - s[4]);
  p[3] = -W2 * W2 * s[6] - w * s[6] - W2 * g * (s[3] - s[4]);
  p[4] = W2 * W2 * s[4] - w * s[3] + 2.0 * W2 * g * s[6];
  p[5] = W1 * W2 * s[7] - w * s[10] - W1 * g * s[8] - W2 * g * s[9];
  p[6] = -W1 * W2 * s[8] - w * s[9] - W1 * g * s[7] + W2 * g * s[10];
  p[7] = W1 * W2 * s[10] - w * s[7] + W1 * g * s[9] + W2 * g * s[8];
  p[8] = -W1 * W2 * s[9] - w * s[8] + W1 * g * s[10] - W2 * g * s[7];
  p[9] = W1 * W2 * s[11] - w * s[14] - W2 * g * s[12] - W1 * g * s[13];
  p[10] = -W1 * W2 * s[12] - w * s[13] - W2 * g * s[11] + W1 * g * s[14];
  p[11] = -W1 * W2 * s[13] - w * s[12] + W2 * g * s[14] - W1 * g * s[11];
  p[12] = W1 * W2 * s[14] - w * s[11] + W2 * g * s[13] + W1 * g * s[12];
  p[13] = W1 * W1 * s[1] - w * s[2] - 2.0 * W1 * g * s[5];
  p[14] = -W1 * W1 * s[5] - w * s[5] + W1 * g * (s[2] - s[1]);
  p[15] = -W1 * W1 * s[5] - w * s[5] + W1 * g * (s[2] - s[1]);
  p[16] = W1 * W1 * s[2] - w * s[1] + 2.0 * W1 * g * s[5];
  return t;
}

ModeFactors mode_factors(double t, double omega1, double omega2, double gamma) {
  const double sn1 = std::sin(omega1 * t);
  const double sn2 = std::sin(omega2 * t);
  auto singular = [t](int mode) {
    std::ostringstream os;
    os << "singular time t = " << t << ": sin(Omega" << mode << " t) vanishes";
    throw SingularTimeError(os.str(), mode, t);
  };
  if (std::abs(sn1) < kSingularEps) singular(1);
  if (std::abs(sn2) < kSingularEps) singular(2);
  const double up = std::exp(gamma * t), down = std::exp(-gamma * t);
  ModeFactors f;
  f.n1 = up / (2.0 * sn1);
  f.n2 = up / (2.0 * sn2);
  f.nbar1 = down / (2.0 * sn1);
  f.nbar2 = down / (2.0 * sn2);
  f.m1 = std::cos(omega1 * t) / (2.0 * sn1);
  f.m2 = std::cos(omega2 * t) / (2.0 * sn2);
  return f;
}

DPiValues d_pi_functions(const BTables& tables, const SValues& s, const ModeFactors& nm,
                         double lambda, double mass, MixedDReading reading) {
  const BTable& b = tables.b;
  const BTable& p = tables.bp;
  const double n1 = nm.n1, n2 = nm.n2, m1 = nm.m1, m2 = nm.m2;
  const double half_m = 0.5 * mass;

  const double a1 = b[1] + p[13], a2 = b[13] + p[1];
  const double c1 = b[3] + p[15], c2 = b[15] + p[3];
  const double g1 = b[2] + p[14], g2 = b[14] + p[2];
  const double h1 = b[4] + p[16], h2 = b[16] + p[4];

  // Per-mode pieces: the printed D sums are their sum or difference.
  const double n_part1 = -m1 * n1 * a1 + n1 * c1 / 2.0;
  const double n_part2 = -m2 * n2 * a2 + n2 * c2 / 2.0;
  const double m_part1 = m1 * m1 * a1 - m1 * c1 / 2.0 - m1 * g1 / 2.0 + h1 / 4.0;
  const double m_part2 = m2 * m2 * a2 - m2 * c2 / 2.0 - m2 * g2 / 2.0 + h2 / 4.0;
  const double m_part2_mixed = reading == MixedDReading::printed
                                   ? m2 * m2 * a1 - m2 * c2 / 2.0 - m2 * g2 / 2.0 + h2 / 4.0
                                   : m_part2;

  DPiValues d;
  d.D3 = d.D3p = half_m * (n_part1 + n_part2);
  d.D4 = d.D4p = half_m * (m_part1 + m_part2);
  d.D9s = d.D10s = half_m * (n_part1 - n_part2);
  d.D11s = d.D12s = half_m * (m_part1 - m_part2_mixed);

  const double pn1 = -n1 * m1 * s[2] + n1 * s[5] / 2.0;
  const double pn2 = n2 * m2 * s[4] - n2 * s[6] / 2.0;
  const double pm1 = m1 * m1 * s[2] - m1 * s[5] + s[1] / 4.0;
  const double pm2 = m2 * m2 * s[4] - m2 * s[6] + s[3] / 4.0;
  d.Pi5 = d.Pi8 = lambda * (pn1 + pn2);
  d.Pi6 = d.Pi7 = lambda * (pn1 - pn2);
  d.Pi13 = d.Pi16 = lambda * (pm1 - pm2);
  d.Pi14 = d.Pi15 = lambda * (pm1 + pm2);
  return d;
}

KinematicSet kinematic_set(double t, const SystemParams& params, const ModeStructure& modes,
                           const FormulaReadings& readings) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("evaluation time must be > 0");
  if (params.gamma * t > kMaxGammaT) {
    std::ostringstream os;
    os << "gamma t = " << params.gamma * t << " exceeds the supported range " << kMaxGammaT;
    throw DomainError(os.str());
  }
  KinematicSet k;
  k.t = t;
  k.nm = mode_factors(t, modes.omega1, modes.omega2, params.gamma);
  k.s = s_functions(t, modes.omega1, modes.omega2);
  const BTables tab = b_tables(k.s, modes.omega1, modes.omega2, params.gamma, params.omega0);
  k.b = tab.b;
  k.bp = tab.bp;
  static_cast<DPiValues&>(k) =
      d_pi_functions(tab, k.s, k.nm, params.lambda * params.mass * params.omega0 * params.omega0,
                     params.mass, readings.mixed_d);
  return k;
}

}  // namespace oscpair
