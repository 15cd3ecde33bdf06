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

#include "oscpair/normal_modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace oscpair {

DecoupledModes decoupled_modes(const SystemParams& p) {
  DecoupledModes d;
  const double w0sq = p.omega0 * p.omega0;
  d.reduced_mass = p.mass / 2.0;
  d.omega_plus_sq = w0sq + p.lambda / p.mass;
  d.omega_minus_sq = w0sq - p.lambda / p.mass;
  d.free_particle = d.omega_plus_sq <= 0.0 || d.omega_minus_sq <= 0.0;
  d.diffusion1 = p.theta1 / (p.mass * p.gamma);
  d.diffusion2 = p.theta2 / (p.mass * p.gamma);
  return d;
}

ModeStructure mode_structure(const SystemParams& p) {
  validate(p);
  const double w = p.omega0 * p.omega0 - p.gamma * p.gamma;
  const double shift = p.lambda / p.mass;
  const double w1sq = w - shift;
  const double w2sq = w + shift;
  if (w1sq <= 0.0 || w2sq <= 0.0) {
    std::ostringstream os;
    os << "free-particle regime: lambda_tilde = " << p.lambda
       << " leaves a non-oscillatory normal mode (need |lambda_tilde| < 1 - gamma^2 = "
       << w << ")";
    throw FreeParticleRegime(os.str(), decoupled_modes(p));
  }
  ModeStructure m;
  m.omega1 = std::sqrt(w1sq);
  m.omega2 = std::sqrt(w2sq);
  m.delta1 = p.gamma;
  m.delta2 = p.gamma;
  m.ratio1 = 1.0;
  m.ratio2 = -1.0;
  return m;
}

namespace {

struct RootStep {
  std::complex<double> omega_sq;
  double delta;
};

// One sweep: roots of the biquadratic at fixed delta, then the decay update.
RootStep root_step(const OscillatorPair& q, double delta, int branch) {
  const double w1 = q.omega01 * q.omega01;
  const double w2 = q.omega02 * q.omega02;
  const double g1 = 2.0 * q.gamma1 * delta - delta * delta;
  const double g2 = 2.0 * q.gamma2 * delta - delta * delta;
  const double shift1 = 4.0 * (q.gamma1 - delta) * (q.gamma2 - delta) - g1 - g2;
  // Constant term of the biquadratic, including the bare w1*w2 product.
  const double constant = w1 * w2 + g1 * g2 - g1 * w2 - g2 * w1;
  const double half_b = 0.5 * (w1 + w2 + shift1);
  const double disc = half_b * half_b - constant + q.lambda * q.lambda / (q.mass1 * q.mass2);
  const std::complex<double> root = std::sqrt(std::complex<double>(disc, 0.0));
  const std::complex<double> wsq = branch == 1 ? half_b - root : half_b + root;

  const double x = wsq.real();
  const double den = (x - w2) + (x - w1);
  double next = 0.5 * (q.gamma1 + q.gamma2);
  if (std::abs(den) > 1e-300) next = ((x - w2) * q.gamma1 + (x - w1) * q.gamma2) / den;
  return {wsq, next};
}

std::complex<double> amplitude_ratio(double w0, double gamma, double delta, double omega,
                                     double lambda_over_mass) {
  const std::complex<double> num(w0 * w0 - 2.0 * gamma * delta + delta * delta - omega * omega,
                                 2.0 * omega * (gamma - delta));
  return num / lambda_over_mass;
}

double loss_angle(std::complex<double> r) {
  if (r.real() == 0.0) return r.imag() == 0.0 ? 0.0 : std::copysign(M_PI / 2, r.imag());
  return std::atan(r.imag() / r.real());
}

}  // namespace

GeneralModeReport general_mode_diagnostic(const OscillatorPair& q) {
  if (!(q.mass1 > 0.0 && q.mass2 > 0.0 && q.omega01 > 0.0 && q.omega02 > 0.0))
    throw DomainError("general_mode_diagnostic: masses and frequencies must be positive");

  GeneralModeReport rep;
  const double start = 0.5 * (q.gamma1 + q.gamma2);
  for (int branch = 1; branch <= 2; ++branch) {
    double delta = start;
    RootStep step{};
    int it = 0;
    for (; it < 200; ++it) {
      step = root_step(q, delta, branch);
      const bool done = std::abs(step.delta - delta) <= 1e-15 * (1.0 + std::abs(delta));
      delta = step.delta;
      if (done) break;
    }
    rep.iterations = std::max(rep.iterations, it + 1);
    // Roots at the converged delta.
    step = root_step(q, delta, branch);
    const bool real_positive = step.omega_sq.imag() == 0.0 && step.omega_sq.real() > 0.0;
    if (!real_positive) rep.complex_frequency = true;
    const double omega = real_positive ? std::sqrt(step.omega_sq.real())
                                       : std::numeric_limits<double>::quiet_NaN();
    if (branch == 1) {
      rep.omega1_sq = step.omega_sq;
      rep.omega1 = omega;
      rep.delta1 = delta;
    } else {
      rep.omega2_sq = step.omega_sq;
      rep.omega2 = omega;
      rep.delta2 = delta;
    }
  }

  if (q.lambda == 0.0) {
    rep.ratios_divergent = true;
    const double inf = std::numeric_limits<double>::infinity();
    rep.r1 = {inf, 0.0};
    rep.r2 = {inf, 0.0};
    return rep;
  }
  const double om1 = std::sqrt(std::abs(rep.omega1_sq));
  const double om2 = std::sqrt(std::abs(rep.omega2_sq));
  rep.r1 = amplitude_ratio(q.omega01, q.gamma1, rep.delta1, om1, q.lambda / q.mass1);
  rep.r2 = amplitude_ratio(q.omega02, q.gamma2, rep.delta2, om2, q.lambda / q.mass2);
  rep.kappa1 = loss_angle(rep.r1);
  rep.kappa2 = loss_angle(rep.r2);
  return rep;
}

namespace {

// e^{c tau} (a sin(w tau) + b cos(w tau)) and its first two derivatives.
struct ModeTerm {
  double value, rate, accel;
};

ModeTerm mode_term(double a, double b, double w, double c, double tau) {
  const double s = std::sin(w * tau);
  const double k = std::cos(w * tau);
  const double e = std::exp(c * tau);
  const double f = a * s + b * k;
  const double g = w * (a * k - b * s);
  return {e * f, e * (c * f + g), e * (c * c * f + 2.0 * c * g - w * w * f)};
}

void check_horizon(const ModeStructure& m, double t) {
  if (!(t > 0.0)) throw DomainError("classical_trajectory: horizon t must be > 0");
  if (std::abs(std::sin(m.omega1 * t)) < kSingularEps)
    throw SingularTimeError("classical_trajectory: sin(Omega1 t) vanishes", 1, t);
  if (std::abs(std::sin(m.omega2 * t)) < kSingularEps)
    throw SingularTimeError("classical_trajectory: sin(Omega2 t) vanishes", 2, t);
}

}  // namespace

TrajectoryState classical_trajectory(const ModeStructure& m, const TrajectoryEndpoints& e,
                                     double tau) {
  check_horizon(m, e.t);
  if (tau < 0.0 || tau > e.t * (1.0 + 1e-12))
    throw DomainError("classical_trajectory: tau outside [0, t]");

  const double t = e.t;
  const double gamma = m.delta1;
  const double cot1 = 1.0 / std::tan(m.omega1 * t);
  const double cot2 = 1.0 / std::tan(m.omega2 * t);
  const double sin1 = std::sin(m.omega1 * t);
  const double sin2 = std::sin(m.omega2 * t);

  TrajectoryState out;
  // branch 0: X (decaying), branch 1: xi (growing)
  for (int branch = 0; branch < 2; ++branch) {
    const double sgn = branch == 0 ? 1.0 : -1.0;
    const double c = -sgn * gamma;
    const double grow = std::exp(sgn * gamma * t);
    const double i1 = branch == 0 ? e.X_i1 : e.xi_i1;
    const double i2 = branch == 0 ? e.X_i2 : e.xi_i2;
    const double f1 = branch == 0 ? e.X_f1 : e.xi_f1;
    const double f2 = branch == 0 ? e.X_f2 : e.xi_f2;

    const double sum_i = 0.5 * (i1 + i2), sum_f = 0.5 * (f1 + f2);
    const double dif_i = 0.5 * (i2 - i1), dif_f = 0.5 * (f2 - f1);

    const ModeTerm in_phase =
        mode_term(sum_f * grow / sin1 - cot1 * sum_i, sum_i, m.omega1, c, tau);
    const ModeTerm anti_phase =
        mode_term(dif_f * grow / sin2 - cot2 * dif_i, dif_i, m.omega2, c, tau);

    const int k1 = 2 * branch, k2 = 2 * branch + 1;
    out.value(k1) = in_phase.value - anti_phase.value;
    out.value(k2) = in_phase.value + anti_phase.value;
    out.rate(k1) = in_phase.rate - anti_phase.rate;
    out.rate(k2) = in_phase.rate + anti_phase.rate;
    out.accel(k1) = in_phase.accel - anti_phase.accel;
    out.accel(k2) = in_phase.accel + anti_phase.accel;
  }
  return out;
}

}  // namespace oscpair
