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

// Brute-force oracles for the bath kernels: the double time integral over
// the triangle 0 <= s <= tau <= t is done by composite Gauss-Legendre in both
// directions on the pointwise kernels, with no closed-form antiderivatives.

#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>
#include <boost/math/quadrature/gauss.hpp>

#include "oscpair/bath_kernels.hpp"
#include "oscpair/kinematics.hpp"

namespace oracle {

struct TriangleRule {
  std::vector<double> tau, s, w;
};

// Composite n-point rule with panels no wider than h.
inline void panel_rule(double lo, double hi, double h, std::vector<double>& x,
                       std::vector<double>& w) {
  using GL = boost::math::quadrature::gauss<double, 10>;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
  const double step = (hi - lo) / n;
  for (int p = 0; p < n; ++p) {
    const double mid = lo + (p + 0.5) * step, half = 0.5 * step;
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
      x.push_back(mid + half * GL::abscissa()[i]);
      w.push_back(half * GL::weights()[i]);
      x.push_back(mid - half * GL::abscissa()[i]);
      w.push_back(half * GL::weights()[i]);
    }
  }
}

inline TriangleRule triangle_rule(double t, double h) {
  TriangleRule r;
  std::vector<double> tx, tw;
  panel_rule(0.0, t, h, tx, tw);
  for (std::size_t i = 0; i < tx.size(); ++i) {
    std::vector<double> sx, sw;
    panel_rule(0.0, tx[i], h, sx, sw);
    for (std::size_t j = 0; j < sx.size(); ++j) {
      r.tau.push_back(tx[i]);
      r.s.push_back(sx[j]);
      r.w.push_back(tw[i] * sw[j]);
    }
  }
  return r;
}

/// Kernel values times e^{gamma (tau + s)} and weights at the triangle nodes.
struct KernelSamples {
  Eigen::ArrayXd u;  ///< tau - s
  Eigen::ArrayXd same, cross, e;
};

inline KernelSamples sample_kernels(double t, double gamma, const oscpair::ModeStructure& modes,
                                    double m1, double m2, oscpair::F14Reading reading,
                                    double h = 0.2) {
  const TriangleRule r = triangle_rule(t, h);
  const auto n = static_cast<Eigen::Index>(r.w.size());
  KernelSamples k{Eigen::ArrayXd(n), Eigen::ArrayXd(n), Eigen::ArrayXd(n), Eigen::ArrayXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const auto v = oscpair::kernel_CE(r.tau[u], r.s[u], m1, m2, modes, reading);
    const double f = r.w[u] * std::exp(gamma * (r.tau[u] + r.s[u]));
    k.u[i] = r.tau[u] - r.s[u];
    k.same[i] = f * v.C_same;
    k.cross[i] = f * v.C_cross;
    k.e[i] = f * v.E;
  }
  return k;
}

/// Inner integrals (same, cross, E) at one omega.
inline Eigen::Array3d brute_force_inner(const KernelSamples& k, double omega) {
  const Eigen::ArrayXd c = (omega * k.u).cos();
  return {(c * k.same).sum(), (c * k.cross).sum(), (c * k.e).sum()};
}

/// C1, C2, E1 with brute-force inner integrals and a fixed Gauss-Legendre
/// omega rule on [0, omega_cutoff].
inline Eigen::Array3d brute_force_bath(double t, const oscpair::SystemParams& p,
                                       const oscpair::ModeStructure& modes, double omega_cutoff,
                                       oscpair::F14Reading reading, double omega_panel = 0.05) {
  const auto nm = oscpair::mode_factors(t, modes.omega1, modes.omega2, p.gamma);
  const KernelSamples k = sample_kernels(t, p.gamma, modes, nm.m1, nm.m2, reading);
  std::vector<double> wx, ww;
  panel_rule(0.0, omega_cutoff, omega_panel, wx, ww);
  Eigen::Array3d acc = Eigen::Array3d::Zero();
  for (std::size_t i = 0; i < wx.size(); ++i) {
    const Eigen::Array3d I = brute_force_inner(k, wx[i]);
    const double w1 = oscpair::thermal_weight(wx[i], p.theta1);
    const double w2 = oscpair::thermal_weight(wx[i], p.theta2);
    acc += ww[i] * Eigen::Array3d(w1 * I[0] + w2 * I[1], w1 * I[1] + w2 * I[0], (w1 + w2) * I[2]);
  }
  return 2.0 * p.mass * p.gamma / M_PI * acc;
}

}  // namespace oracle
