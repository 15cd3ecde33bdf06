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

// Independent oracle: the quantum Langevin solution of two identical
// oscillators with spring coupling, each damped by its own Ohmic bath,
//
//   x'' + 2 gamma x' + K x = xi(t),   K = [[1, -lambda], [-lambda, 1]],
//
// with symmetrized noise <xi_k(s) xi_k(s')> = (2 gamma / pi) int_0^wc w_k cos
// and a product initial state of minimum-uncertainty Gaussians. Evaluated
// with Boost Gauss-Legendre panels, sharing no code with the library.

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace oracle {

struct LangevinParams {
  double gamma = 0.01;
  double lambda = 0.0;
  double theta1 = 0.0, theta2 = 0.0;
  double sigma01_sq = 1.0, sigma02_sq = 1.0;  ///< units of hbar / 2 M omega0
  double omega_cutoff = 50.0;
};

inline double coth_weight(double w, double theta) {
  if (theta == 0.0) return w;
  if (w == 0.0) return 2.0 * theta;
  return w / std::tanh(w / (2.0 * theta));
}

// int_0^w dw' f(w') with 20-point Gauss-Legendre on uniform panels.
template <class F>
Eigen::Matrix2d integrate_panels(F&& f, double hi, int panels) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& x = GL::abscissa();
  const auto& wt = GL::weights();
  const double h = hi / panels;
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h, half = 0.5 * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += wt[i] * half * (f(mid + half * x[i]) + f(mid - half * x[i]));
    }
  }
  return acc;
}

/// Covariance [[<x1^2>, <x1 x2>], [., <x2^2>]] at time t in units of hbar / 2 M omega0.
inline Eigen::Matrix2d langevin_covariance(double t, const LangevinParams& p, int panels = 0) {
  using cd = std::complex<double>;
  const double g = p.gamma;
  Eigen::Matrix2d U;
  U << 1.0, 1.0, 1.0, -1.0;
  U /= std::sqrt(2.0);
  const double om[2] = {std::sqrt(1.0 - p.lambda - g * g), std::sqrt(1.0 + p.lambda - g * g)};

  // Mode Green functions G(u) = e^{-g u} sin(W u) / W and the initial-value propagators.
  Eigen::Matrix2d G, A;
  {
    Eigen::Vector2d gd, ad;
    for (int k = 0; k < 2; ++k) {
      const double e = std::exp(-g * t);
      gd[k] = e * std::sin(om[k] * t) / om[k];
      ad[k] = e * (std::cos(om[k] * t) + g * std::sin(om[k] * t) / om[k]);
    }
    G = U * gd.asDiagonal() * U.transpose();
    A = U * ad.asDiagonal() * U.transpose();
  }
  const Eigen::Matrix2d Sx = Eigen::Vector2d(p.sigma01_sq / 2, p.sigma02_sq / 2).asDiagonal();
  const Eigen::Matrix2d Sp =
      Eigen::Vector2d(1.0 / (2.0 * p.sigma01_sq), 1.0 / (2.0 * p.sigma02_sq)).asDiagonal();
  Eigen::Matrix2d cov = A * Sx * A.transpose() + G * Sp * G.transpose();

  auto eint = [t](cd c) { return std::abs(c * t) < 1e-8 ? cd(t) : (std::exp(c * t) - 1.0) / c; };
  auto noise = [&](double w) -> Eigen::Matrix2d {
    Eigen::Vector2cd fd;
    for (int k = 0; k < 2; ++k)
      fd[k] = (eint(cd(-g, w + om[k])) - eint(cd(-g, w - om[k]))) / (cd(0.0, 2.0) * om[k]);
    const Eigen::Matrix2cd F = U.cast<cd>() * fd.asDiagonal() * U.transpose().cast<cd>();
    const Eigen::Vector2cd wk(coth_weight(w, p.theta1), coth_weight(w, p.theta2));
    return (F * wk.asDiagonal() * F.adjoint()).real();
  };
  if (panels <= 0) {
    const double width = std::min(g / 4.0, M_PI / (2.0 * t));
    panels = static_cast<int>(std::ceil(p.omega_cutoff / width));
  }
  cov += (2.0 * g / M_PI) * integrate_panels(noise, p.omega_cutoff, panels);
  return 2.0 * cov;
}

/// t -> infinity limit, (2 gamma / pi) int chi W chi^H, in units of hbar / 2 M omega0.
inline Eigen::Matrix2d langevin_steady_state(const LangevinParams& p, int panels = 0) {
  using cd = std::complex<double>;
  Eigen::Matrix2d K;
  K << 1.0, -p.lambda, -p.lambda, 1.0;
  auto f = [&](double w) -> Eigen::Matrix2d {
    const Eigen::Matrix2cd chi =
        (K.cast<cd>() - cd(w * w, 2.0 * p.gamma * w) * Eigen::Matrix2cd::Identity()).inverse();
    const Eigen::Vector2cd wk(coth_weight(w, p.theta1), coth_weight(w, p.theta2));
    return (chi * wk.asDiagonal() * chi.adjoint()).real();
  };
  if (panels <= 0) panels = static_cast<int>(std::ceil(p.omega_cutoff / (p.gamma / 4.0)));
  return 2.0 * (2.0 * p.gamma / M_PI) * integrate_panels(f, p.omega_cutoff, panels);
}

}  // namespace oracle
