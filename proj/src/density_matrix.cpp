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

#include "oscpair/density_matrix.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "oscpair/errors.hpp"
#include "oscpair/quadrature.hpp"

namespace oscpair {

Intermediates intermediates(const KinematicSet& k, const BathKernels& bk, double a1, double a2,
                            double hbar) {
  const double cc = bk.C2 + hbar * a2;
  if (!(cc > 0.0)) throw DomainError("C2 + hbar a2 must be positive");
  const double c2h = bk.C2 / hbar + a2;
  const double d4 = k.D4p + k.Pi16;
  const double d3p = k.D3p + k.Pi8;
  const double d9 = k.D9s + k.Pi6;
  const double d11 = k.D11s + k.Pi14;

  Intermediates im;
  im.denom = 4.0 * hbar * a2 * cc + d4 * d4;
  im.e3 = k.D12s + k.Pi15 - bk.E1 * d4 / (2.0 * cc);
  im.e4 = d11 * d4 / (2.0 * cc);
  im.e5 = d3p * d4 / (2.0 * cc);
  im.e6 = d9 * d4 / (2.0 * cc);

  const double w = cc / im.denom;
  im.Z1 = bk.C1 / hbar + a1 - bk.E1 * bk.E1 / (4.0 * hbar * cc) + im.e3 * im.e3 * c2h / im.denom;
  im.Z2 = k.D3 + k.Pi5 - bk.E1 * d9 / (2.0 * cc) - 2.0 * im.e3 * im.e6 * w;
  im.Z3 = k.D10s + k.Pi7 - bk.E1 * d3p / (2.0 * cc) - 2.0 * im.e3 * im.e5 * w;
  im.Z6 = k.D4 + k.Pi13 - bk.E1 * d11 / (2.0 * cc) - 2.0 * im.e3 * im.e4 * w;
  if (!(im.Z1 > 0.0)) {
    std::ostringstream os;
    os << "non-normalizable state at t = " << k.t << ": Z1 = " << im.Z1;
    throw NonNormalizableError(os.str());
  }

  im.Y1 = a1 + d11 * d11 / (4.0 * hbar * cc) - im.e4 * im.e4 * c2h / im.denom +
          im.Z6 * im.Z6 / (4.0 * hbar * hbar * im.Z1);
  if (!(im.Y1 > 0.0)) {
    std::ostringstream os;
    os << "non-normalizable state at t = " << k.t << ": Y1 = " << im.Y1;
    throw NonNormalizableError(os.str());
  }
  im.y4 = d3p * d11 / (2.0 * cc) - 2.0 * im.e4 * im.e5 * w + im.Z3 * im.Z6 / (2.0 * hbar * im.Z1);
  im.y5 = d9 * d11 / (2.0 * cc) - 2.0 * im.e4 * im.e6 * w + im.Z2 * im.Z6 / (2.0 * hbar * im.Z1);
  return im;
}

BetaCoefficients beta_coefficients(const Intermediates& im, const KinematicSet& k,
                                   const BathKernels& bk, double a2, double hbar) {
  const double cc = bk.C2 + hbar * a2;
  const double c2h = bk.C2 / hbar + a2;
  const double d3p = k.D3p + k.Pi8;
  const double d9 = k.D9s + k.Pi6;
  const double h2 = hbar * hbar;

  // Y^2 = -y^2 for the purely imaginary Y4, Y5.
  BetaCoefficients b;
  b.b11 = 2.0 * (d9 * d9 / (hbar * cc) + im.Z2 * im.Z2 / (h2 * im.Z1) -
                 4.0 * im.e6 * im.e6 * c2h / im.denom - im.y5 * im.y5 / (h2 * im.Y1));
  b.b22 = 2.0 * (d3p * d3p / (hbar * cc) + im.Z3 * im.Z3 / (h2 * im.Z1) -
                 4.0 * im.e5 * im.e5 * c2h / im.denom - im.y4 * im.y4 / (h2 * im.Y1));
  b.b12 = 2.0 * d3p * d9 / (hbar * cc) + 2.0 * im.Z2 * im.Z3 / (h2 * im.Z1) -
          8.0 * im.e5 * im.e6 * c2h / im.denom - 2.0 * im.y4 * im.y5 / (h2 * im.Y1);
  return b;
}

MomentState moments(const BetaCoefficients& beta, double t, bool allow_degenerate) {
  MomentState m;
  m.t = t;
  m.beta = beta;
  const double det = beta.b11 * beta.b22 - beta.b12 * beta.b12;
  m.positive_definite = beta.b11 > 0.0 && beta.b22 > 0.0 && det > 0.0;
  if (!m.positive_definite && !allow_degenerate) {
    std::ostringstream os;
    os << "degenerate Gaussian at t = " << t << ": b11 = " << beta.b11 << ", b22 = " << beta.b22
       << ", det = " << det;
    throw DegenerateGaussianError(os.str());
  }
  const double scale = 1.0 / (kLengthSqPerDispersion * det);
  m.sigma1_sq = beta.b22 * scale;
  m.sigma2_sq = beta.b11 * scale;
  m.cov = -beta.b12 * scale;
  m.beta12_inv = beta.b12 * scale;
  return m;
}

namespace {

// Thermal kernel of one free-standing damped oscillator:
//   C = (2 M gamma / pi) int dw w coth(w / 2 theta) |F(w)|^2 / 2,
//   F(w) = int_0^t e^{(gamma + i w) tau} (cos W tau - 2 m sin W tau) dtau.
double single_kernel(double t, double theta, double gamma, double omega, double m, double mass,
                     const QuadratureSpec& spec) {
  using cd = std::complex<double>;
  auto F = [&](double w) {
    const cd ep = exp_integral(cd(gamma, w + omega), t);
    const cd em = exp_integral(cd(gamma, w - omega), t);
    return 0.5 * (ep + em) - 2.0 * m * (ep - em) / cd(0.0, 2.0);
  };
  auto integrand = [&](double w) -> QVec<1> {
    QVec<1> v;
    v[0] = thermal_weight(w, theta) * 0.5 * std::norm(F(w));
    return v;
  };
  ModeStructure single;
  single.omega1 = single.omega2 = omega;
  AdaptiveOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_floor = spec.abs_floor;
  opt.max_depth = spec.max_depth;
  opt.max_panels = spec.max_panels;
  const auto res = integrate_adaptive<1>(integrand, frequency_breaks(t, gamma, single, spec), opt);
  return 2.0 * mass * gamma / M_PI * res.value[0];
}

}  // namespace

double uncoupled_variance(double t, double theta, double sigma0_sq, const SystemParams& params,
                          const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw DomainError("uncoupled_variance: t must be > 0");
  if (!(sigma0_sq > 0.0)) throw DomainError("uncoupled_variance: sigma0^2 must be > 0");
  const double hbar = params.hbar();
  const double M = params.mass;
  const double g = params.gamma;
  const double omega = std::sqrt(params.omega0 * params.omega0 - g * g);

  const double sn = std::sin(omega * t);
  if (std::abs(sn) < kSingularEps)
    throw SingularTimeError("uncoupled_variance: sin(W t) vanishes", 1, t);
  const double n = std::exp(g * t) / (2.0 * sn);
  const double m = std::cos(omega * t) / (2.0 * sn);

  const SValues s = s_functions(t, omega, omega);
  const BTables tab = b_tables(s, omega, omega, g, params.omega0);
  const BTable& b = tab.b;
  const BTable& p = tab.bp;
  const double A = b[1] + b[13] + p[1] + p[13];
  const double B = b[3] + b[15] + p[3] + p[15];
  const double G = b[2] + b[3] + b[14] + b[15] + p[2] + p[3] + p[14] + p[15];
  const double H = b[4] + b[16] + p[4] + p[16];
  const double D3 = 0.5 * M * (-m * n * A + n * B / 2.0);
  const double D4 = 0.5 * M * (m * m * A - m * G / 2.0 + H / 4.0);

  const double C = single_kernel(t, theta, g, omega, m, M, spec);
  const double a = 1.0 / (8.0 * kLengthSqPerDispersion * sigma0_sq);
  const double ca = C + hbar * a;
  const double inv = D3 * D3 / (hbar * ca) * (1.0 - D4 * D4 / (D4 * D4 + 4.0 * hbar * a * ca));
  return 0.5 / inv / kLengthSqPerDispersion;
}

namespace reference {

BetaCoefficients beta_coefficients_complex(const KinematicSet& k, const BathKernels& bk,
                                           double a1, double a2, double hbar) {
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  const double C1 = bk.C1, C2 = bk.C2, E1 = bk.E1;
  const double cc = C2 + hbar * a2;
  const double d4 = k.D4p + k.Pi16;
  const double den = 4.0 * hbar * a2 * cc + d4 * d4;

  const double e3 = k.D12s + k.Pi15 - E1 * d4 / (2.0 * cc);
  const double e4 = (k.D11s + k.Pi14) * d4 / (2.0 * cc);
  const double e5 = (k.D3p + k.Pi8) * d4 / (2.0 * cc);
  const double e6 = (k.D9s + k.Pi6) * d4 / (2.0 * cc);
  const double Z1 = C1 / hbar + a1 - E1 * E1 / (4.0 * hbar * cc) + e3 * e3 * (C2 / hbar + a2) / den;
  const double Z2 = k.D3 + k.Pi5 - E1 * (k.D9s + k.Pi6) / (2.0 * cc) - 2.0 * e3 * e6 * cc / den;
  const double Z3 = k.D10s + k.Pi7 - E1 * (k.D3p + k.Pi8) / (2.0 * cc) - 2.0 * e3 * e5 * cc / den;
  const double Z6 = k.D4 + k.Pi13 - E1 * (k.D11s + k.Pi14) / (2.0 * cc) - 2.0 * e3 * e4 * cc / den;
  const double Y1 = a1 + std::pow(k.D11s + k.Pi14, 2) / (4.0 * hbar * cc) -
                    e4 * e4 * (C2 / hbar + a2) / den + Z6 * Z6 / (4.0 * hbar * hbar * Z1);
  const cd Y4 = I * (k.D3p + k.Pi8) * (k.D11s + k.Pi14) / (2.0 * cc) -
                I * 2.0 * e4 * e5 * cc / den + I * Z3 * Z6 / (2.0 * hbar * Z1);
  const cd Y5 = I * (k.D9s + k.Pi6) * (k.D11s + k.Pi14) / (2.0 * cc) -
                I * 2.0 * e4 * e6 * cc / den + I * Z2 * Z6 / (2.0 * hbar * Z1);

  const double h2 = hbar * hbar;
  const cd b11 = 2.0 * (std::pow(k.D9s + k.Pi6, 2) / (hbar * cc) + Z2 * Z2 / (h2 * Z1) -
                        4.0 * e6 * e6 * (C2 / hbar + a2) / den + Y5 * Y5 / (h2 * Y1));
  const cd b22 = 2.0 * (std::pow(k.D3p + k.Pi8, 2) / (hbar * cc) + Z3 * Z3 / (h2 * Z1) -
                        4.0 * e5 * e5 * (C2 / hbar + a2) / den + Y4 * Y4 / (h2 * Y1));
  const cd b12 = 2.0 * (k.D3p + k.Pi8) * (k.D9s + k.Pi6) / (hbar * cc) + 2.0 * Z2 * Z3 / (h2 * Z1) -
                 8.0 * e5 * e6 * (C2 / hbar + a2) / den + 2.0 * Y4 * Y5 / (h2 * Y1);
  return {b11.real(), b22.real(), b12.real()};
}

}  // namespace reference

}  // namespace oscpair
