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

#include "oscpair/bath_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscpair/errors.hpp"
#include "oscpair/quadrature.hpp"

namespace oscpair {

using cd = std::complex<double>;

void validate(const QuadratureSpec& spec, const ModeStructure& modes) {
  const double top = std::max(modes.omega1, modes.omega2);
  if (!(spec.omega_cutoff > top)) {
    std::ostringstream os;
    os << "omega_cutoff = " << spec.omega_cutoff << " must exceed the highest mode frequency "
       << top;
    throw DomainError(os.str());
  }
  if (!(spec.rel_tol > 1e-14 && spec.rel_tol < 1e-2))
    throw DomainError("quadrature relative tolerance must lie in (1e-14, 1e-2)");
  if (!(spec.abs_floor >= 0.0)) throw DomainError("quadrature absolute floor must be >= 0");
  if (spec.max_depth < 1 || spec.max_panels < 1)
    throw DomainError("quadrature depth and panel limits must be positive");
}

namespace {

// Trig factors of the kernel basis: 0 sin(W1 x), 1 sin(W2 x), 2 cos(W1 x), 3 cos(W2 x).
struct BasisPair {
  int tau, s;
};

std::array<BasisPair, 17> basis_pairs(F14Reading reading) {
  std::array<BasisPair, 17> p{};
  p[1] = {0, 0};
  p[2] = {1, 1};
  p[3] = {0, 1};
  p[4] = {1, 0};
  p[5] = {2, 2};
  p[6] = {3, 3};
  p[7] = {2, 3};
  p[8] = {3, 2};
  p[9] = {0, 2};
  p[10] = {2, 0};
  p[11] = {0, 3};
  p[12] = {2, 1};
  p[13] = {1, 3};
  p[14] = reading == F14Reading::paired ? BasisPair{3, 1} : BasisPair{3, 0};
  p[15] = {1, 2};
  p[16] = {3, 0};
  return p;
}

// Coefficients of f1..f16 in the three kernels (index 0 unused).
struct KernelCoefficients {
  std::array<double, 17> same{}, cross{}, e{};
};

KernelCoefficients kernel_coefficients(double m1, double m2) {
  KernelCoefficients k;
  auto& a = k.same;
  a[1] = m1 * m1;
  a[2] = m2 * m2;
  a[3] = a[4] = m1 * m2;
  a[9] = a[10] = a[11] = a[16] = -m1 / 2.0;
  a[12] = a[15] = a[13] = a[14] = -m2 / 2.0;
  a[5] = a[6] = a[7] = a[8] = 0.25;

  auto& b = k.cross;
  b[1] = m1 * m1;
  b[2] = m2 * m2;
  b[3] = b[4] = -m1 * m2;
  b[11] = b[16] = m1 / 2.0;
  b[9] = b[10] = -m1 / 2.0;
  b[12] = b[15] = m2 / 2.0;
  b[13] = b[14] = -m2 / 2.0;
  b[5] = b[6] = 0.25;
  b[7] = b[8] = -0.25;

  auto& e = k.e;
  e[1] = 2.0 * m1 * m1;
  e[2] = -2.0 * m2 * m2;
  e[9] = e[10] = -m1;
  e[13] = e[14] = m2;
  e[5] = 0.5;
  e[6] = -0.5;
  return k;
}

std::array<double, 4> trig_basis(double x, double omega1, double omega2) {
  return {std::sin(omega1 * x), std::sin(omega2 * x), std::cos(omega1 * x),
          std::cos(omega2 * x)};
}

// e^w - 1 without cancellation for small |w|.
cd expm1_complex(cd w) {
  const double x = w.real(), y = w.imag();
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

// Series of the double integral for |alpha t|, |beta t| < 0.5, in units of t^2.
cd double_exp_series(cd a, cd b) {
  constexpr int kOrder = 24;
  std::array<cd, kOrder + 1> ap{}, bp{};
  ap[0] = bp[0] = 1.0;
  for (int j = 1; j <= kOrder; ++j) {
    ap[j] = ap[j - 1] * a / static_cast<double>(j);          // a^j / j!
    bp[j] = bp[j - 1] * b / static_cast<double>(j + 1);      // b^j / (j+1)!
  }
  cd sum = 0.0;
  for (int j = 0; j <= kOrder; ++j)
    for (int k = 0; j + k <= kOrder; ++k) sum += ap[j] * bp[k] / static_cast<double>(j + k + 2);
  return sum;
}

// Route selection shared by the per-omega fast path and the public function.
cd double_exp_from_parts(cd alpha, cd beta, double t, cd e_alpha, cd e_beta, cd e_sum,
                         cd exp_alpha_t) {
  const double at = std::abs(alpha) * t, bt = std::abs(beta) * t;
  if (bt >= at && bt >= 0.5) return (e_sum - e_alpha) / beta;
  if (at >= 0.5) return (exp_alpha_t * e_beta - e_sum) / alpha;
  return t * t * double_exp_series(alpha * t, beta * t);
}

}  // namespace

cd exp_integral(cd z, double t) {
  const cd w = z * t;
  if (std::abs(w) < 1e-12) return t * (1.0 + 0.5 * w);
  return expm1_complex(w) / z;
}

cd double_exp_integral(cd alpha, cd beta, double t) {
  return double_exp_from_parts(alpha, beta, t, exp_integral(alpha, t), exp_integral(beta, t),
                               exp_integral(alpha + beta, t), std::exp(alpha * t));
}

OneBased<double, 16> kernel_basis(double tau, double s, double omega1, double omega2,
                                  F14Reading reading) {
  const auto gt = trig_basis(tau, omega1, omega2);
  const auto gs = trig_basis(s, omega1, omega2);
  const auto pairs = basis_pairs(reading);
  OneBased<double, 16> f;
  for (int i = 1; i <= 16; ++i)
    f[i] = gt[static_cast<std::size_t>(pairs[i].tau)] * gs[static_cast<std::size_t>(pairs[i].s)];
  return f;
}

KernelValues kernel_CE(double tau, double s, double m1, double m2, const ModeStructure& modes,
                       F14Reading reading) {
  const auto f = kernel_basis(tau, s, modes.omega1, modes.omega2, reading);
  const auto c = kernel_coefficients(m1, m2);
  KernelValues v;
  for (int i = 1; i <= 16; ++i) {
    const auto u = static_cast<std::size_t>(i);
    v.C_same += c.same[u] * f[i];
    v.C_cross += c.cross[u] * f[i];
    v.E += c.e[u] * f[i];
  }
  return v;
}

double thermal_weight(double omega, double theta) {
  if (theta <= 0.0) return omega;
  const double x = omega / (2.0 * theta);
  if (x < 1e-4) return 2.0 * theta * (1.0 + x * x / 3.0);
  if (x > 20.0) return omega;
  return omega / std::tanh(x);
}

TimeIntegralKernel::TimeIntegralKernel(double t, double gamma, const ModeStructure& modes,
                                       double m1, double m2, F14Reading reading)
    : t_(t), gamma_(gamma) {
  nu_ = {modes.omega1, -modes.omega1, modes.omega2, -modes.omega2};

  // Rows: basis function, columns: exponent e^{i nu_e x}.
  Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
  const cd half_i(0.0, 0.5);
  A(0, 0) = -half_i;
  A(0, 1) = half_i;
  A(1, 2) = -half_i;
  A(1, 3) = half_i;
  A(2, 0) = A(2, 1) = 0.5;
  A(3, 2) = A(3, 3) = 0.5;

  const auto pairs = basis_pairs(reading);
  const auto c = kernel_coefficients(m1, m2);
  const std::array<const std::array<double, 17>*, 3> tables = {&c.same, &c.cross, &c.e};
  for (std::size_t k = 0; k < 3; ++k) {
    Eigen::Matrix4d K = Eigen::Matrix4d::Zero();
    for (int i = 1; i <= 16; ++i) K(pairs[i].tau, pairs[i].s) += (*tables[k])[static_cast<std::size_t>(i)];
    h_[k] = A.transpose() * K.cast<cd>() * A;
  }

  for (int e = 0; e < 4; ++e)
    for (int f = 0; f < 4; ++f)
      e_sum_(e, f) = exp_integral(cd(2.0 * gamma, nu_[e] + nu_[f]), t);
}

Eigen::Array3d TimeIntegralKernel::operator()(double omega) const {
  std::array<cd, 4> alpha, beta, e_alpha, e_beta, exp_alpha;
  for (std::size_t e = 0; e < 4; ++e) {
    alpha[e] = cd(gamma_, nu_[e] + omega);
    beta[e] = cd(gamma_, nu_[e] - omega);
    e_alpha[e] = exp_integral(alpha[e], t_);
    e_beta[e] = exp_integral(beta[e], t_);
    exp_alpha[e] = std::exp(alpha[e] * t_);
  }
  Eigen::Array3d out = Eigen::Array3d::Zero();
  for (std::size_t e = 0; e < 4; ++e) {
    for (std::size_t f = 0; f < 4; ++f) {
      const int ei = static_cast<int>(e), fi = static_cast<int>(f);
      const cd j = double_exp_from_parts(alpha[e], beta[f], t_, e_alpha[e], e_beta[f],
                                         e_sum_(ei, fi), exp_alpha[e]);
      for (int k = 0; k < 3; ++k) out[k] += (h_[static_cast<std::size_t>(k)](ei, fi) * j).real();
    }
  }
  return out;
}

Eigen::Array3d inner_time_integrals(double omega, double t, double gamma,
                                    const ModeStructure& modes, double m1, double m2,
                                    F14Reading reading) {
  return TimeIntegralKernel(t, gamma, modes, m1, m2, reading)(omega);
}

std::vector<double> frequency_breaks(double t, double gamma, const ModeStructure& modes,
                                     const QuadratureSpec& spec) {
  const double wc = spec.omega_cutoff;
  std::vector<double> pts = {0.0, wc};
  if (spec.split_resonances) {
    for (double w : {modes.omega1, modes.omega2}) {
      for (double x : {w - 5.0 * gamma, w, w + 5.0 * gamma})
        if (x > 0.0 && x < wc) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // The time integrals oscillate in omega with period 2 pi / t.
  const double width = std::max(4.0 * M_PI / t, wc / 20000.0);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    for (int k = 0; k < pieces; ++k) out.push_back(lo + (hi - lo) * k / pieces);
  }
  out.push_back(pts.back());
  return out;
}

BathKernels bath_integrals(double t, const SystemParams& params, const ModeStructure& modes,
                           const QuadratureSpec& spec, const FormulaReadings& readings) {
  if (!(t > 0.0)) throw DomainError("bath_integrals: t must be > 0");
  if (!(params.gamma >= 0.0)) throw DomainError("bath_integrals: gamma must be >= 0");
  validate(spec, modes);
  BathKernels bk;
  bk.t = t;
  if (params.gamma == 0.0) return bk;

  const ModeFactors nm = mode_factors(t, modes.omega1, modes.omega2, params.gamma);
  const TimeIntegralKernel inner(t, params.gamma, modes, nm.m1, nm.m2, readings.f14);
  const double th1 = params.theta1, th2 = params.theta2;
  auto integrand = [&](double omega) -> QVec<3> {
    const Eigen::Array3d I = inner(omega);
    const double w1 = thermal_weight(omega, th1);
    const double w2 = thermal_weight(omega, th2);
    QVec<3> v;
    v << w1 * I[0] + w2 * I[1], w1 * I[1] + w2 * I[0], (w1 + w2) * I[2];
    return v;
  };

  AdaptiveOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_floor = spec.abs_floor;
  opt.max_depth = spec.max_depth;
  opt.max_panels = spec.max_panels;
  const auto res = integrate_adaptive<3>(integrand, frequency_breaks(t, params.gamma, modes, spec), opt);

  const double pref = 2.0 * params.mass * params.gamma / M_PI;
  bk.C1 = pref * res.value[0];
  bk.C2 = pref * res.value[1];
  bk.E1 = pref * res.value[2];
  bk.err_C1 = pref * res.error[0];
  bk.err_C2 = pref * res.error[1];
  bk.err_E1 = pref * res.error[2];
  bk.panels = res.panels;
  return bk;
}

}  // namespace oscpair
