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

#include <cmath>

#include <gtest/gtest.h>

#include "fdt_oracle.hpp"
#include "langevin_oracle.hpp"
#include "oscpair/errors.hpp"
#include "oscpair/fdt_analysis.hpp"

namespace oscpair {
namespace {

constexpr double kTheta300 = 3.92765029395;
constexpr double kTheta700 = 9.16451735255;

SystemParams params(double lambda, double th1, double th2) {
  SystemParams p;
  p.lambda = lambda;
  p.theta1 = th1;
  p.theta2 = th2;
  return p;
}

TEST(FdtVariance, MatchesFineTrapezoid) {
  for (double th : {0.0, 0.5, kTheta300, kTheta700}) {
    const FdtResult r = fdt_variance(th, 0.01);
    const double ref = oracle::fdt_trapezoid(th, 0.01, 50.0, 1000001);
    EXPECT_NEAR(r.variance, ref, 1e-6 * ref) << th;
    EXPECT_LT(r.error, 1e-6 * r.variance);
  }
}

TEST(FdtVariance, ClassicalAndQuantumLimits) {
  // Equipartition: <x^2> = k_B T / M omega0^2, i.e. 2 theta dispersion units.
  const double hot = fdt_variance(50.0, 0.01).variance;
  EXPECT_NEAR(hot / (2.0 * 50.0), 1.0, 1e-2);
  // Zero temperature approaches the ground-state width, up to the Ohmic
  // logarithmic correction of order gamma.
  const double cold = fdt_variance(0.0, 0.01).variance;
  EXPECT_NEAR(cold, 1.0, 0.05);
}

TEST(FdtVariance, MonotoneInTemperature) {
  double prev = 0.0;
  for (double th : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0}) {
    const double v = fdt_variance(th, 0.01).variance;
    EXPECT_GT(v, prev) << th;
    prev = v;
  }
}

TEST(FdtVariance, IntegrandLimits) {
  EXPECT_NEAR(fdt_integrand(0.0, 2.0, 0.01), 4.0 * 0.01 * 2.0 / M_PI, 1e-15);
  EXPECT_NEAR(fdt_integrand(1e-9, 2.0, 0.01), fdt_integrand(0.0, 2.0, 0.01), 1e-12);
  EXPECT_EQ(fdt_integrand(0.0, 0.0, 0.01), 0.0);
  EXPECT_THROW(fdt_variance(-1.0, 0.01), DomainError);
}

TEST(SteadyState, UncoupledPlateauMatchesEquilibrium) {
  const RelaxationModel model(params(0.0, kTheta300, kTheta700));
  const SteadyState s = run_steady_state(model, 1000.0);
  ASSERT_TRUE(s.converged);
  EXPECT_NEAR(s.sigma1_norm, 1.0, 5e-3);
  EXPECT_NEAR(s.sigma2_norm, 1.0, 5e-3);
  EXPECT_LT(std::abs(s.cov_norm), 1e-8);
  EXPECT_EQ(s.failed_points, 0);
}

TEST(SteadyState, RejectsWindowBeforeRelaxation) {
  const RelaxationModel model(params(0.1, kTheta300, kTheta300));
  EXPECT_THROW(run_steady_state(model, 300.0), DomainError);
}

TEST(SteadyState, CoupledPlateauMatchesLangevinEquilibrium) {
  for (double l : {0.1, 0.5}) {
    const SystemParams p = params(l, kTheta300, kTheta700);
    const SteadyState s = run_steady_state(RelaxationModel(p), 1000.0);
    ASSERT_TRUE(s.converged);
    oracle::LangevinParams o;
    o.gamma = p.gamma;
    o.lambda = l;
    o.theta1 = p.theta1;
    o.theta2 = p.theta2;
    const Eigen::Matrix2d ref = oracle::langevin_steady_state(o);
    EXPECT_NEAR(s.sigma1_sq, ref(0, 0), 1e-6 * ref(0, 0)) << l;
    EXPECT_NEAR(s.sigma2_sq, ref(1, 1), 1e-6 * ref(1, 1)) << l;
    EXPECT_NEAR(s.cov, ref(0, 1), 1e-6 * ref(0, 0)) << l;
  }
}

TEST(Scans, EqualTemperaturesGiveCoincidentCurves) {
  ScanOptions opt;
  const auto pts = scan_lambda(params(0.0, kTheta300, kTheta300), {0.05, 0.5}, opt);
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& pt : pts) {
    ASSERT_TRUE(pt.error.empty()) << pt.error;
    EXPECT_NEAR(pt.steady.sigma1_norm, pt.steady.sigma2_norm, 1e-9 * pt.steady.sigma1_norm);
  }
  EXPECT_GT(pts[1].steady.sigma1_norm, pts[0].steady.sigma1_norm);
}

TEST(Scans, TemperatureSplittingGrowsWithT2) {
  ScanOptions opt;
  const std::vector<double> th2 = {kTheta300, 6.0, kTheta700};
  const auto pts = scan_temperature(params(0.0, kTheta300, kTheta300), th2, {0.1}, opt);
  ASSERT_EQ(pts.size(), 3u);
  double prev = -1.0;
  for (const auto& pt : pts) {
    ASSERT_TRUE(pt.error.empty()) << pt.error;
    EXPECT_EQ(pt.lambda, 0.1);
    const double split = pt.steady.sigma1_norm - pt.steady.sigma2_norm;
    EXPECT_GT(split, prev - 1e-9);
    prev = split;
  }
  EXPECT_GT(pts.back().steady.sigma1_norm, 1.0);
  EXPECT_LT(pts.back().steady.sigma2_norm, 1.0);
}

TEST(Scans, BadCouplingIsReportedPerPoint) {
  ScanOptions opt;
  const auto pts = scan_lambda(params(0.0, kTheta300, kTheta300), {1.5}, opt);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_FALSE(pts[0].error.empty());
}

}  // namespace
}  // namespace oscpair
