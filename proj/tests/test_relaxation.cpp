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

#include "oscpair/errors.hpp"
#include "oscpair/relaxation.hpp"

namespace oscpair {
namespace {

SystemParams params(double lambda) {
  SystemParams p;
  p.lambda = lambda;
  p.theta1 = 3.92765;
  p.theta2 = 9.16452;
  return p;
}

TEST(Grids, LinearAndLogarithmic) {
  const auto l = linear_grid(0.0, 10.0, 11);
  ASSERT_EQ(l.size(), 11u);
  EXPECT_DOUBLE_EQ(l[3], 3.0);
  EXPECT_EQ(l.back(), 10.0);
  const auto g = log_grid(0.1, 1000.0, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_NEAR(g[1], 1.0, 1e-12);
  EXPECT_EQ(g.back(), 1000.0);
  EXPECT_THROW(log_grid(0.0, 1.0, 3), DomainError);
  EXPECT_THROW(linear_grid(0.0, 1.0, 0), DomainError);
}

TEST(Grids, SingularTimesAreShifted) {
  const ModeStructure m = mode_structure(params(0.3));
  const double bad = M_PI / m.omega1 * 7.0;
  std::vector<GridShift> shifts;
  const auto out = shift_singular_times({1.0, bad, 5.0}, m, &shifts);
  EXPECT_EQ(out[0], 1.0);
  EXPECT_EQ(out[2], 5.0);
  ASSERT_EQ(shifts.size(), 1u);
  EXPECT_EQ(shifts[0].index, 1u);
  EXPECT_EQ(shifts[0].mode, 1);
  EXPECT_GT(out[1], bad);
  EXPECT_GE(std::abs(std::sin(m.omega1 * out[1])), kSingularEps);
  EXPECT_GE(std::abs(std::sin(m.omega2 * out[1])), kSingularEps);
  EXPECT_LT(out[1] - bad, 1e-6);
}

TEST(Model, TryAtReportsSingularTime) {
  const RelaxationModel model(params(0.3));
  const double bad = M_PI / model.modes().omega2 * 3.0;
  const PointResult r = model.try_at(bad);
  EXPECT_EQ(r.status, PointStatus::singular);
  EXPECT_FALSE(r.usable());
  EXPECT_FALSE(r.message.empty());
  EXPECT_THROW(model.at(bad), SingularTimeError);
}

TEST(Model, TryAtReportsQuadratureFailure) {
  QuadratureSpec spec;
  spec.max_panels = 2;
  spec.split_resonances = false;
  spec.rel_tol = 1e-13;
  const RelaxationModel model(params(0.3), spec);
  const PointResult r = model.try_at(400.3);
  EXPECT_EQ(r.status, PointStatus::quadrature);
}

TEST(Model, RejectsInadmissibleParameters) {
  EXPECT_THROW(RelaxationModel(params(1.2)), DomainError);
  SystemParams p = params(0.1);
  p.gamma = -0.1;
  EXPECT_THROW(RelaxationModel{p}, DomainError);
}

TEST(Model, InitialStateIsRecoveredAtShortTimes) {
  SystemParams p = params(0.2);
  p.sigma01_sq = 1.0;
  p.sigma02_sq = 10.0;
  const MomentState s = RelaxationModel(p).at(1e-3);
  EXPECT_NEAR(s.sigma1_sq, 1.0, 1e-2);
  EXPECT_NEAR(s.sigma2_sq, 10.0, 1e-1);
}

TEST(EvaluateGrid, OrderAndDeterminismAcrossJobs) {
  const RelaxationModel model(params(0.4));
  const auto times = shift_singular_times(log_grid(0.5, 200.0, 12), model.modes());
  const auto a = evaluate_grid(model, times, 1);
  const auto b = evaluate_grid(model, times, 4);
  ASSERT_EQ(a.size(), times.size());
  ASSERT_EQ(b.size(), times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_EQ(a[i].t, times[i]);
    EXPECT_EQ(b[i].t, times[i]);
    ASSERT_TRUE(a[i].usable()) << a[i].message;
    EXPECT_EQ(a[i].state.sigma1_sq, b[i].state.sigma1_sq);
    EXPECT_EQ(a[i].state.sigma2_sq, b[i].state.sigma2_sq);
    EXPECT_EQ(a[i].state.cov, b[i].state.cov);
  }
}

TEST(EvaluateGrid, SharedCacheGivesIdenticalResults) {
  auto cache = std::make_shared<KernelCache>();
  const RelaxationModel cached(params(0.4), {}, {}, cache), plain(params(0.4));
  const auto times = linear_grid(3.0, 30.0, 4);
  const auto a = evaluate_grid(cached, times);
  const auto b = evaluate_grid(cached, times);
  const auto c = evaluate_grid(plain, times);
  EXPECT_EQ(cache->misses(), times.size());
  EXPECT_EQ(cache->hits(), times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_EQ(a[i].state.sigma1_sq, b[i].state.sigma1_sq);
    EXPECT_EQ(a[i].state.sigma1_sq, c[i].state.sigma1_sq);
  }
}

TEST(PointStatus, Names) {
  EXPECT_STREQ(to_string(PointStatus::ok), "ok");
  EXPECT_STREQ(to_string(PointStatus::singular), "singular_time");
}

}  // namespace
}  // namespace oscpair
