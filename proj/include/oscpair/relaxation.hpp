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

#include <algorithm>
#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "oscpair/bath_kernels.hpp"
#include "oscpair/density_matrix.hpp"
#include "oscpair/kernel_cache.hpp"
#include "oscpair/kinematics.hpp"
#include "oscpair/normal_modes.hpp"

namespace oscpair {

enum class PointStatus { ok, singular, quadrature, non_normalizable, degenerate, domain };

const char* to_string(PointStatus s);

/// Outcome at one grid time. Degenerate (non positive definite) states are
/// kept with state.positive_definite = false; other failures carry a message.
struct PointResult {
  double t = 0.0;
  PointStatus status = PointStatus::ok;
  MomentState state;
  BathKernels kernels;
  std::string message;

  bool usable() const { return status == PointStatus::ok; }
};

/// Full time-evolution pipeline for one parameter set:
/// kinematics -> bath kernels -> Gaussian assembly -> moments.
class RelaxationModel {
 public:
  RelaxationModel(const SystemParams& params, const QuadratureSpec& spec = {},
                  const FormulaReadings& readings = {},
                  std::shared_ptr<KernelCache> cache = nullptr);

  /// Throws on any failure, including a degenerate Gaussian.
  MomentState at(double t) const;

  /// Never throws; records the failure kind instead.
  PointResult try_at(double t) const;

  const SystemParams& params() const { return params_; }
  const ModeStructure& modes() const { return modes_; }
  const QuadratureSpec& spec() const { return spec_; }
  const FormulaReadings& readings() const { return readings_; }

 private:
  BathKernels kernels(double t) const;

  SystemParams params_;
  ModeStructure modes_;
  QuadratureSpec spec_;
  FormulaReadings readings_;
  std::shared_ptr<KernelCache> cache_;
};

/// A grid point moved off a singular time t = k pi / W.
struct GridShift {
  std::size_t index = 0;
  double from = 0.0;
  double to = 0.0;
  int mode = 0;
};

/// Moves every point with |sin(W t)| < kSingularEps forward by 3 kSingularEps / W.
std::vector<double> shift_singular_times(const std::vector<double>& times,
                                         const ModeStructure& modes,
                                         std::vector<GridShift>* shifts = nullptr);

std::vector<double> linear_grid(double t0, double t1, int points);
std::vector<double> log_grid(double t0, double t1, int points);

/// Evaluates the model on every time with `jobs` worker threads. Results come
/// back in grid order whatever the completion order.
std::vector<PointResult> evaluate_grid(const RelaxationModel& model,
                                       const std::vector<double>& times, int jobs = 1);

/// Runs f(i) for i in [0, n) on `jobs` threads. f must not throw.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace oscpair
