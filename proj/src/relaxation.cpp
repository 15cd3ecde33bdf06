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

#include "oscpair/relaxation.hpp"

#include <cmath>

#include "oscpair/errors.hpp"

namespace oscpair {

const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::singular: return "singular_time";
    case PointStatus::quadrature: return "quadrature";
    case PointStatus::non_normalizable: return "non_normalizable";
    case PointStatus::degenerate: return "degenerate";
    case PointStatus::domain: return "domain";
  }
  return "unknown";
}

RelaxationModel::RelaxationModel(const SystemParams& params, const QuadratureSpec& spec,
                                 const FormulaReadings& readings,
                                 std::shared_ptr<KernelCache> cache)
    : params_(params),
      modes_(mode_structure(params)),
      spec_(spec),
      readings_(readings),
      cache_(std::move(cache)) {
  validate(spec_, modes_);
}

BathKernels RelaxationModel::kernels(double t) const {
  if (cache_) return cache_->get_or_compute(t, params_, modes_, spec_, readings_);
  return bath_integrals(t, params_, modes_, spec_, readings_);
}

MomentState RelaxationModel::at(double t) const {
  const KinematicSet kin = kinematic_set(t, params_, modes_, readings_);
  const BathKernels bk = kernels(t);
  const Intermediates im = intermediates(kin, bk, params_.a1(), params_.a2(), params_.hbar());
  return moments(beta_coefficients(im, kin, bk, params_.a2(), params_.hbar()), t);
}

PointResult RelaxationModel::try_at(double t) const {
  PointResult r;
  r.t = t;
  try {
    const KinematicSet kin = kinematic_set(t, params_, modes_, readings_);
    r.kernels = kernels(t);
    const Intermediates im =
        intermediates(kin, r.kernels, params_.a1(), params_.a2(), params_.hbar());
    r.state = moments(beta_coefficients(im, kin, r.kernels, params_.a2(), params_.hbar()), t,
                      /*allow_degenerate=*/true);
    if (!r.state.positive_definite) {
      r.status = PointStatus::degenerate;
      r.message = "Gaussian form not positive definite";
    }
  } catch (const SingularTimeError& e) {
    r.status = PointStatus::singular;
    r.message = e.what();
  } catch (const QuadratureError& e) {
    r.status = PointStatus::quadrature;
    r.message = e.what();
  } catch (const NonNormalizableError& e) {
    r.status = PointStatus::non_normalizable;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.status = PointStatus::domain;
    r.message = e.what();
  }
  return r;
}

std::vector<double> shift_singular_times(const std::vector<double>& times,
                                         const ModeStructure& modes,
                                         std::vector<GridShift>* shifts) {
  std::vector<double> out = times;
  for (std::size_t i = 0; i < out.size(); ++i) {
    // A shift for one mode could in principle land near the other's set.
    for (int pass = 0; pass < 4; ++pass) {
      bool moved = false;
      for (int mode = 1; mode <= 2; ++mode) {
        const double w = mode == 1 ? modes.omega1 : modes.omega2;
        if (std::abs(std::sin(w * out[i])) < kSingularEps) {
          const double from = out[i];
          out[i] += 3.0 * kSingularEps / w;
          if (shifts) shifts->push_back({i, from, out[i], mode});
          moved = true;
        }
      }
      if (!moved) break;
    }
  }
  return out;
}

std::vector<double> linear_grid(double t0, double t1, int points) {
  if (points < 1) throw DomainError("grid needs at least one point");
  if (points == 1) return {t1};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (points - 1);
  return g;
}

std::vector<double> log_grid(double t0, double t1, int points) {
  if (!(t0 > 0.0 && t1 > t0)) throw DomainError("log grid needs 0 < t0 < t1");
  if (points < 2) return {t1};
  std::vector<double> g(static_cast<std::size_t>(points));
  const double r = std::log(t1 / t0);
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = t0 * std::exp(r * i / (points - 1));
  g.back() = t1;
  return g;
}

std::vector<PointResult> evaluate_grid(const RelaxationModel& model,
                                       const std::vector<double>& times, int jobs) {
  std::vector<PointResult> out(times.size());
  parallel_for(times.size(), jobs, [&](std::size_t i) { out[i] = model.try_at(times[i]); });
  return out;
}

}  // namespace oscpair
