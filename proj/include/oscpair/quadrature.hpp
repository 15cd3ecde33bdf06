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
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "oscpair/errors.hpp"

namespace oscpair {

template <int N>
using QVec = Eigen::Array<double, N, 1>;

template <int N>
struct QuadratureResult {
  QVec<N> value = QVec<N>::Zero();
  QVec<N> error = QVec<N>::Zero();
  int panels = 0;
  int evaluations = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  int max_depth = 50;       ///< bisections allowed below an initial panel
  int max_panels = 200000;  ///< total live panels
};

namespace gk15 {

inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr double kGauss[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace gk15

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
template <int N, class F>
void gk15_panel(F& f, double lo, double hi, QVec<N>& value, QVec<N>& error) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  QVec<N> kron = gk15::kKronrod[7] * f(c);
  QVec<N> gauss = gk15::kGauss[3] * f(c);
  for (int j = 0; j < 7; ++j) {
    const QVec<N> sum = f(c - h * gk15::kNodes[j]) + f(c + h * gk15::kNodes[j]);
    kron += gk15::kKronrod[j] * sum;
    if (j % 2 == 1) gauss += gk15::kGauss[j / 2] * sum;
  }
  value = h * kron;
  error = (h * (kron - gauss)).abs();
}

/// Globally adaptive Gauss-Kronrod integration of a vector-valued function
/// over consecutive intervals [breaks[i], breaks[i+1]].
///
/// Converges when every component satisfies
///   error_k <= rel_tol * max_j |value_j| + abs_floor,
/// so a component that is identically small does not stall the run.
template <int N, class F>
QuadratureResult<N> integrate_adaptive(F&& f, const std::vector<double>& breaks,
                                       const AdaptiveOptions& opt) {
  struct Panel {
    double lo, hi;
    int depth;
    QVec<N> value, error;
    double key;
    bool operator<(const Panel& o) const { return key < o.key; }
  };

  QuadratureResult<N> res;
  std::priority_queue<Panel> heap;
  auto push = [&](double lo, double hi, int depth) {
    Panel p{lo, hi, depth, QVec<N>::Zero(), QVec<N>::Zero(), 0.0};
    gk15_panel<N>(f, lo, hi, p.value, p.error);
    res.evaluations += 15;
    p.key = p.error.maxCoeff();
    res.value += p.value;
    res.error += p.error;
    heap.push(p);
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) push(breaks[i], breaks[i + 1], 0);

  auto converged = [&] {
    const double tol = opt.rel_tol * res.value.abs().maxCoeff() + opt.abs_floor;
    return (res.error <= tol).all();
  };

  while (!heap.empty() && !converged()) {
    Panel worst = heap.top();
    if (worst.depth >= opt.max_depth || static_cast<int>(heap.size()) >= opt.max_panels) {
      std::ostringstream os;
      os << "adaptive quadrature did not converge: error " << res.error.maxCoeff()
         << " vs value " << res.value.abs().maxCoeff() << " after " << heap.size()
         << " panels; worst panel [" << worst.lo << ", " << worst.hi << "]";
      throw QuadratureError(os.str(), worst.lo, worst.hi, worst.key);
    }
    heap.pop();
    res.value -= worst.value;
    res.error -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    push(worst.lo, mid, worst.depth + 1);
    push(mid, worst.hi, worst.depth + 1);
  }

  // Re-sum from the panels to drop the drift of the running updates.
  res.value.setZero();
  res.error.setZero();
  res.panels = static_cast<int>(heap.size());
  while (!heap.empty()) {
    res.value += heap.top().value;
    res.error += heap.top().error;
    heap.pop();
  }
  return res;
}

}  // namespace oscpair
