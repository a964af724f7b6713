// Copyright 2026 The boundmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "row_qp.h"

#include <cmath>

namespace boundmf::internal {

Eigen::VectorXd MinimizeProjected(const RowQuadratic& q, Eigen::VectorXd v,
                                  const Projector& project,
                                  const PgOptions& options) {
  const double trace = q.H.trace();
  const double fallback_step = trace > 0.0 ? 1.0 / trace : 1.0;
  double f = q.Value(v);
  Eigen::VectorXd g = q.Gradient(v);
  double step = fallback_step;

  for (int it = 0; it < options.max_iterations; ++it) {
    double t = step;
    bool accepted = false;
    Eigen::VectorXd candidate;
    double f_candidate = f;
    for (int bt = 0; bt <= options.max_backtracks; ++bt, t *= 0.5) {
      candidate = project(v - t * g);
      const Eigen::VectorXd delta = candidate - v;
      if (delta.squaredNorm() == 0.0) break;
      f_candidate = q.Value(candidate);
      if (f_candidate <= f + options.armijo * g.dot(delta) &&
          f_candidate <= f) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    const Eigen::VectorXd s = candidate - v;
    const Eigen::VectorXd hs = q.H * s;
    const double curvature = s.dot(hs);
    step = curvature > 0.0 ? s.squaredNorm() / curvature : fallback_step;

    const double f_prev = f;
    v = std::move(candidate);
    f = f_candidate;
    g += hs;
    if (!(f > 0.0) || (f_prev - f) / f < options.rel_tolerance) break;
  }
  return v;
}

}  // namespace boundmf::internal
