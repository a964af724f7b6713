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

#include "boundmf/projection.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace boundmf::projection {

Eigen::VectorXd ProjectSimplex(const Eigen::VectorXd& v) {
  const Eigen::Index k = v.size();
  if (k == 0) throw std::invalid_argument("ProjectSimplex: empty vector");
  if (!v.allFinite()) {
    throw std::invalid_argument("ProjectSimplex: non-finite component");
  }
  if (k == 1) return Eigen::VectorXd::Ones(1);

  // Descending order, ties by original index.
  std::vector<Eigen::Index> order(k);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return v(a) > v(b); });

  double prefix = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    prefix += v(order[j]);
    const double candidate = (1.0 - prefix) / static_cast<double>(j + 1);
    if (v(order[j]) + candidate > 0.0) tau = candidate;
  }

  Eigen::VectorXd u = (v.array() + tau).max(0.0).matrix();
  // Rounding can leave the sum a few ulps away from one; put the residual on
  // the largest coordinate, which is strictly positive.
  u(order[0]) += 1.0 - u.sum();
  return u;
}

namespace {

// Half the derivative of the reduced objective in the bias.
double ReducedSlope(double b, double b0, const Eigen::VectorXd& w) {
  double s = b - b0;
  for (Eigen::Index i = 0; i < w.size(); ++i) s += std::max(0.0, w(i) + b - 1.0);
  return s;
}

}  // namespace

BiasedRow ProjectBiasedRow(double bias, const Eigen::VectorXd& weights) {
  if (!std::isfinite(bias) || !weights.allFinite()) {
    throw std::invalid_argument("ProjectBiasedRow: non-finite input");
  }
  const bool feasible = bias >= 0.0 && (weights.array() >= 0.0).all() &&
                        (weights.size() == 0 ||
                         (weights.array() + bias <= 1.0).all());
  if (feasible) return {bias, weights};

  double b;
  if (ReducedSlope(0.0, bias, weights) >= 0.0) {
    b = 0.0;
  } else if (ReducedSlope(1.0, bias, weights) <= 0.0) {
    b = 1.0;
  } else {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (ReducedSlope(mid, bias, weights) > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    // On the bracket the set of clipped weights is (generically) fixed, so the
    // slope is affine there and its root has a closed form.
    const double mid = 0.5 * (lo + hi);
    double active_sum = 0.0;
    int active = 0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      if (weights(i) + mid - 1.0 > 0.0) {
        active_sum += 1.0 - weights(i);
        ++active;
      }
    }
    const double exact = (bias + active_sum) / (1.0 + active);
    b = (exact >= lo - 1e-9 && exact <= hi + 1e-9) ? std::clamp(exact, 0.0, 1.0)
                                                    : mid;
  }

  BiasedRow out{b, weights};
  const double cap = 1.0 - b;
  for (Eigen::Index i = 0; i < out.weights.size(); ++i) {
    out.weights(i) = std::clamp(out.weights(i), 0.0, cap);
  }
  return out;
}

}  // namespace boundmf::projection
