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

#ifndef BOUNDMF_PROJECTION_H_
#define BOUNDMF_PROJECTION_H_

#include "Eigen/Dense"

namespace boundmf::projection {

// Euclidean projection onto the probability simplex {u >= 0, sum u = 1}.
//
// Sort-based O(K log K) algorithm: with v sorted in decreasing order, the
// support size is the largest j such that v_(j) + (1 - sum_{i<=j} v_(i)) / j
// is positive, and the output is max(v + tau, 0) for the matching shift tau.
// Throws std::invalid_argument for empty or non-finite input.
Eigen::VectorXd ProjectSimplex(const Eigen::VectorXd& v);

struct BiasedRow {
  double bias = 0.0;
  Eigen::VectorXd weights;
};

// Euclidean projection of (bias, weights) onto
//   { bias >= 0, weights >= 0, bias + weights_k <= 1 for all k }.
//
// For a fixed bias the optimal weights are clamp(w_k, 0, 1 - bias), which
// leaves a strictly convex one-dimensional problem in the bias whose
// derivative 2 (b - b0) + 2 sum_k max(0, w_k + b - 1) is continuous and
// increasing on [0,1]. The derivative root is bracketed by bisection to 1e-10
// and then solved in closed form on the bracketed active set.
// Throws std::invalid_argument for non-finite input.
BiasedRow ProjectBiasedRow(double bias, const Eigen::VectorXd& weights);

}  // namespace boundmf::projection

#endif  // BOUNDMF_PROJECTION_H_
