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

#ifndef BOUNDMF_SRC_ROW_QP_H_
#define BOUNDMF_SRC_ROW_QP_H_

#include <functional>

#include "Eigen/Dense"

namespace boundmf::internal {

// Convex quadratic 0.5 v'Hv - b'v + c arising from one row subproblem of an
// alternating scheme:
//
//   scale/2 * sum_i (y_i - a_i'v)^2 + lambda/2 |v|^2
struct RowQuadratic {
  Eigen::MatrixXd H;
  Eigen::VectorXd b;
  double c = 0.0;

  explicit RowQuadratic(int dim)
      : H(Eigen::MatrixXd::Zero(dim, dim)), b(Eigen::VectorXd::Zero(dim)) {}

  void AddObservation(const Eigen::VectorXd& a, double y, double scale) {
    H.selfadjointView<Eigen::Lower>().rankUpdate(a, scale);
    b.noalias() += scale * y * a;
    c += 0.5 * scale * y * y;
  }
  // Completes H from its lower triangle and adds the ridge term.
  void Finish(double lambda) {
    H.triangularView<Eigen::StrictlyUpper>() = H.transpose();
    H.diagonal().array() += lambda;
  }

  double Value(const Eigen::VectorXd& v) const {
    return 0.5 * v.dot(H * v) - b.dot(v) + c;
  }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& v) const { return H * v - b; }
};

using Projector = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct PgOptions {
  int max_iterations = 500;
  double rel_tolerance = 1e-8;
  double armijo = 1e-4;
  int max_backtracks = 60;
};

// Projected gradient descent from the feasible point `v` with Armijo
// backtracking (halving). Trial steps follow the Barzilai-Borwein rule. The
// objective never increases; returns the final point.
Eigen::VectorXd MinimizeProjected(const RowQuadratic& q, Eigen::VectorXd v,
                                  const Projector& project,
                                  const PgOptions& options = {});

}  // namespace boundmf::internal

#endif  // BOUNDMF_SRC_ROW_QP_H_
