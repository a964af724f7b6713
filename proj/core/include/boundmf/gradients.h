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

#ifndef BOUNDMF_GRADIENTS_H_
#define BOUNDMF_GRADIENTS_H_

#include "Eigen/Dense"

namespace boundmf {

// Weights of the per-entry loss used by the SGD solvers:
//
//   loss/2 (xhat - x)^2 + user_penalty * lambda_u/2 (|w_d|^2 + b_d^2)
//                       + item_penalty * lambda_i/2 (|z_n|^2 + c_n^2)
//
// where the bias terms are present only for the kinds that carry them.
struct EntryWeights {
  double loss = 1.0;
  double user_penalty = 0.0;
  double item_penalty = 0.0;
};

// Partial derivatives of the per-entry loss. Members that the model kind does
// not have stay zero.
struct EntryGradient {
  Eigen::VectorXd w;
  Eigen::VectorXd z;
  double user_bias = 0.0;
  double item_bias = 0.0;
  double threshold = 0.0;
  double sigma = 0.0;
};

}  // namespace boundmf

#endif  // BOUNDMF_GRADIENTS_H_
