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

#ifndef BOUNDMF_LOSS_H_
#define BOUNDMF_LOSS_H_

#include <span>

#include "boundmf/types.h"

namespace boundmf {

// Mean squared residual over the observed entries plus Frobenius penalties:
//
//   1/(2|Omega|) sum (x - xhat)^2
//     + lambda_u/2 (|W|^2 + |user_bias|^2) + lambda_i/2 (|Z|^2 + |item_bias|^2)
//
// Bias terms contribute only when present in `model`. Thresholds and sigma are
// never penalized. `predictions[i]` pairs with `observed[i]`; a size mismatch
// (a missing prediction) throws std::invalid_argument.
double RegularizedSquaredLoss(const ObservedMatrix& observed,
                              std::span<const double> predictions,
                              const FactorModel& model, const Hyperparams& hp);

// Penalty part of RegularizedSquaredLoss alone.
double FrobeniusPenalty(const FactorModel& model, double lambda_u,
                        double lambda_i);

// Relative-decrease stopping rule: (prev - curr) / curr < rel_tolerance.
// A non-positive current loss counts as converged.
bool Converged(double loss_prev, double loss_curr, double rel_tolerance);

// Clamps a finite value into [0,1]; throws std::invalid_argument otherwise.
double Clamp01(double v);

}  // namespace boundmf

#endif  // BOUNDMF_LOSS_H_
