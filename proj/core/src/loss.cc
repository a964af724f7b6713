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

#include "boundmf/loss.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boundmf {

double FrobeniusPenalty(const FactorModel& model, double lambda_u,
                        double lambda_i) {
  double user = model.W.squaredNorm();
  if (model.user_bias) user += model.user_bias->squaredNorm();
  double item = model.Z.squaredNorm();
  if (model.item_bias) item += model.item_bias->squaredNorm();
  return 0.5 * lambda_u * user + 0.5 * lambda_i * item;
}

double RegularizedSquaredLoss(const ObservedMatrix& observed,
                              std::span<const double> predictions,
                              const FactorModel& model, const Hyperparams& hp) {
  if (predictions.size() != observed.size()) {
    throw std::invalid_argument(
        "RegularizedSquaredLoss: expected one prediction per observed entry");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double r = observed[i].value - predictions[i];
    sse += r * r;
  }
  const double data =
      observed.empty() ? 0.0 : sse / (2.0 * static_cast<double>(observed.size()));
  return data + FrobeniusPenalty(model, hp.lambda_u, hp.lambda_i);
}

bool Converged(double loss_prev, double loss_curr, double rel_tolerance) {
  if (!(loss_curr > 0.0)) return true;
  // Same as (prev - curr) / curr < tol for curr > 0, without the rounding of
  // the subtraction: (1.000001, 1.0, 1e-6) sits exactly on the threshold.
  return loss_prev < loss_curr * (1.0 + rel_tolerance);
}

double Clamp01(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("Clamp01: non-finite input");
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace boundmf
