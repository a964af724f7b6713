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

#ifndef BOUNDMF_PREDICT_H_
#define BOUNDMF_PREDICT_H_

#include <span>
#include <vector>

#include "Eigen/Dense"
#include "boundmf/types.h"

namespace boundmf {

// Model prediction for (d, n) according to `model.kind`, without clamping.
double PredictRaw(const FactorModel& model, int d, int n);

// Evaluation-time prediction: PredictRaw clamped to [0,1]. For EMF, SMF, LMF
// and BMF this is the identity up to rounding; MF, PMF and NMF rely on it.
double PredictClamped(const FactorModel& model, int d, int n);

// Dense D x N matrix of evaluation-time predictions.
Eigen::MatrixXd PredictDense(const FactorModel& model);

// Evaluation-time predictions for the given entries, in order.
std::vector<double> PredictEntries(const FactorModel& model,
                                   std::span<const Entry> entries);

// Fits `kind` on `observed`. Dispatches to the per-kind solvers.
FitResult FitModel(ModelKind kind, const ObservedMatrix& observed,
                   const Hyperparams& hp, const EpochObserver& observer = {});

// Fits `kind` from `restarts` random initializations and keeps the fit with
// the lowest final training objective (earliest on ties). Restart 0 uses
// hp.seed, so restarts == 1 is FitModel.
FitResult FitBestOf(ModelKind kind, const ObservedMatrix& observed,
                    const Hyperparams& hp, int restarts);

// Full training objective of `model` on `observed`.
double ModelObjective(const ObservedMatrix& observed, const FactorModel& model,
                      const Hyperparams& hp);

}  // namespace boundmf

#endif  // BOUNDMF_PREDICT_H_
