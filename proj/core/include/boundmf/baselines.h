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

#ifndef BOUNDMF_BASELINES_H_
#define BOUNDMF_BASELINES_H_

#include <functional>
#include <span>

#include "boundmf/gradients.h"
#include "boundmf/types.h"

// Comparison factorizations: biased MF, NMF, bounded MF, PMF and a
// product-of-sigmoids logistic MF. MF and PMF predictions are unbounded and
// get clamped to [0,1] at evaluation time (see predict.h).

// Biased matrix factorization: m + b_d + c_n + w_d'z_n, trained by minibatch
// SGD with m fixed to the training mean.
namespace boundmf::mf {

double Predict(const FactorModel& model, int d, int n);

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights);

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer = {});

// Same solver on entries whose values may lie anywhere on the real line
// (support is ignored). Used for transformed-target experiments.
FitResult FitUnbounded(int rows, int cols, std::span<const Entry> entries,
                       const Hyperparams& hp);

}  // namespace boundmf::mf

// Nonnegative MF by alternating projected gradient on the masked loss.
namespace boundmf::nmf {

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp);

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer = {});

}  // namespace boundmf::nmf

// Bounded MF: nonnegative factors whose dense product stays inside
// [x_min, x_max] after every coordinate update.
namespace boundmf::bmf {

// Called after every scalar coordinate update.
using UpdateObserver = std::function<void(const FactorModel& model)>;

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
};

// Uniform (0,1) factors, both scaled by sqrt(x_max / max(W Z')) so that the
// largest entry of the product equals x_max.
FactorModel Initialize(int rows, int cols, const Hyperparams& hp,
                       Bounds bounds = {});

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp);

// Cyclic coordinate descent. Each scalar update is the exact minimizer of the
// regularized loss over the interval that keeps w >= 0 (resp. z >= 0) and
// every affected dense entry within the bounds.
FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              Bounds bounds = {}, const EpochObserver& observer = {},
              const UpdateObserver& on_update = {});

}  // namespace boundmf::bmf

// Probabilistic MF (MAP estimate): w_d'z_n with Gaussian priors on W and Z.
namespace boundmf::pmf {

double Predict(const FactorModel& model, int d, int n);

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights);

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer = {});

}  // namespace boundmf::pmf

// Logistic MF on explicit data:
//   xhat = sigmoid(gamma_n) * sigmoid(b_d + w_d'z_n)
// trained on squared error by minibatch SGD.
namespace boundmf::lmf {

double Predict(const FactorModel& model, int d, int n);

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights);

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer = {});

}  // namespace boundmf::lmf

#endif  // BOUNDMF_BASELINES_H_
