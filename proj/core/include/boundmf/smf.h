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

#ifndef BOUNDMF_SMF_H_
#define BOUNDMF_SMF_H_

#include "boundmf/gradients.h"
#include "boundmf/types.h"

// Survival matrix factorization.
//
// Entry (d, n) is the probability that a Gaussian quality with mean w_d'z_n
// and shared spread sigma exceeds the item threshold gamma_n, i.e. the normal
// survival function at gamma_n. W, Z and gamma are unconstrained; sigma is
// kept at or above kSigmaMin.
namespace boundmf::smf {

// Gaussian density at u. Throws std::invalid_argument if sigma < kSigmaMin.
double NormalPdf(double u, double mu, double sigma);

// P(Q > gamma) for Q ~ N(mu, sigma^2), via the complementary error function
// so that both tails keep full relative precision.
double NormalSurvival(double gamma, double mu, double sigma);

double Predict(const FactorModel& model, int d, int n);

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp);

// Analytic gradient of the weighted per-entry loss (see EntryWeights) for the
// observed value `x` at (d, n). With mu = w_d'z_n, r = (gamma_n - mu)/sigma and
// phi the standard normal density:
//   d xhat / d mu    =  phi(r) / sigma
//   d xhat / d gamma = -phi(r) / sigma
//   d xhat / d sigma =  phi(r) r / sigma
EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights);

// Uniform (0,1) factors, zero thresholds and sigma = 1.
FactorModel Initialize(int rows, int cols, const Hyperparams& hp);

// Minibatch SGD on the regularized squared loss. Entries are reshuffled each
// epoch; sigma is clamped to kSigmaMin after every step.
FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer = {});

}  // namespace boundmf::smf

#endif  // BOUNDMF_SMF_H_
