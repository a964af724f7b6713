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

#include "boundmf/smf.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundmf/loss.h"
#include "boundmf/random.h"
#include "sgd.h"
#include "training_loop.h"

namespace boundmf::smf {
namespace {

void CheckSigma(double sigma) {
  if (!(sigma >= kSigmaMin)) {
    throw std::invalid_argument("smf: sigma " + std::to_string(sigma) +
                                " below the floor");
  }
}

void CheckIndex(const FactorModel& model, int d, int n) {
  if (d < 0 || d >= model.rows() || n < 0 || n >= model.cols()) {
    throw std::out_of_range("smf: index (" + std::to_string(d) + ", " +
                            std::to_string(n) + ") out of range");
  }
}

// Standard normal density.
double Phi(double r) {
  return std::exp(-0.5 * r * r) * (0.5 * std::numbers::inv_sqrtpi *
                                   std::numbers::sqrt2);
}

double SurvivalUnchecked(double gamma, double mu, double sigma) {
  return 0.5 * std::erfc((gamma - mu) / (sigma * std::numbers::sqrt2));
}

}  // namespace

double NormalPdf(double u, double mu, double sigma) {
  CheckSigma(sigma);
  return Phi((u - mu) / sigma) / sigma;
}

double NormalSurvival(double gamma, double mu, double sigma) {
  CheckSigma(sigma);
  return SurvivalUnchecked(gamma, mu, sigma);
}

double Predict(const FactorModel& model, int d, int n) {
  CheckIndex(model, d, n);
  return NormalSurvival((*model.thresholds)(n), model.W.row(d).dot(model.Z.row(n)),
                        *model.sigma);
}

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp) {
  CheckSigma(*model.sigma);
  std::vector<double> predictions(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const Entry& e = observed[i];
    predictions[i] = SurvivalUnchecked((*model.thresholds)(e.col),
                                       model.W.row(e.row).dot(model.Z.row(e.col)),
                                       *model.sigma);
  }
  return RegularizedSquaredLoss(observed, predictions, model, hp);
}

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights) {
  CheckIndex(model, d, n);
  const double sigma = *model.sigma;
  CheckSigma(sigma);
  const double gamma = (*model.thresholds)(n);
  const double mu = model.W.row(d).dot(model.Z.row(n));
  const double r = (gamma - mu) / sigma;
  const double density = Phi(r) / sigma;
  const double e = (SurvivalUnchecked(gamma, mu, sigma) - x) * weights.loss;

  EntryGradient g;
  g.w = e * density * model.Z.row(n).transpose() +
        (lambda_u * weights.user_penalty) * model.W.row(d).transpose();
  g.z = e * density * model.W.row(d).transpose() +
        (lambda_i * weights.item_penalty) * model.Z.row(n).transpose();
  g.threshold = -e * density;
  g.sigma = e * density * r;
  return g;
}

FactorModel Initialize(int rows, int cols, const Hyperparams& hp) {
  Rng rng = Rng(hp.seed).Split(0);
  FactorModel model;
  model.kind = ModelKind::kSMF;
  model.W = internal::UniformMatrix(rng, rows, hp.k);
  model.Z = internal::UniformMatrix(rng, cols, hp.k);
  model.thresholds = Eigen::VectorXd::Zero(cols);
  model.sigma = 1.0;
  return model;
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer) {
  hp.Validate();
  internal::RequireNonEmpty(observed, "smf::Fit");
  const internal::MinibatchPlan plan(observed, hp.batch_size);
  Rng shuffle = Rng(hp.seed).Split(1);

  FitResult result;
  FactorModel& model = result.model;
  model = Initialize(observed.rows(), observed.cols(), hp);
  internal::ZeroUnobservedRows(plan.row_counts(), hp.lambda_u, model.W);
  internal::ZeroUnobservedRows(plan.col_counts(), hp.lambda_i, model.Z);

  Eigen::VectorXd& gamma = *model.thresholds;
  double& sigma = *model.sigma;
  std::vector<std::pair<const Entry*, EntryGradient>> pending;

  result.report = internal::RunEpochs(
      hp, model,
      [&](int) {
        plan.RunEpoch(shuffle, [&](std::span<const std::size_t> batch) {
          pending.clear();
          for (std::size_t i : batch) {
            const Entry& e = observed[i];
            pending.emplace_back(
                &e, Gradient(e.value, model, e.row, e.col, hp.lambda_u,
                             hp.lambda_i, plan.Weights(e, batch.size())));
          }
          double sigma_step = 0.0;
          for (const auto& [e, g] : pending) {
            model.W.row(e->row) -= hp.learning_rate * g.w.transpose();
            model.Z.row(e->col) -= hp.learning_rate * g.z.transpose();
            gamma(e->col) -= hp.learning_rate * g.threshold;
            sigma_step += g.sigma;
          }
          sigma = std::max(kSigmaMin, sigma - hp.learning_rate * sigma_step);
        });
      },
      [&] { return Objective(observed, model, hp); }, observer);
  return result;
}

}  // namespace boundmf::smf
