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

#include "boundmf/predict.h"

#include <stdexcept>

#include "boundmf/baselines.h"
#include "boundmf/emf.h"
#include "boundmf/loss.h"
#include "boundmf/random.h"
#include "boundmf/smf.h"

namespace boundmf {

double PredictRaw(const FactorModel& model, int d, int n) {
  switch (model.kind) {
    case ModelKind::kEMF: return emf::PredictRaw(model, d, n);
    case ModelKind::kSMF: return smf::Predict(model, d, n);
    case ModelKind::kMF: return mf::Predict(model, d, n);
    case ModelKind::kLMF: return lmf::Predict(model, d, n);
    case ModelKind::kPMF:
    case ModelKind::kNMF:
    case ModelKind::kBMF: return pmf::Predict(model, d, n);
  }
  throw std::logic_error("PredictRaw: unknown model kind");
}

double PredictClamped(const FactorModel& model, int d, int n) {
  return Clamp01(PredictRaw(model, d, n));
}

Eigen::MatrixXd PredictDense(const FactorModel& model) {
  Eigen::MatrixXd out(model.rows(), model.cols());
  for (int d = 0; d < model.rows(); ++d)
    for (int n = 0; n < model.cols(); ++n) out(d, n) = PredictClamped(model, d, n);
  return out;
}

std::vector<double> PredictEntries(const FactorModel& model,
                                   std::span<const Entry> entries) {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(PredictClamped(model, e.row, e.col));
  return out;
}

FitResult FitModel(ModelKind kind, const ObservedMatrix& observed,
                   const Hyperparams& hp, const EpochObserver& observer) {
  switch (kind) {
    case ModelKind::kEMF: return emf::Fit(observed, hp, observer);
    case ModelKind::kSMF: return smf::Fit(observed, hp, observer);
    case ModelKind::kMF: return mf::Fit(observed, hp, observer);
    case ModelKind::kNMF: return nmf::Fit(observed, hp, observer);
    case ModelKind::kBMF: return bmf::Fit(observed, hp, {}, observer);
    case ModelKind::kPMF: return pmf::Fit(observed, hp, observer);
    case ModelKind::kLMF: return lmf::Fit(observed, hp, observer);
  }
  throw std::logic_error("FitModel: unknown model kind");
}

FitResult FitBestOf(ModelKind kind, const ObservedMatrix& observed,
                    const Hyperparams& hp, int restarts) {
  if (restarts < 1) throw std::invalid_argument("FitBestOf: restarts must be >= 1");
  auto final_objective = [](const FitResult& f) {
    return f.report.objective_trajectory.empty() ? f.report.initial_objective
                                                 : f.report.objective_trajectory.back();
  };
  FitResult best = FitModel(kind, observed, hp);
  const Rng seeds(hp.seed);
  for (int r = 1; r < restarts; ++r) {
    Hyperparams h = hp;
    h.seed = seeds.Split(static_cast<std::uint64_t>(r)).seed();
    FitResult candidate = FitModel(kind, observed, h);
    if (final_objective(candidate) < final_objective(best)) best = std::move(candidate);
  }
  return best;
}

double ModelObjective(const ObservedMatrix& observed, const FactorModel& model,
                      const Hyperparams& hp) {
  if (model.kind == ModelKind::kSMF) return smf::Objective(observed, model, hp);
  if (model.kind == ModelKind::kEMF) return emf::Objective(observed, model, hp);
  std::vector<double> predictions;
  predictions.reserve(observed.size());
  for (const Entry& e : observed.entries()) {
    predictions.push_back(PredictRaw(model, e.row, e.col));
  }
  return RegularizedSquaredLoss(observed, predictions, model, hp);
}

}  // namespace boundmf
