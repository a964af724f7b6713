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

#include "boundmf/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "boundmf/loss.h"
#include "boundmf/random.h"
#include "entry_index.h"
#include "row_qp.h"
#include "sgd.h"
#include "training_loop.h"

namespace boundmf {
namespace {

void CheckIndex(const FactorModel& model, int d, int n, const char* who) {
  if (d < 0 || d >= model.rows() || n < 0 || n >= model.cols()) {
    throw std::out_of_range(std::string(who) + ": index (" + std::to_string(d) +
                            ", " + std::to_string(n) + ") out of range");
  }
}

double Sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Regularized loss over raw entries; the values need not lie in [0,1].
template <typename PredictFn>
double EntriesObjective(std::span<const Entry> entries, const FactorModel& model,
                        const Hyperparams& hp, PredictFn&& predict) {
  double sse = 0.0;
  for (const Entry& e : entries) {
    const double r = e.value - predict(e.row, e.col);
    sse += r * r;
  }
  return sse / (2.0 * static_cast<double>(entries.size())) +
         FrobeniusPenalty(model, hp.lambda_u, hp.lambda_i);
}

// Applies one minibatch of gradients computed at the pre-batch parameters.
struct PendingStep {
  const Entry* entry;
  EntryGradient grad;
};

void ApplyStep(FactorModel& model, const std::vector<PendingStep>& pending,
               double lr) {
  for (const PendingStep& p : pending) {
    const int d = p.entry->row;
    const int n = p.entry->col;
    model.W.row(d) -= lr * p.grad.w.transpose();
    model.Z.row(n) -= lr * p.grad.z.transpose();
    if (model.user_bias) (*model.user_bias)(d) -= lr * p.grad.user_bias;
    if (model.item_bias) (*model.item_bias)(n) -= lr * p.grad.item_bias;
    if (model.thresholds) (*model.thresholds)(n) -= lr * p.grad.threshold;
  }
}

// Generic minibatch SGD driver shared by MF, PMF and LMF.
template <typename GradientFn, typename ObjectiveFn>
TrainReport RunSgd(int rows, int cols, std::span<const Entry> entries,
                   const Hyperparams& hp, FactorModel& model,
                   GradientFn&& gradient, ObjectiveFn&& objective,
                   const EpochObserver& observer) {
  const internal::MinibatchPlan plan(rows, cols, entries, hp.batch_size);
  internal::ZeroUnobservedRows(
      plan.row_counts(), hp.lambda_u, model.W,
      model.user_bias ? &*model.user_bias : nullptr);
  internal::ZeroUnobservedRows(
      plan.col_counts(), hp.lambda_i, model.Z,
      model.item_bias ? &*model.item_bias : nullptr);

  Rng shuffle = Rng(hp.seed).Split(1);
  std::vector<PendingStep> pending;
  return internal::RunEpochs(
      hp, model,
      [&](int) {
        plan.RunEpoch(shuffle, [&](std::span<const std::size_t> batch) {
          pending.clear();
          for (std::size_t i : batch) {
            const Entry& e = entries[i];
            pending.push_back(
                {&e, gradient(e.value, e.row, e.col,
                              plan.Weights(e, batch.size()))});
          }
          ApplyStep(model, pending, hp.learning_rate);
        });
      },
      std::forward<ObjectiveFn>(objective), observer);
}

FactorModel RandomFactors(ModelKind kind, int rows, int cols,
                          const Hyperparams& hp) {
  Rng rng = Rng(hp.seed).Split(0);
  FactorModel model;
  model.kind = kind;
  model.W = internal::UniformMatrix(rng, rows, hp.k);
  model.Z = internal::UniformMatrix(rng, cols, hp.k);
  return model;
}

double PlainDot(const FactorModel& model, int d, int n) {
  return model.W.row(d).dot(model.Z.row(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// MF

namespace mf {
namespace {

double PredictUnchecked(const FactorModel& model, int d, int n) {
  return *model.global_mean + (*model.user_bias)(d) + (*model.item_bias)(n) +
         PlainDot(model, d, n);
}

EntryGradient GradientUnchecked(double x, const FactorModel& model, int d,
                                int n, double lambda_u, double lambda_i,
                                const EntryWeights& weights) {
  const double e = (PredictUnchecked(model, d, n) - x) * weights.loss;
  const double pu = lambda_u * weights.user_penalty;
  const double pi = lambda_i * weights.item_penalty;
  EntryGradient g;
  g.w = e * model.Z.row(n).transpose() + pu * model.W.row(d).transpose();
  g.z = e * model.W.row(d).transpose() + pi * model.Z.row(n).transpose();
  g.user_bias = e + pu * (*model.user_bias)(d);
  g.item_bias = e + pi * (*model.item_bias)(n);
  return g;
}

FitResult FitEntries(int rows, int cols, std::span<const Entry> entries,
                     const Hyperparams& hp, const EpochObserver& observer) {
  hp.Validate();
  if (entries.empty()) {
    throw std::invalid_argument("mf::Fit: empty observation set");
  }
  double mean = 0.0;
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols ||
        !std::isfinite(e.value)) {
      throw std::invalid_argument("mf::Fit: invalid entry");
    }
    mean += e.value;
  }
  mean /= static_cast<double>(entries.size());

  FitResult result;
  FactorModel& model = result.model;
  model = RandomFactors(ModelKind::kMF, rows, cols, hp);
  model.user_bias = Eigen::VectorXd::Zero(rows);
  model.item_bias = Eigen::VectorXd::Zero(cols);
  model.global_mean = mean;

  result.report = RunSgd(
      rows, cols, entries, hp, model,
      [&](double x, int d, int n, const EntryWeights& w) {
        return GradientUnchecked(x, model, d, n, hp.lambda_u, hp.lambda_i, w);
      },
      [&] {
        return EntriesObjective(entries, model, hp, [&](int d, int n) {
          return PredictUnchecked(model, d, n);
        });
      },
      observer);
  return result;
}

}  // namespace

double Predict(const FactorModel& model, int d, int n) {
  CheckIndex(model, d, n, "mf::Predict");
  return PredictUnchecked(model, d, n);
}

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights) {
  CheckIndex(model, d, n, "mf::Gradient");
  return GradientUnchecked(x, model, d, n, lambda_u, lambda_i, weights);
}

FitResult FitUnbounded(int rows, int cols, std::span<const Entry> entries,
                       const Hyperparams& hp) {
  return FitEntries(rows, cols, entries, hp, {});
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer) {
  internal::RequireNonEmpty(observed, "mf::Fit");
  return FitEntries(observed.rows(), observed.cols(), observed.entries(), hp,
                    observer);
}

}  // namespace mf

// ---------------------------------------------------------------------------
// NMF

namespace nmf {
namespace {

Eigen::VectorXd NonNegative(const Eigen::VectorXd& v) {
  return v.cwiseMax(0.0);
}

void UpdateRows(const ObservedMatrix& observed,
                const std::vector<std::vector<std::size_t>>& groups,
                bool by_user, const Eigen::MatrixXd& fixed,
                Eigen::MatrixXd& free, double lambda) {
  const int k = static_cast<int>(free.cols());
  const double scale = 1.0 / static_cast<double>(observed.size());
  for (std::size_t r = 0; r < groups.size(); ++r) {
    internal::RowQuadratic q(k);
    for (std::size_t i : groups[r]) {
      const Entry& e = observed[i];
      const int other = by_user ? e.col : e.row;
      q.AddObservation(fixed.row(other).transpose(), e.value, scale);
    }
    q.Finish(lambda);
    const auto row = static_cast<Eigen::Index>(r);
    free.row(row) =
        internal::MinimizeProjected(q, free.row(row).transpose(), NonNegative)
            .transpose();
  }
}

}  // namespace

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp) {
  std::vector<double> predictions(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    predictions[i] = PlainDot(model, observed[i].row, observed[i].col);
  }
  return RegularizedSquaredLoss(observed, predictions, model, hp);
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer) {
  hp.Validate();
  internal::RequireNonEmpty(observed, "nmf::Fit");
  const internal::EntryIndex index(observed);

  FitResult result;
  FactorModel& model = result.model;
  model = RandomFactors(ModelKind::kNMF, observed.rows(), observed.cols(), hp);
  result.report = internal::RunEpochs(
      hp, model,
      [&](int) {
        UpdateRows(observed, index.by_row, true, model.Z, model.W, hp.lambda_u);
        UpdateRows(observed, index.by_col, false, model.W, model.Z,
                   hp.lambda_i);
      },
      [&] { return Objective(observed, model, hp); }, observer);
  return result;
}

}  // namespace nmf

// ---------------------------------------------------------------------------
// BMF

namespace bmf {
namespace {

void CheckBounds(Bounds bounds) {
  if (!(bounds.x_min < bounds.x_max) || !(bounds.x_max > 0.0) ||
      !(bounds.x_min <= 0.0)) {
    // Nonnegative factors can only reach a product range containing zero.
    throw std::invalid_argument("bmf: bounds must satisfy x_min <= 0 < x_max");
  }
}

// One coordinate of the "free" factor matrix: minimizes
//   scale/2 sum_{i in group} (x_i - base_i - v f_i)^2 + lambda/2 v^2
// over v >= 0 with every dense entry base_j + v f_j inside the bounds.
// `dense` holds the current product row (or column) for the free index.
double CoordinateStep(double current, std::span<const std::size_t> group,
                      const ObservedMatrix& observed, bool by_user,
                      const Eigen::MatrixXd& fixed, int k,
                      const Eigen::Ref<const Eigen::VectorXd>& dense,
                      double scale, double lambda, Bounds bounds) {
  double num = 0.0;
  double den = lambda;
  for (std::size_t i : group) {
    const Entry& e = observed[i];
    const int other = by_user ? e.col : e.row;
    const double f = fixed(other, k);
    const double base = dense(other) - current * f;
    num += scale * f * (e.value - base);
    den += scale * f * f;
  }
  double target = den > 0.0 ? num / den : current;

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < dense.size(); ++j) {
    const double f = fixed(j, k);
    if (f <= 0.0) continue;
    const double base = dense(j) - current * f;
    hi = std::min(hi, (bounds.x_max - base) / f);
    lo = std::max(lo, (bounds.x_min - base) / f);
  }
  if (lo > hi) return current;
  return std::clamp(target, lo, hi);
}

void Sweep(const ObservedMatrix& observed,
           const std::vector<std::vector<std::size_t>>& groups, bool by_user,
           FactorModel& model, Eigen::MatrixXd& product, double lambda,
           Bounds bounds, const UpdateObserver& on_update) {
  Eigen::MatrixXd& free = by_user ? model.W : model.Z;
  const Eigen::MatrixXd& fixed = by_user ? model.Z : model.W;
  const double scale = 1.0 / static_cast<double>(observed.size());
  for (Eigen::Index r = 0; r < free.rows(); ++r) {
    for (int k = 0; k < free.cols(); ++k) {
      const double current = free(r, k);
      const double next =
          by_user
              ? CoordinateStep(current, groups[r], observed, true, fixed, k,
                               product.row(r).transpose(), scale, lambda,
                               bounds)
              : CoordinateStep(current, groups[r], observed, false, fixed, k,
                               product.col(r), scale, lambda, bounds);
      if (next != current) {
        free(r, k) = next;
        if (by_user) {
          product.row(r) += (next - current) * fixed.col(k).transpose();
        } else {
          product.col(r) += (next - current) * fixed.col(k);
        }
      }
      if (on_update) on_update(model);
    }
  }
  // Resynchronize to avoid drift from the incremental updates.
  product.noalias() = model.W * model.Z.transpose();
}

}  // namespace

FactorModel Initialize(int rows, int cols, const Hyperparams& hp,
                       Bounds bounds) {
  CheckBounds(bounds);
  FactorModel model = RandomFactors(ModelKind::kBMF, rows, cols, hp);
  const double peak = (model.W * model.Z.transpose()).maxCoeff();
  const double s = std::sqrt(bounds.x_max / peak);
  model.W *= s;
  model.Z *= s;
  return model;
}

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp) {
  std::vector<double> predictions(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    predictions[i] = PlainDot(model, observed[i].row, observed[i].col);
  }
  return RegularizedSquaredLoss(observed, predictions, model, hp);
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              Bounds bounds, const EpochObserver& observer,
              const UpdateObserver& on_update) {
  hp.Validate();
  internal::RequireNonEmpty(observed, "bmf::Fit");
  const internal::EntryIndex index(observed);

  FitResult result;
  FactorModel& model = result.model;
  model = Initialize(observed.rows(), observed.cols(), hp, bounds);
  Eigen::MatrixXd product = model.W * model.Z.transpose();

  result.report = internal::RunEpochs(
      hp, model,
      [&](int) {
        Sweep(observed, index.by_row, true, model, product, hp.lambda_u,
              bounds, on_update);
        Sweep(observed, index.by_col, false, model, product, hp.lambda_i,
              bounds, on_update);
      },
      [&] { return Objective(observed, model, hp); }, observer);
  return result;
}

}  // namespace bmf

// ---------------------------------------------------------------------------
// PMF

namespace pmf {
namespace {

EntryGradient GradientUnchecked(double x, const FactorModel& model, int d,
                                int n, double lambda_u, double lambda_i,
                                const EntryWeights& weights) {
  const double e = (PlainDot(model, d, n) - x) * weights.loss;
  EntryGradient g;
  g.w = e * model.Z.row(n).transpose() +
        (lambda_u * weights.user_penalty) * model.W.row(d).transpose();
  g.z = e * model.W.row(d).transpose() +
        (lambda_i * weights.item_penalty) * model.Z.row(n).transpose();
  return g;
}

}  // namespace

double Predict(const FactorModel& model, int d, int n) {
  CheckIndex(model, d, n, "pmf::Predict");
  return PlainDot(model, d, n);
}

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights) {
  CheckIndex(model, d, n, "pmf::Gradient");
  return GradientUnchecked(x, model, d, n, lambda_u, lambda_i, weights);
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer) {
  hp.Validate();
  internal::RequireNonEmpty(observed, "pmf::Fit");
  FitResult result;
  FactorModel& model = result.model;
  model = RandomFactors(ModelKind::kPMF, observed.rows(), observed.cols(), hp);
  result.report = RunSgd(
      observed.rows(), observed.cols(), observed.entries(), hp, model,
      [&](double x, int d, int n, const EntryWeights& w) {
        return GradientUnchecked(x, model, d, n, hp.lambda_u, hp.lambda_i, w);
      },
      [&] {
        return EntriesObjective(observed.entries(), model, hp,
                                [&](int d, int n) {
                                  return PlainDot(model, d, n);
                                });
      },
      observer);
  return result;
}

}  // namespace pmf

// ---------------------------------------------------------------------------
// LMF

namespace lmf {
namespace {

double PredictUnchecked(const FactorModel& model, int d, int n) {
  return Sigmoid((*model.thresholds)(n)) *
         Sigmoid((*model.user_bias)(d) + PlainDot(model, d, n));
}

EntryGradient GradientUnchecked(double x, const FactorModel& model, int d,
                                int n, double lambda_u, double lambda_i,
                                const EntryWeights& weights) {
  const double accept = Sigmoid((*model.thresholds)(n));
  const double good = Sigmoid((*model.user_bias)(d) + PlainDot(model, d, n));
  const double e = (accept * good - x) * weights.loss;
  const double inner = e * accept * good * (1.0 - good);
  const double pu = lambda_u * weights.user_penalty;
  EntryGradient g;
  g.w = inner * model.Z.row(n).transpose() + pu * model.W.row(d).transpose();
  g.z = inner * model.W.row(d).transpose() +
        (lambda_i * weights.item_penalty) * model.Z.row(n).transpose();
  g.user_bias = inner + pu * (*model.user_bias)(d);
  g.threshold = e * accept * (1.0 - accept) * good;
  return g;
}

}  // namespace

double Predict(const FactorModel& model, int d, int n) {
  CheckIndex(model, d, n, "lmf::Predict");
  return PredictUnchecked(model, d, n);
}

EntryGradient Gradient(double x, const FactorModel& model, int d, int n,
                       double lambda_u, double lambda_i,
                       const EntryWeights& weights) {
  CheckIndex(model, d, n, "lmf::Gradient");
  return GradientUnchecked(x, model, d, n, lambda_u, lambda_i, weights);
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer) {
  hp.Validate();
  internal::RequireNonEmpty(observed, "lmf::Fit");
  FitResult result;
  FactorModel& model = result.model;
  model = RandomFactors(ModelKind::kLMF, observed.rows(), observed.cols(), hp);
  model.user_bias = Eigen::VectorXd::Zero(observed.rows());
  model.thresholds = Eigen::VectorXd::Zero(observed.cols());
  result.report = RunSgd(
      observed.rows(), observed.cols(), observed.entries(), hp, model,
      [&](double x, int d, int n, const EntryWeights& w) {
        return GradientUnchecked(x, model, d, n, hp.lambda_u, hp.lambda_i, w);
      },
      [&] {
        return EntriesObjective(observed.entries(), model, hp,
                                [&](int d, int n) {
                                  return PredictUnchecked(model, d, n);
                                });
      },
      observer);
  return result;
}

}  // namespace lmf

}  // namespace boundmf
