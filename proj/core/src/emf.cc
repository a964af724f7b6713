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

#include "boundmf/emf.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundmf/loss.h"
#include "boundmf/projection.h"
#include "boundmf/random.h"
#include "entry_index.h"
#include "row_qp.h"
#include "training_loop.h"

namespace boundmf::emf {
namespace {

void CheckIndex(const FactorModel& model, int d, int n) {
  if (d < 0 || d >= model.rows() || n < 0 || n >= model.cols()) {
    throw std::out_of_range("emf::Predict: index (" + std::to_string(d) + ", " +
                            std::to_string(n) + ") out of range");
  }
}

double RawValue(const Eigen::MatrixXd& W, const Eigen::VectorXd& bias,
                const Eigen::MatrixXd& Z, int d, int n) {
  return ((W.row(d).array() + bias(d)) * Z.row(n).array()).sum();
}

internal::Projector BiasedRowProjector() {
  return [](const Eigen::VectorXd& v) {
    const int k = static_cast<int>(v.size()) - 1;
    const projection::BiasedRow p =
        projection::ProjectBiasedRow(v(0), v.tail(k));
    Eigen::VectorXd out(v.size());
    out(0) = p.bias;
    out.tail(k) = p.weights;
    return out;
  };
}

internal::Projector SimplexProjector() {
  return [](const Eigen::VectorXd& v) { return projection::ProjectSimplex(v); };
}

UserBlock UpdateUsers(const ObservedMatrix& observed,
                      const internal::EntryIndex& index,
                      const Eigen::MatrixXd& Z, UserBlock block,
                      const Hyperparams& hp) {
  const int k = static_cast<int>(Z.cols());
  const double scale = 1.0 / static_cast<double>(observed.size());
  const internal::Projector project = BiasedRowProjector();
  Eigen::VectorXd a(k + 1);
  Eigen::VectorXd v(k + 1);
  for (int d = 0; d < observed.rows(); ++d) {
    internal::RowQuadratic q(k + 1);
    for (std::size_t i : index.by_row[d]) {
      const Entry& e = observed[i];
      a(0) = 1.0;
      a.tail(k) = Z.row(e.col).transpose();
      q.AddObservation(a, e.value, scale);
    }
    q.Finish(hp.lambda_u);
    v(0) = block.bias(d);
    v.tail(k) = block.W.row(d).transpose();
    v = internal::MinimizeProjected(q, v, project);
    block.bias(d) = v(0);
    block.W.row(d) = v.tail(k).transpose();
  }
  return block;
}

Eigen::MatrixXd UpdateItems(const ObservedMatrix& observed,
                            const internal::EntryIndex& index,
                            const Eigen::MatrixXd& W,
                            const Eigen::VectorXd& bias, Eigen::MatrixXd Z,
                            const Hyperparams& hp) {
  const int k = static_cast<int>(Z.cols());
  const double scale = 1.0 / static_cast<double>(observed.size());
  const internal::Projector project = SimplexProjector();
  for (int n = 0; n < observed.cols(); ++n) {
    internal::RowQuadratic q(k);
    for (std::size_t i : index.by_col[n]) {
      const Entry& e = observed[i];
      q.AddObservation(W.row(e.row).transpose(), e.value - bias(e.row), scale);
    }
    q.Finish(hp.lambda_i);
    Z.row(n) = internal::MinimizeProjected(q, Z.row(n).transpose(), project)
                   .transpose();
  }
  return Z;
}

void CheckShapes(const ObservedMatrix& observed, const Eigen::MatrixXd& W,
                 const Eigen::VectorXd& bias, const Eigen::MatrixXd& Z) {
  if (W.rows() != observed.rows() || bias.size() != observed.rows() ||
      Z.rows() != observed.cols() || W.cols() != Z.cols()) {
    throw std::invalid_argument("emf: factor shapes do not match the matrix");
  }
}

}  // namespace

double PredictRaw(const FactorModel& model, int d, int n) {
  CheckIndex(model, d, n);
  return RawValue(model.W, *model.user_bias, model.Z, d, n);
}

double Predict(const FactorModel& model, int d, int n) {
  return std::clamp(PredictRaw(model, d, n), 0.0, 1.0);
}

double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp) {
  std::vector<double> predictions(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    predictions[i] = RawValue(model.W, *model.user_bias, model.Z,
                              observed[i].row, observed[i].col);
  }
  return RegularizedSquaredLoss(observed, predictions, model, hp);
}

UserBlock UpdateUserBlock(const ObservedMatrix& observed,
                          const Eigen::MatrixXd& Z, UserBlock current,
                          const Hyperparams& hp) {
  CheckShapes(observed, current.W, current.bias, Z);
  return UpdateUsers(observed, internal::EntryIndex(observed), Z,
                     std::move(current), hp);
}

Eigen::MatrixXd UpdateItemBlock(const ObservedMatrix& observed,
                                const Eigen::MatrixXd& W,
                                const Eigen::VectorXd& bias, Eigen::MatrixXd Z,
                                const Hyperparams& hp) {
  CheckShapes(observed, W, bias, Z);
  return UpdateItems(observed, internal::EntryIndex(observed), W, bias,
                     std::move(Z), hp);
}

FactorModel Initialize(int rows, int cols, const Hyperparams& hp) {
  Rng rng(hp.seed);
  FactorModel model;
  model.kind = ModelKind::kEMF;
  model.W.resize(rows, hp.k);
  model.Z.resize(cols, hp.k);
  for (int d = 0; d < rows; ++d)
    for (int k = 0; k < hp.k; ++k) model.W(d, k) = rng.Uniform();
  for (int n = 0; n < cols; ++n)
    for (int k = 0; k < hp.k; ++k) model.Z(n, k) = rng.Uniform();
  model.user_bias = Eigen::VectorXd::Zero(rows);

  for (int d = 0; d < rows; ++d) {
    const projection::BiasedRow p = projection::ProjectBiasedRow(
        (*model.user_bias)(d), model.W.row(d).transpose());
    (*model.user_bias)(d) = p.bias;
    model.W.row(d) = p.weights.transpose();
  }
  for (int n = 0; n < cols; ++n) {
    model.Z.row(n) =
        projection::ProjectSimplex(model.Z.row(n).transpose()).transpose();
  }
  return model;
}

FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer) {
  hp.Validate();
  internal::RequireNonEmpty(observed, "emf::Fit");
  const internal::EntryIndex index(observed);

  FitResult result;
  FactorModel& model = result.model;
  model = Initialize(observed.rows(), observed.cols(), hp);

  result.report = internal::RunEpochs(
      hp, model,
      [&](int) {
        UserBlock users = UpdateUsers(
            observed, index, model.Z,
            UserBlock{std::move(model.W), std::move(*model.user_bias)}, hp);
        model.W = std::move(users.W);
        model.user_bias = std::move(users.bias);
        model.Z = UpdateItems(observed, index, model.W, *model.user_bias,
                              std::move(model.Z), hp);
      },
      [&] { return Objective(observed, model, hp); }, observer);
  return result;
}

}  // namespace boundmf::emf
