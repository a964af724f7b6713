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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "boundmf/baselines.h"
#include "boundmf/predict.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace boundmf {
namespace {

FactorModel RandomModel(std::mt19937_64& rng, ModelKind kind, int rows, int cols,
                        int k) {
  std::normal_distribution<double> g(0.0, 0.7);
  auto vec = [&](int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
  };
  FactorModel m;
  m.kind = kind;
  m.W.resize(rows, k);
  m.Z.resize(cols, k);
  for (int i = 0; i < m.W.size(); ++i) m.W.data()[i] = g(rng);
  for (int i = 0; i < m.Z.size(); ++i) m.Z.data()[i] = g(rng);
  if (kind == ModelKind::kMF) {
    m.user_bias = vec(rows);
    m.item_bias = vec(cols);
    m.global_mean = 0.4;
  } else if (kind == ModelKind::kLMF) {
    m.user_bias = vec(rows);
    m.thresholds = vec(cols);
  }
  return m;
}

using GradientFn = EntryGradient (*)(double, const FactorModel&, int, int, double,
                                     double, const EntryWeights&);

void CheckGradients(ModelKind kind, testing::PredictFn predict, GradientFn gradient) {
  std::mt19937_64 rng(static_cast<int>(kind) + 100);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const FactorModel m = RandomModel(rng, kind, 3, 4, 3);
    const EntryWeights w{unit(rng) + 0.1, unit(rng), unit(rng)};
    const double x = unit(rng), lu = unit(rng), li = unit(rng);
    const EntryGradient g = gradient(x, m, 2, 1, lu, li, w);
    ASSERT_LT(testing::MaxGradientError(predict, m, x, 2, 1, lu, li, w, g), 1e-5)
        << ModelKindName(kind) << " instance " << t;
  }
}

TEST(GradientTest, MfMatchesFiniteDifferences) {
  CheckGradients(ModelKind::kMF, mf::Predict, mf::Gradient);
}
TEST(GradientTest, PmfMatchesFiniteDifferences) {
  CheckGradients(ModelKind::kPMF, pmf::Predict, pmf::Gradient);
}
TEST(GradientTest, LmfMatchesFiniteDifferences) {
  CheckGradients(ModelKind::kLMF, lmf::Predict, lmf::Gradient);
}

TEST(LmfTest, PredictKnownValue) {
  std::mt19937_64 rng(1);
  FactorModel m = RandomModel(rng, ModelKind::kLMF, 1, 1, 1);
  m.W.setZero();
  m.user_bias->setZero();
  m.thresholds->setZero();
  EXPECT_DOUBLE_EQ(lmf::Predict(m, 0, 0), 0.25);  // sigmoid(0)^2
}

TEST(MfTest, PredictKnownValue) {
  FactorModel m;
  m.kind = ModelKind::kMF;
  m.W = Eigen::MatrixXd::Constant(1, 1, 2.0);
  m.Z = Eigen::MatrixXd::Constant(1, 1, 0.25);
  m.user_bias = Eigen::VectorXd::Constant(1, 0.1);
  m.item_bias = Eigen::VectorXd::Constant(1, -0.2);
  m.global_mean = 0.6;
  EXPECT_DOUBLE_EQ(mf::Predict(m, 0, 0), 0.6 + 0.1 - 0.2 + 0.5);
}

TEST(MfTest, FitLowersObjectiveAndUnboundedAcceptsAnyValue) {
  std::mt19937_64 rng(3);
  const ObservedMatrix obs = testing::RandomObserved(rng, 10, 8, 0.5);
  Hyperparams hp;
  hp.k = 2;
  hp.max_epochs = 30;
  const FitResult fit = mf::Fit(obs, hp);
  EXPECT_LT(fit.report.objective_trajectory.back(), fit.report.initial_objective);
  double train_mean = 0.0;
  for (const Entry& e : obs.entries()) train_mean += e.value / obs.size();
  EXPECT_NEAR(*fit.model.global_mean, train_mean, 1e-12);

  std::vector<Entry> wide = {{0, 0, 3.0, 1}, {0, 1, -2.0, 1}, {1, 0, 4.5, 1}};
  const FitResult u = mf::FitUnbounded(2, 2, wide, hp);
  EXPECT_NEAR(*u.model.global_mean, (3.0 - 2.0 + 4.5) / 3.0, 1e-12);
}

TEST(NmfTest, NonnegativeAndMonotone) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const ObservedMatrix obs = testing::RandomObserved(rng, 12, 9, 0.4);
    Hyperparams hp;
    hp.k = 3;
    hp.lambda_u = hp.lambda_i = 0.01 * t;
    hp.max_epochs = 40;
    hp.seed = t;
    const FitResult fit = nmf::Fit(obs, hp, [](const FactorModel& m, int) {
      ASSERT_TRUE((m.W.array() >= 0.0).all() && (m.Z.array() >= 0.0).all());
    });
    double prev = fit.report.initial_objective;
    for (double obj : fit.report.objective_trajectory) {
      ASSERT_LE(obj, prev + 1e-10);
      prev = obj;
    }
    EXPECT_DOUBLE_EQ(prev, nmf::Objective(obs, fit.model, hp));
  }
}

TEST(BmfTest, InitializationTouchesUpperBound) {
  Hyperparams hp;
  hp.k = 3;
  const bmf::Bounds bounds{0.0, 0.8};
  const FactorModel m = bmf::Initialize(6, 5, hp, bounds);
  const Eigen::MatrixXd product = m.W * m.Z.transpose();
  EXPECT_NEAR(product.maxCoeff(), 0.8, 1e-12);
  EXPECT_GE(product.minCoeff(), 0.0);
}

TEST(BmfTest, DenseProductStaysInBoundsAfterEveryUpdate) {
  std::mt19937_64 rng(8);
  const ObservedMatrix obs = testing::RandomObserved(rng, 10, 8, 0.5);
  Hyperparams hp;
  hp.k = 3;
  hp.lambda_u = hp.lambda_i = 0.001;
  hp.max_epochs = 20;
  long updates = 0;
  const FitResult fit = bmf::Fit(obs, hp, {}, {}, [&](const FactorModel& m) {
    ++updates;
    const Eigen::MatrixXd p = m.W * m.Z.transpose();
    ASSERT_GE(p.minCoeff(), -1e-12);
    ASSERT_LE(p.maxCoeff(), 1.0 + 1e-12);
  });
  EXPECT_GT(updates, 0);
  EXPECT_LT(fit.report.objective_trajectory.back(), fit.report.initial_objective);
}

TEST(BmfTest, RejectsBoundsExcludingZero) {
  const ObservedMatrix obs(1, 1, {{0, 0, 0.5, 1}});
  EXPECT_THROW(bmf::Fit(obs, Hyperparams{}, bmf::Bounds{0.2, 1.0}),
               std::invalid_argument);
}

TEST(FitModelTest, EveryKindProducesValidModel) {
  std::mt19937_64 rng(10);
  const ObservedMatrix obs = testing::RandomObserved(rng, 8, 6, 0.5);
  Hyperparams hp;
  hp.k = 2;
  hp.max_epochs = 10;
  for (ModelKind kind : {ModelKind::kMF, ModelKind::kNMF, ModelKind::kBMF,
                         ModelKind::kPMF, ModelKind::kLMF, ModelKind::kEMF,
                         ModelKind::kSMF}) {
    const FitResult fit = FitModel(kind, obs, hp);
    EXPECT_EQ(fit.model.kind, kind);
    EXPECT_NO_THROW(ValidateModel(fit.model)) << ModelKindName(kind);
    const Eigen::MatrixXd dense = PredictDense(fit.model);
    EXPECT_GE(dense.minCoeff(), 0.0);
    EXPECT_LE(dense.maxCoeff(), 1.0);
    EXPECT_NEAR(ModelObjective(obs, fit.model, hp),
                fit.report.objective_trajectory.back(), 1e-9)
        << ModelKindName(kind);
  }
}

TEST(FitModelTest, BestOfKeepsLowestObjective) {
  std::mt19937_64 rng(12);
  const ObservedMatrix obs = testing::RandomObserved(rng, 8, 6, 0.5);
  Hyperparams hp;
  hp.k = 2;
  hp.max_epochs = 10;
  const FitResult one = FitBestOf(ModelKind::kEMF, obs, hp, 1);
  const FitResult single = FitModel(ModelKind::kEMF, obs, hp);
  EXPECT_EQ(one.model.W, single.model.W);
  const FitResult best = FitBestOf(ModelKind::kEMF, obs, hp, 4);
  EXPECT_LE(best.report.objective_trajectory.back(),
            one.report.objective_trajectory.back());
  EXPECT_THROW(FitBestOf(ModelKind::kEMF, obs, hp, 0), std::invalid_argument);
}

}  // namespace
}  // namespace boundmf
