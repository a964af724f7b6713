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

// Worked input/output examples for each module that are not already covered
// by the per-module suites.

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "boundmf/baselines.h"
#include "boundmf/emf.h"
#include "boundmf/eval.h"
#include "boundmf/ingest.h"
#include "boundmf/loss.h"
#include "boundmf/predict.h"
#include "boundmf/projection.h"
#include "boundmf/smf.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace boundmf {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(xs.size());
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

ObservedMatrix Constant(int rows, int cols, double value) {
  std::vector<Entry> entries;
  for (int d = 0; d < rows; ++d)
    for (int n = 0; n < cols; ++n) entries.push_back({d, n, value, 1});
  return ObservedMatrix(rows, cols, entries);
}

// x_dn = u_d v_n with u, v ~ U(0,1); `density` of the cells revealed.
ingest::SyntheticData RankOne(int rows, int cols, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FactorModel truth;
  truth.kind = ModelKind::kPMF;
  truth.W.resize(rows, 1);
  truth.Z.resize(cols, 1);
  for (int d = 0; d < rows; ++d) truth.W(d, 0) = unit(rng);
  for (int n = 0; n < cols; ++n) truth.Z(n, 0) = unit(rng);
  std::vector<Entry> entries;
  for (int d = 0; d < rows; ++d)
    for (int n = 0; n < cols; ++n)
      if (unit(rng) < density) entries.push_back({d, n, truth.W(d, 0) * truth.Z(n, 0), 1});
  return {ObservedMatrix(rows, cols, entries), truth};
}

TEST(LossExamples, DirectArithmetic) {
  FactorModel m;
  m.kind = ModelKind::kPMF;
  m.W = Eigen::MatrixXd::Constant(1, 1, 2.0);
  m.Z = Eigen::MatrixXd::Zero(1, 1);
  const ObservedMatrix one(1, 1, {{0, 0, 1.0, 1}});
  Hyperparams hp;
  const std::vector<double> perfect = {1.0}, zero = {0.0};
  EXPECT_EQ(RegularizedSquaredLoss(one, perfect, m, hp), 0.0);
  EXPECT_DOUBLE_EQ(RegularizedSquaredLoss(one, zero, m, hp), 0.5);
  hp.lambda_u = 1.0;
  EXPECT_DOUBLE_EQ(RegularizedSquaredLoss(one, perfect, m, hp), 2.0);
}

TEST(LossExamples, ConvergenceThreshold) {
  EXPECT_TRUE(Converged(1.0, 1.0, 1e-6));
  EXPECT_FALSE(Converged(1.0, 0.5, 1e-6));
  EXPECT_FALSE(Converged(1.000001, 1.0, 1e-6));
  EXPECT_TRUE(Converged(1.0000005, 1.0, 1e-6));
  EXPECT_EQ(Clamp01(0.5), 0.5);
  EXPECT_EQ(Clamp01(-0.2), 0.0);
  EXPECT_EQ(Clamp01(1.7), 1.0);
}

TEST(ProjectionExamples, BiasedRow) {
  const projection::BiasedRow same = projection::ProjectBiasedRow(0.5, Vec({0.3, 0.4}));
  EXPECT_EQ(same.bias, 0.5);
  EXPECT_EQ(same.weights, Vec({0.3, 0.4}));
  const projection::BiasedRow clamp = projection::ProjectBiasedRow(-1.0, Vec({-1.0}));
  EXPECT_EQ(clamp.bias, 0.0);
  EXPECT_EQ(clamp.weights(0), 0.0);
  EXPECT_EQ(projection::ProjectSimplex(Vec({3.5}))(0), 1.0);
}

FactorModel EmfModel(double bias, Eigen::VectorXd w, Eigen::VectorXd z) {
  FactorModel m;
  m.kind = ModelKind::kEMF;
  m.W = w.transpose();
  m.Z = z.transpose();
  m.user_bias = Vec({bias});
  return m;
}

TEST(EmfExamples, Predictions) {
  EXPECT_NEAR(emf::Predict(EmfModel(0.0, Vec({1, 1, 1}), Vec({0.2, 0.5, 0.3})), 0, 0), 1.0, 1e-15);
  EXPECT_EQ(emf::Predict(EmfModel(0.0, Vec({0, 0}), Vec({0.4, 0.6})), 0, 0), 0.0);
  EXPECT_NEAR(emf::Predict(EmfModel(0.2, Vec({0.1, 0.3}), Vec({0.5, 0.5})), 0, 0), 0.4, 1e-15);
}

TEST(EmfExamples, SingleEntryUserBlockReachesZeroLoss) {
  const ObservedMatrix obs(1, 1, {{0, 0, 1.0, 1}});
  Hyperparams hp;
  hp.k = 1;
  const emf::UserBlock out = emf::UpdateUserBlock(
      obs, Eigen::MatrixXd::Ones(1, 1), {Eigen::MatrixXd::Constant(1, 1, 0.3), Vec({0.1})}, hp);
  EXPECT_NEAR(out.bias(0) + out.W(0, 0), 1.0, 1e-6);
  // Closest point of the face b + w = 1 to (0.1, 0.3) is (0.4, 0.6).
  EXPECT_NEAR(out.bias(0), 0.4, 1e-4);
}

TEST(EmfExamples, ItemBlockEdgeCases) {
  // Column 1 is never observed: with lambda_i > 0 it goes to the centroid.
  const ObservedMatrix obs(2, 2, {{0, 0, 0.9, 1}, {1, 0, 0.2, 1}});
  Hyperparams hp;
  hp.k = 3;
  hp.lambda_i = 0.1;
  Eigen::MatrixXd W(2, 3);
  W << 0.9, 0.1, 0.5, 0.2, 0.7, 0.3;
  Eigen::MatrixXd Z(2, 3);
  Z << 1.0, 0.0, 0.0, 0.7, 0.2, 0.1;
  const Eigen::MatrixXd out = emf::UpdateItemBlock(obs, W, Vec({0.0, 0.1}), Z, hp);
  EXPECT_TRUE(out.row(1).isApprox(Eigen::RowVectorXd::Constant(3, 1.0 / 3.0), 1e-6));

  hp.k = 1;
  const Eigen::MatrixXd one = emf::UpdateItemBlock(
      obs, Eigen::MatrixXd::Constant(2, 1, 0.5), Vec({0.1, 0.2}), Eigen::MatrixXd::Ones(2, 1), hp);
  EXPECT_EQ(one, Eigen::MatrixXd::Ones(2, 1));
}

TEST(EmfExamples, ItemBlockMatchesLineSearch) {
  // 4 x 1 column, K = 2: brute force over z = (t, 1 - t).
  const ObservedMatrix obs(4, 1, {{0, 0, 0.9, 1}, {1, 0, 0.1, 1}, {2, 0, 0.5, 1}, {3, 0, 0.7, 1}});
  Hyperparams hp;
  hp.k = 2;
  hp.lambda_i = 0.01;
  Eigen::MatrixXd W(4, 2);
  W << 0.8, 0.1, 0.0, 0.4, 0.5, 0.5, 0.3, 0.6;
  const Eigen::VectorXd bias = Vec({0.1, 0.0, 0.2, 0.3});
  const Eigen::MatrixXd Z = emf::UpdateItemBlock(obs, W, bias, Eigen::MatrixXd::Constant(1, 2, 0.5), hp);
  FactorModel m;
  m.kind = ModelKind::kEMF;
  m.W = W;
  m.user_bias = bias;
  m.Z = Z;
  const double ours = emf::Objective(obs, m, hp);
  double best = INFINITY;
  for (int i = 0; i <= 100000; ++i) {
    const double t = i * 1e-5;
    m.Z << t, 1.0 - t;
    best = std::min(best, emf::Objective(obs, m, hp));
  }
  EXPECT_LE(ours, best + 1e-6);
}

TEST(EmfExamples, ConstantHalfMatrix) {
  const ObservedMatrix obs = Constant(2, 2, 0.5);
  Hyperparams hp;
  hp.k = 1;
  hp.rel_tolerance = 1e-12;
  hp.max_epochs = 200;
  const FitResult fit = emf::Fit(obs, hp);
  EXPECT_LE(fit.report.objective_trajectory.back(), 1e-8);
  for (const Entry& e : obs.entries()) {
    EXPECT_NEAR(emf::Predict(fit.model, e.row, e.col), 0.5, 1e-4);
  }
}

TEST(SmfExamples, DensityAndSurvival) {
  EXPECT_NEAR(smf::NormalPdf(0.0, 0.0, 1.0), 0.3989422804, 1e-10);
  EXPECT_NEAR(smf::NormalPdf(1.5, 1.5, 0.25), 1.0 / (0.25 * std::sqrt(2.0 * M_PI)), 1e-14);
  EXPECT_EQ(smf::NormalSurvival(0.7, 0.7, 2.0), 0.5);
  EXPECT_NEAR(smf::NormalSurvival(0.0, 1.0, 1.0), 0.8413447461, 1e-10);
  const double tail = smf::NormalSurvival(10.0, 0.0, 1.0);
  EXPECT_GT(tail, 0.0);
  EXPECT_LT(tail, 1e-20);
}

FactorModel SmfModel(double w, double z, double gamma, double sigma) {
  FactorModel m;
  m.kind = ModelKind::kSMF;
  m.W = Eigen::MatrixXd::Constant(1, 1, w);
  m.Z = Eigen::MatrixXd::Constant(1, 1, z);
  m.thresholds = Vec({gamma});
  m.sigma = sigma;
  return m;
}

TEST(SmfExamples, PredictionsAndZeroGradients) {
  EXPECT_EQ(smf::Predict(SmfModel(0.5, 0.8, 0.4, 1.0), 0, 0), 0.5);
  EXPECT_NEAR(smf::Predict(SmfModel(0.6, 1.0, 0.1, 1.0), 0, 0), 0.6914624613, 1e-10);
  EXPECT_NEAR(smf::Predict(SmfModel(1e3, 1.0, 0.1, 1.0), 0, 0), 1.0, 1e-15);

  const FactorModel at_mean = SmfModel(0.5, 0.8, 0.4, 0.7);
  const EntryGradient g = smf::Gradient(0.5, at_mean, 0, 0, 0.0, 0.0, {1.0, 1.0, 1.0});
  EXPECT_EQ(g.w.norm() + g.z.norm(), 0.0);
  EXPECT_EQ(g.threshold, 0.0);
  EXPECT_EQ(g.sigma, 0.0);
  const EntryGradient h = smf::Gradient(0.9, at_mean, 0, 0, 0.0, 0.0, {1.0, 0.0, 0.0});
  EXPECT_EQ(h.sigma, 0.0);  // r = 0
  EXPECT_NE(h.threshold, 0.0);
}

TEST(MfExamples, ConstantMatrixAndRankValidation) {
  const ObservedMatrix obs = Constant(4, 3, 0.3);
  Hyperparams hp;
  hp.k = 1;
  hp.lambda_u = hp.lambda_i = 0.1;
  const FitResult fit = mf::Fit(obs, hp);
  EXPECT_DOUBLE_EQ(*fit.model.global_mean, 0.3);
  FactorModel zero = fit.model;
  zero.W.setZero();
  zero.Z.setZero();
  zero.user_bias->setZero();
  zero.item_bias->setZero();
  for (const Entry& e : obs.entries()) EXPECT_DOUBLE_EQ(mf::Predict(zero, e.row, e.col), 0.3);
  hp.k = 0;
  EXPECT_THROW(mf::Fit(obs, hp), std::invalid_argument);
}

double HeldOutRaw(const ingest::SyntheticData& data, const FactorModel& fit) {
  std::map<std::pair<int, int>, bool> seen;
  for (const Entry& e : data.observed.entries()) seen[{e.row, e.col}] = true;
  std::vector<eval::PredictionPair> pairs;
  for (int d = 0; d < data.truth.rows(); ++d)
    for (int n = 0; n < data.truth.cols(); ++n)
      if (!seen.count({d, n})) pairs.push_back({PredictRaw(data.truth, d, n), PredictRaw(fit, d, n)});
  return eval::Rmse(pairs);
}

TEST(MfExamples, RecoversRankOneData) {
  const ingest::SyntheticData data = RankOne(40, 10, 0.5, 31);
  Hyperparams hp;
  hp.k = 1;
  hp.learning_rate = 0.2;
  hp.max_epochs = 500;
  hp.rel_tolerance = 1e-9;
  EXPECT_LE(HeldOutRaw(data, mf::Fit(data.observed, hp).model), 0.05);
}

TEST(NmfExamples, RankOneAndZeros) {
  const ingest::SyntheticData data = RankOne(6, 5, 1.0, 3);
  Hyperparams hp;
  hp.k = 1;
  hp.max_epochs = 500;
  hp.rel_tolerance = 1e-12;
  EXPECT_LE(nmf::Fit(data.observed, hp).report.objective_trajectory.back(), 1e-6);

  const ObservedMatrix zeros = Constant(5, 4, 0.0);
  hp.k = 2;
  hp.lambda_u = hp.lambda_i = 0.1;
  const FactorModel m = nmf::Fit(zeros, hp).model;
  EXPECT_LE((m.W * m.Z.transpose()).maxCoeff(), 1e-4);
}

TEST(PmfExamples, ConstantHalfAndShrinkage) {
  // w = z = sqrt(0.5) represents the matrix exactly.
  FactorModel exact;
  exact.kind = ModelKind::kPMF;
  exact.W = Eigen::MatrixXd::Constant(3, 1, std::sqrt(0.5));
  exact.Z = Eigen::MatrixXd::Constant(4, 1, std::sqrt(0.5));
  const ObservedMatrix obs = Constant(3, 4, 0.5);
  Hyperparams hp;
  hp.k = 1;
  EXPECT_LE(ModelObjective(obs, exact, hp), 1e-30);
  hp.learning_rate = 0.5;
  hp.max_epochs = 1000;
  hp.rel_tolerance = 1e-12;
  EXPECT_LE(pmf::Fit(obs, hp).report.objective_trajectory.back(), 1e-6);

  hp.k = 2;
  hp.lambda_u = hp.lambda_i = 100.0;
  hp.learning_rate = 0.01;
  hp.max_epochs = 200;
  const FactorModel shrunk = pmf::Fit(obs, hp).model;
  EXPECT_LT(shrunk.W.norm() + shrunk.Z.norm(), 1e-3);
}

TEST(EvalExamples, ErrorsAndRanking) {
  const std::vector<eval::PredictionPair> same = {{0.3, 0.3}, {0.9, 0.9}};
  const std::vector<eval::PredictionPair> flip = {{0.0, 1.0}, {1.0, 0.0}};
  const std::vector<eval::PredictionPair> mixed = {{0.2, 0.5}, {0.4, 0.8}};
  EXPECT_EQ(eval::Rmse(same), 0.0);
  EXPECT_EQ(eval::Mae(same), 0.0);
  EXPECT_EQ(eval::Rmse(flip), 1.0);
  EXPECT_EQ(eval::Mae(flip), 1.0);
  EXPECT_NEAR(eval::Rmse(mixed), 0.3535534, 1e-7);
  EXPECT_NEAR(eval::Mae(mixed), 0.35, 1e-15);

  // Relevant {0, 1}; item 0 and two irrelevant items fill the top 3.
  const ObservedMatrix obs(1, 5, {{0, 0, 0.5, 1}, {0, 1, 0.5, 1}, {0, 4, 0.5, 1}});
  eval::SplitPlan plan;
  plan.train = {2};
  plan.test = {0, 1};
  Eigen::MatrixXd scores(1, 5);
  scores << 0.9, 0.1, 0.8, 0.7, 0.0;
  const eval::PrecisionRecall at3 = eval::PrecisionRecallAtN(scores, plan, obs, 3);
  EXPECT_DOUBLE_EQ(at3.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(at3.recall, 0.5);
  scores << 0.9, 0.8, 0.0, 0.1, 0.2;
  const eval::PrecisionRecall at2 = eval::PrecisionRecallAtN(scores, plan, obs, 2);
  EXPECT_EQ(at2.precision, 1.0);
  EXPECT_EQ(at2.recall, 1.0);
  EXPECT_EQ(eval::PrecisionRecallAtN(scores, plan, obs, 10).recall, 1.0);
}

TEST(EvalExamples, KFoldSizes) {
  std::vector<Entry> nine, ten;
  for (int i = 0; i < 10; ++i) {
    if (i < 9) nine.push_back({i, 0, 0.5, 1});
    ten.push_back({i, 0, 0.5, 1});
  }
  for (const eval::SplitPlan& p : eval::SplitKFold(ObservedMatrix(10, 1, nine), 3, 4)) {
    EXPECT_EQ(p.test.size(), 3u);
  }
  std::multiset<std::size_t> sizes;
  for (const eval::SplitPlan& p : eval::SplitKFold(ObservedMatrix(10, 1, ten), 3, 4)) {
    sizes.insert(p.test.size());
  }
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{3, 3, 4}));
}

TEST(EvalExamples, CrossValidationSelection) {
  const ingest::SyntheticData data = RankOne(20, 8, 0.6, 5);
  const std::vector<eval::SplitPlan> plans = eval::SplitMonteCarlo(data.observed, 3, 0.2, 2);
  Hyperparams base;
  base.k = 1;
  base.max_epochs = 30;

  const std::vector<Hyperparams> single = {base};
  EXPECT_EQ(eval::CrossValidate(ModelKind::kPMF, data.observed, single, plans).best_index, 0u);
  const std::vector<Hyperparams> twins = {base, base};
  EXPECT_EQ(eval::CrossValidate(ModelKind::kPMF, data.observed, twins, plans).best_index, 0u);

  Hyperparams heavy = base;
  heavy.lambda_u = heavy.lambda_i = 1e6;
  heavy.learning_rate = 1e-8;
  const std::vector<Hyperparams> grid = {heavy, base};
  const eval::CrossValidationResult cv =
      eval::CrossValidate(ModelKind::kPMF, data.observed, grid, plans);
  EXPECT_EQ(cv.best_index, 1u);
  EXPECT_EQ(cv.best.lambda_u, 0.0);
}

TEST(IngestExamples, Builders) {
  std::vector<ingest::ClaimRecord> claims;
  for (int i = 0; i < 4; ++i) claims.push_back({1, 10, i, 7, i, i != 2});
  for (int i = 0; i < 2; ++i) claims.push_back({1, 11, i, 7, 10 + i, true});
  const ingest::LabeledMatrix eff = ingest::BuildEfficiencyMatrix(claims);
  ASSERT_EQ(eff.matrix.size(), 2u);
  for (const Entry& e : eff.matrix.entries()) {
    if (eff.col_ids[e.col] == 10) {
      EXPECT_EQ(e.value, 0.75);
      EXPECT_EQ(e.support, 4);
    } else {
      EXPECT_EQ(e.value, 1.0);
    }
  }

  const ingest::LabeledMatrix rate =
      ingest::BuildRateMatrix(std::vector<ingest::ViewRecord>{{1, 1, 20}, {1, 2, 5}, {2, 3, 9}});
  std::map<std::pair<std::int64_t, std::int64_t>, double> v;
  for (const Entry& e : rate.matrix.entries()) v[{rate.row_ids[e.row], rate.col_ids[e.col]}] = e.value;
  EXPECT_EQ((v[{1, 2}]), 0.25);
  EXPECT_EQ((v[{1, 1}]), 1.0);
  EXPECT_EQ((v[{2, 3}]), 1.0);

  const ingest::LabeledMatrix ctr = ingest::BuildCtrMatrix(
      std::vector<ingest::CtrRecord>{{1, 1, 10, 3}, {1, 2, 10, 0}, {2, 1, 6, 6}});
  std::map<std::pair<std::int64_t, std::int64_t>, double> c;
  for (const Entry& e : ctr.matrix.entries()) c[{ctr.row_ids[e.row], ctr.col_ids[e.col]}] = e.value;
  EXPECT_DOUBLE_EQ((c[{1, 1}]), 0.3);
  EXPECT_EQ((c[{1, 2}]), 0.0);
  EXPECT_EQ((c[{2, 1}]), 1.0);
}

TEST(IngestExamples, Filters) {
  // Already compliant (thresholds 1): only reindexing.
  const ObservedMatrix ok(3, 3, {{0, 2, 0.1, 5}, {2, 0, 0.4, 5}});
  const ObservedMatrix same = ingest::ApplyFilters(ok, ingest::FilterConfig{1, 1, 1, true});
  EXPECT_EQ(same.rows(), 2);
  EXPECT_EQ(same.cols(), 2);
  EXPECT_EQ(same.size(), 2u);

  // Support 9 goes; column 1 keeps 9 users and goes too.
  std::vector<Entry> entries;
  for (int d = 0; d < 12; ++d) {
    entries.push_back({d, 0, 0.5, d == 0 ? 9 : 10});
    if (d < 9) entries.push_back({d, 1, 0.5, 10});
  }
  const ObservedMatrix out =
      ingest::ApplyFilters(ObservedMatrix(12, 2, entries), ingest::FilterConfig{10, 10, 1, true});
  EXPECT_EQ(out.rows(), 11);
  EXPECT_EQ(out.cols(), 1);
}

TEST(IngestExamples, Synthesis) {
  EXPECT_EQ(ingest::SynthEmf(6, 4, 2, 1.0, 1).observed.size(), 24u);
  // Thresholds at every mean: all values are one half.
  ingest::SyntheticData s = ingest::SynthSmf(3, 3, 2, 0.5, 1.0, 2);
  s.truth.Z.row(0) = s.truth.Z.row(1);
  s.truth.W.setConstant(0.3);
  for (int n = 0; n < 3; ++n) (*s.truth.thresholds)(n) = s.truth.W.row(0).dot(s.truth.Z.row(n));
  for (int d = 0; d < 3; ++d)
    for (int n = 0; n < 3; ++n) EXPECT_EQ(smf::Predict(s.truth, d, n), 0.5);
}

}  // namespace
}  // namespace boundmf
