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

#ifndef BOUNDMF_EVAL_H_
#define BOUNDMF_EVAL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "boundmf/types.h"

namespace boundmf::eval {

// Top-N cutoffs reported for precision and recall.
inline constexpr std::array<int, 4> kTopN = {2, 3, 5, 10};

struct PredictionPair {
  double truth = 0.0;
  double prediction = 0.0;
};

// Root mean squared / mean absolute error. Throw std::invalid_argument on an
// empty list.
double Rmse(std::span<const PredictionPair> pairs);
double Mae(std::span<const PredictionPair> pairs);

// Partition of an ObservedMatrix's entry positions for one evaluation round.
struct SplitPlan {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  int round_id = 0;
};

// Checks disjointness, coverage of all `size` entries and a nonempty test set.
void ValidatePlan(const SplitPlan& plan, std::size_t size);

// `rounds` independent random splits, each holding out
// ceil(test_fraction * |entries|) entries chosen without replacement.
std::vector<SplitPlan> SplitMonteCarlo(const ObservedMatrix& observed,
                                       int rounds, double test_fraction,
                                       std::uint64_t seed);

// Random permutation cut into k folds whose sizes differ by at most one; plan
// i holds out fold i.
std::vector<SplitPlan> SplitKFold(const ObservedMatrix& observed, int k,
                                  std::uint64_t seed);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Top-N decision metrics. For every user with held-out entries, items outside
// the user's training set are ranked by `scores` (descending, ties by lower
// item index); the held-out items are the relevant set. Returns the means
// over those users. Throws if no user has a held-out entry or n < 1.
PrecisionRecall PrecisionRecallAtN(const Eigen::MatrixXd& scores,
                                   const SplitPlan& plan,
                                   const ObservedMatrix& observed, int n);

struct RoundMetrics {
  double rmse = 0.0;
  double mae = 0.0;
  std::array<double, kTopN.size()> precision{};
  std::array<double, kTopN.size()> recall{};
};

// One reported figure: mean and standard error across rounds. `n` is 0 for
// RMSE and MAE.
struct MetricSummary {
  std::string metric;
  int n = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct EvalReport {
  std::vector<RoundMetrics> rounds;

  // RMSE, MAE, then Precision@N and Recall@N for each cutoff. The standard
  // error is the sample standard deviation over sqrt(rounds) (zero for a
  // single round).
  std::vector<MetricSummary> Summaries() const;
};

// Test-set metrics of `model` for one split.
RoundMetrics EvaluateRound(const FactorModel& model,
                           const ObservedMatrix& observed,
                           const SplitPlan& plan);

struct CrossValidationResult {
  std::size_t best_index = 0;
  Hyperparams best;
  // Mean test RMSE per grid point.
  std::vector<double> mean_rmse;
  // Per-round metrics of the selected grid point.
  EvalReport report;
};

// Fits every (grid point, plan) pair on the plan's training entries and scores
// it on the test entries. The grid point with the lowest mean test RMSE wins
// (first one on ties). `jobs` worker threads share the fits; the outcome does
// not depend on `jobs`. A failing fit is rethrown as std::runtime_error naming
// the grid point.
CrossValidationResult CrossValidate(ModelKind kind,
                                    const ObservedMatrix& observed,
                                    std::span<const Hyperparams> grid,
                                    std::span<const SplitPlan> plans,
                                    int jobs = 1);

}  // namespace boundmf::eval

#endif  // BOUNDMF_EVAL_H_
