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

#include "boundmf/eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "boundmf/predict.h"
#include "boundmf/random.h"
#include "parallel.h"

namespace boundmf::eval {
namespace {

void RequirePairs(std::span<const PredictionPair> pairs, const char* who) {
  if (pairs.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty list");
  }
}

std::string Describe(const Hyperparams& hp) {
  std::ostringstream os;
  os << "K=" << hp.k << " lambda_u=" << hp.lambda_u
     << " lambda_i=" << hp.lambda_i << " learning_rate=" << hp.learning_rate;
  return os.str();
}

MetricSummary Summarize(std::string metric, int n,
                        const std::vector<double>& values) {
  const double count = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double std_error =
      values.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
  return {std::move(metric), n, mean, std_error};
}

}  // namespace

double Rmse(std::span<const PredictionPair> pairs) {
  RequirePairs(pairs, "Rmse");
  double sum = 0.0;
  for (const PredictionPair& p : pairs) {
    const double r = p.truth - p.prediction;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(pairs.size()));
}

double Mae(std::span<const PredictionPair> pairs) {
  RequirePairs(pairs, "Mae");
  double sum = 0.0;
  for (const PredictionPair& p : pairs) sum += std::abs(p.truth - p.prediction);
  return sum / static_cast<double>(pairs.size());
}

void ValidatePlan(const SplitPlan& plan, std::size_t size) {
  if (plan.test.empty()) throw std::invalid_argument("SplitPlan: empty test set");
  std::vector<char> seen(size, 0);
  for (const auto* part : {&plan.train, &plan.test}) {
    for (std::size_t i : *part) {
      if (i >= size) throw std::invalid_argument("SplitPlan: index out of range");
      if (seen[i]++) throw std::invalid_argument("SplitPlan: overlapping entry");
    }
  }
  if (plan.train.size() + plan.test.size() != size) {
    throw std::invalid_argument("SplitPlan: entries not covered");
  }
}

std::vector<SplitPlan> SplitMonteCarlo(const ObservedMatrix& observed,
                                       int rounds, double test_fraction,
                                       std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("SplitMonteCarlo: test_fraction must be in (0,1)");
  }
  if (rounds < 1) throw std::invalid_argument("SplitMonteCarlo: rounds must be >= 1");
  const std::size_t size = observed.size();
  const auto test_size = static_cast<std::size_t>(
      std::ceil(test_fraction * static_cast<double>(size)));
  if (test_size == 0 || test_size >= size) {
    throw std::invalid_argument(
        "SplitMonteCarlo: too few entries for a train/test split");
  }
  const Rng base(seed);
  std::vector<SplitPlan> plans;
  for (int r = 0; r < rounds; ++r) {
    Rng rng = base.Split(static_cast<std::uint64_t>(r));
    std::vector<std::size_t> perm = rng.Permutation(size);
    SplitPlan plan;
    plan.round_id = r;
    plan.test.assign(perm.begin(), perm.begin() + test_size);
    plan.train.assign(perm.begin() + test_size, perm.end());
    std::sort(plan.test.begin(), plan.test.end());
    std::sort(plan.train.begin(), plan.train.end());
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<SplitPlan> SplitKFold(const ObservedMatrix& observed, int k,
                                  std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("SplitKFold: k must be >= 2");
  const std::size_t size = observed.size();
  if (size < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("SplitKFold: fewer entries than folds");
  }
  Rng rng(seed);
  const std::vector<std::size_t> perm = rng.Permutation(size);
  const std::size_t base = size / k;
  const std::size_t extra = size % k;

  std::vector<std::size_t> fold_of(size);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
    const std::size_t len = base + (f < extra ? 1 : 0);
    for (std::size_t j = 0; j < len; ++j) fold_of[perm[pos++]] = f;
  }
  std::vector<SplitPlan> plans(k);
  for (int f = 0; f < k; ++f) plans[f].round_id = f;
  for (std::size_t i = 0; i < size; ++i) {
    for (int f = 0; f < k; ++f) {
      (fold_of[i] == static_cast<std::size_t>(f) ? plans[f].test
                                                  : plans[f].train)
          .push_back(i);
    }
  }
  return plans;
}

PrecisionRecall PrecisionRecallAtN(const Eigen::MatrixXd& scores,
                                   const SplitPlan& plan,
                                   const ObservedMatrix& observed, int n) {
  if (n < 1) throw std::invalid_argument("PrecisionRecallAtN: N must be >= 1");
  if (scores.rows() != observed.rows() || scores.cols() != observed.cols()) {
    throw std::invalid_argument("PrecisionRecallAtN: score matrix shape mismatch");
  }
  const int rows = observed.rows();
  const int cols = observed.cols();
  std::vector<std::vector<int>> relevant(rows);
  for (std::size_t i : plan.test) relevant[observed[i].row].push_back(observed[i].col);
  std::vector<std::vector<char>> in_train(rows);
  for (std::size_t i : plan.train) {
    auto& mask = in_train[observed[i].row];
    if (mask.empty()) mask.assign(cols, 0);
    mask[observed[i].col] = 1;
  }

  double precision_sum = 0.0;
  double recall_sum = 0.0;
  int users = 0;
  std::vector<int> candidates;
  std::vector<char> is_relevant(cols, 0);
  for (int d = 0; d < rows; ++d) {
    if (relevant[d].empty()) continue;
    candidates.clear();
    for (int c = 0; c < cols; ++c) {
      if (in_train[d].empty() || !in_train[d][c]) candidates.push_back(c);
    }
    const auto top = std::min<std::size_t>(n, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + top,
                      candidates.end(), [&](int a, int b) {
                        const double sa = scores(d, a), sb = scores(d, b);
                        return sa > sb || (sa == sb && a < b);
                      });
    for (int c : relevant[d]) is_relevant[c] = 1;
    int hits = 0;
    for (std::size_t j = 0; j < top; ++j) hits += is_relevant[candidates[j]];
    for (int c : relevant[d]) is_relevant[c] = 0;

    precision_sum += static_cast<double>(hits) / n;
    recall_sum += static_cast<double>(hits) / relevant[d].size();
    ++users;
  }
  if (users == 0) {
    throw std::invalid_argument("PrecisionRecallAtN: no user has test entries");
  }
  return {precision_sum / users, recall_sum / users};
}

std::vector<MetricSummary> EvalReport::Summaries() const {
  if (rounds.empty()) throw std::logic_error("EvalReport: no rounds");
  auto collect = [&](auto field) {
    std::vector<double> v;
    for (const RoundMetrics& r : rounds) v.push_back(field(r));
    return v;
  };
  std::vector<MetricSummary> out;
  out.push_back(Summarize("RMSE", 0, collect([](const RoundMetrics& r) { return r.rmse; })));
  out.push_back(Summarize("MAE", 0, collect([](const RoundMetrics& r) { return r.mae; })));
  for (std::size_t j = 0; j < kTopN.size(); ++j) {
    out.push_back(Summarize("Precision", kTopN[j], collect([j](const RoundMetrics& r) {
                              return r.precision[j];
                            })));
  }
  for (std::size_t j = 0; j < kTopN.size(); ++j) {
    out.push_back(Summarize("Recall", kTopN[j], collect([j](const RoundMetrics& r) {
                              return r.recall[j];
                            })));
  }
  return out;
}

RoundMetrics EvaluateRound(const FactorModel& model,
                           const ObservedMatrix& observed,
                           const SplitPlan& plan) {
  std::vector<PredictionPair> pairs;
  pairs.reserve(plan.test.size());
  for (std::size_t i : plan.test) {
    const Entry& e = observed[i];
    pairs.push_back({e.value, PredictClamped(model, e.row, e.col)});
  }
  RoundMetrics m;
  m.rmse = Rmse(pairs);
  m.mae = Mae(pairs);
  const Eigen::MatrixXd scores = PredictDense(model);
  for (std::size_t j = 0; j < kTopN.size(); ++j) {
    const PrecisionRecall pr = PrecisionRecallAtN(scores, plan, observed, kTopN[j]);
    m.precision[j] = pr.precision;
    m.recall[j] = pr.recall;
  }
  return m;
}

CrossValidationResult CrossValidate(ModelKind kind,
                                    const ObservedMatrix& observed,
                                    std::span<const Hyperparams> grid,
                                    std::span<const SplitPlan> plans, int jobs) {
  if (grid.empty()) throw std::invalid_argument("CrossValidate: empty grid");
  if (plans.empty()) throw std::invalid_argument("CrossValidate: no split plans");
  for (const SplitPlan& plan : plans) ValidatePlan(plan, observed.size());

  const std::size_t tasks = grid.size() * plans.size();
  std::vector<RoundMetrics> results(tasks);
  const auto errors = internal::ParallelFor(tasks, jobs, [&](std::size_t t) {
    const Hyperparams& hp = grid[t / plans.size()];
    const SplitPlan& plan = plans[t % plans.size()];
    const ObservedMatrix train = observed.Subset(plan.train);
    const FitResult fit = FitModel(kind, train, hp);
    results[t] = EvaluateRound(fit.model, observed, plan);
  });
  for (std::size_t t = 0; t < tasks; ++t) {
    if (!errors[t]) continue;
    const std::size_t g = t / plans.size();
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw std::runtime_error("cross-validation failed at grid point " +
                             std::to_string(g) + " (" + Describe(grid[g]) +
                             "), round " + std::to_string(plans[t % plans.size()].round_id) +
                             ": " + what);
  }

  CrossValidationResult out;
  out.mean_rmse.assign(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t p = 0; p < plans.size(); ++p) {
      out.mean_rmse[g] += results[g * plans.size() + p].rmse;
    }
    out.mean_rmse[g] /= static_cast<double>(plans.size());
    if (out.mean_rmse[g] < out.mean_rmse[out.best_index]) out.best_index = g;
  }
  out.best = grid[out.best_index];
  out.report.rounds.assign(results.begin() + out.best_index * plans.size(),
                           results.begin() + (out.best_index + 1) * plans.size());
  return out;
}

}  // namespace boundmf::eval
