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

#ifndef BOUNDMF_TYPES_H_
#define BOUNDMF_TYPES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Dense"

namespace boundmf {

// Lower bound on the shared quality spread of the survival model.
inline constexpr double kSigmaMin = 1e-3;

// One observed cell of a sparse matrix with entries in [0,1]. `support` is the
// number of raw events (claims, views, displays) averaged into `value`.
struct Entry {
  int row = 0;
  int col = 0;
  double value = 0.0;
  std::int64_t support = 1;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sparse D x N matrix of observations in the unit interval.
//
// Construction validates every entry: values in [0,1], indices in range,
// support >= 1 and no repeated (row, col) pair. Instances are immutable.
class ObservedMatrix {
 public:
  ObservedMatrix(int rows, int cols, std::vector<Entry> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  // Same shape, keeping only the entries at `indices` (in that order).
  ObservedMatrix Subset(std::span<const std::size_t> indices) const;

  // Number of observed entries per row / per column.
  std::vector<int> RowCounts() const;
  std::vector<int> ColCounts() const;

  // 1 - |entries| / (rows * cols).
  double Sparsity() const;

 private:
  int rows_;
  int cols_;
  std::vector<Entry> entries_;
};

enum class ModelKind { kMF, kNMF, kBMF, kPMF, kLMF, kEMF, kSMF };

std::string_view ModelKindName(ModelKind kind);
// Accepts upper or lower case ("emf", "EMF").
std::optional<ModelKind> ParseModelKind(std::string_view name);

// Learned parameters of every supported factorization. Which optional
// members are populated depends on `kind`:
//   MF:  user_bias, item_bias, global_mean
//   LMF: user_bias, thresholds
//   EMF: user_bias
//   SMF: thresholds, sigma
struct FactorModel {
  ModelKind kind = ModelKind::kMF;
  Eigen::MatrixXd W;  // D x K user factors
  Eigen::MatrixXd Z;  // N x K item factors
  std::optional<Eigen::VectorXd> user_bias;
  std::optional<Eigen::VectorXd> item_bias;
  std::optional<double> global_mean;
  std::optional<Eigen::VectorXd> thresholds;
  std::optional<double> sigma;

  int rows() const { return static_cast<int>(W.rows()); }
  int cols() const { return static_cast<int>(Z.rows()); }
  int rank() const { return static_cast<int>(W.cols()); }
};

// Checks the kind-specific invariants of `model`; throws std::invalid_argument
// naming the first violation. `tol` applies to the EMF simplex sums and to
// the bias/skill bound.
void ValidateModel(const FactorModel& model, double tol = 1e-9);

struct Hyperparams {
  int k = 10;
  double lambda_u = 0.0;
  double lambda_i = 0.0;
  double learning_rate = 0.05;
  int batch_size = 8;
  int max_epochs = 100;
  double rel_tolerance = 1e-6;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on K < 1, negative penalties, non-positive
  // learning rate / batch size / epochs / tolerance.
  void Validate() const;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

enum class StopReason { kMaxEpochs, kTolerance };

struct TrainReport {
  // Objective before the first epoch.
  double initial_objective = 0.0;
  // Objective after each epoch / outer iteration.
  std::vector<double> objective_trajectory;
  int epochs_run = 0;
  StopReason stop_reason = StopReason::kMaxEpochs;
};

struct FitResult {
  FactorModel model;
  TrainReport report;
};

// Called with the current model after every epoch / outer iteration.
using EpochObserver = std::function<void(const FactorModel& model, int epoch)>;

}  // namespace boundmf

#endif  // BOUNDMF_TYPES_H_
