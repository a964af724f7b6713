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

#ifndef BOUNDMF_SRC_SGD_H_
#define BOUNDMF_SRC_SGD_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "boundmf/gradients.h"
#include "boundmf/random.h"
#include "boundmf/types.h"

namespace boundmf::internal {

// Shared minibatch machinery of the SGD-trained models.
//
// The penalty of each user row is spread over that row's training entries
// (weight 1/n_d), and likewise for item rows, so one pass over the data
// applies every row's penalty gradient exactly once. Each minibatch step is
// then an unbiased estimate of the full-objective gradient.
class MinibatchPlan {
 public:
  MinibatchPlan(int rows, int cols, std::span<const Entry> entries,
                int batch_size)
      : size_(entries.size()),
        batch_size_(static_cast<std::size_t>(batch_size)),
        row_counts_(rows, 0),
        col_counts_(cols, 0) {
    for (const Entry& e : entries) {
      ++row_counts_[e.row];
      ++col_counts_[e.col];
    }
  }
  MinibatchPlan(const ObservedMatrix& observed, int batch_size)
      : MinibatchPlan(observed.rows(), observed.cols(), observed.entries(),
                      batch_size) {}

  // Shuffles the entries and calls `step(batch_entries)` once per minibatch.
  template <typename Step>
  void RunEpoch(Rng& rng, Step&& step) const {
    const std::vector<std::size_t> order = rng.Permutation(size_);
    for (std::size_t start = 0; start < order.size(); start += batch_size_) {
      const std::size_t end = std::min(order.size(), start + batch_size_);
      step(std::span<const std::size_t>(order.data() + start, end - start));
    }
  }

  EntryWeights Weights(const Entry& e, std::size_t batch) const {
    const double inv = 1.0 / static_cast<double>(batch);
    return {inv, inv / row_counts_[e.row], inv / col_counts_[e.col]};
  }

  const std::vector<int>& row_counts() const { return row_counts_; }
  const std::vector<int>& col_counts() const { return col_counts_; }

 private:
  std::size_t size_;
  std::size_t batch_size_;
  std::vector<int> row_counts_;
  std::vector<int> col_counts_;
};

// With a positive penalty, a row with no training entries is minimized at
// zero independently of everything else.
inline void ZeroUnobservedRows(const std::vector<int>& counts, double lambda,
                               Eigen::MatrixXd& factors,
                               Eigen::VectorXd* bias = nullptr) {
  if (!(lambda > 0.0)) return;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (counts[r] == 0) {
      factors.row(static_cast<Eigen::Index>(r)).setZero();
      if (bias != nullptr) (*bias)(static_cast<Eigen::Index>(r)) = 0.0;
    }
  }
}

inline Eigen::MatrixXd UniformMatrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.Uniform();
  return m;
}

}  // namespace boundmf::internal

#endif  // BOUNDMF_SRC_SGD_H_
