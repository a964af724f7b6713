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

#include "boundmf/types.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace boundmf {
namespace {

std::string EntryContext(std::size_t i, const Entry& e) {
  return "entry " + std::to_string(i) + " (row " + std::to_string(e.row) +
         ", col " + std::to_string(e.col) + ")";
}

}  // namespace

ObservedMatrix::ObservedMatrix(int rows, int cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ <= 0 || cols_ <= 0) {
    throw std::invalid_argument("ObservedMatrix: dimensions must be positive");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_) {
      throw std::invalid_argument("ObservedMatrix: " + EntryContext(i, e) +
                                  " index out of range");
    }
    if (!(e.value >= 0.0 && e.value <= 1.0)) {
      throw std::invalid_argument("ObservedMatrix: " + EntryContext(i, e) +
                                  " value outside [0,1]");
    }
    if (e.support < 1) {
      throw std::invalid_argument("ObservedMatrix: " + EntryContext(i, e) +
                                  " support must be >= 1");
    }
    const std::uint64_t key =
        static_cast<std::uint64_t>(e.row) * static_cast<std::uint64_t>(cols_) +
        static_cast<std::uint64_t>(e.col);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("ObservedMatrix: " + EntryContext(i, e) +
                                  " duplicates an earlier entry");
    }
  }
}

ObservedMatrix ObservedMatrix::Subset(
    std::span<const std::size_t> indices) const {
  std::vector<Entry> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= entries_.size()) {
      throw std::out_of_range("ObservedMatrix::Subset: index out of range");
    }
    picked.push_back(entries_[i]);
  }
  return ObservedMatrix(rows_, cols_, std::move(picked));
}

std::vector<int> ObservedMatrix::RowCounts() const {
  std::vector<int> counts(rows_, 0);
  for (const Entry& e : entries_) ++counts[e.row];
  return counts;
}

std::vector<int> ObservedMatrix::ColCounts() const {
  std::vector<int> counts(cols_, 0);
  for (const Entry& e : entries_) ++counts[e.col];
  return counts;
}

double ObservedMatrix::Sparsity() const {
  return 1.0 - static_cast<double>(entries_.size()) /
                   (static_cast<double>(rows_) * static_cast<double>(cols_));
}

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMF: return "MF";
    case ModelKind::kNMF: return "NMF";
    case ModelKind::kBMF: return "BMF";
    case ModelKind::kPMF: return "PMF";
    case ModelKind::kLMF: return "LMF";
    case ModelKind::kEMF: return "EMF";
    case ModelKind::kSMF: return "SMF";
  }
  return "?";
}

std::optional<ModelKind> ParseModelKind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (ModelKind kind : {ModelKind::kMF, ModelKind::kNMF, ModelKind::kBMF,
                         ModelKind::kPMF, ModelKind::kLMF, ModelKind::kEMF,
                         ModelKind::kSMF}) {
    if (ModelKindName(kind) == upper) return kind;
  }
  return std::nullopt;
}

void ValidateModel(const FactorModel& model, double tol) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(std::string(ModelKindName(model.kind)) +
                                " model: " + what);
  };
  if (model.W.cols() != model.Z.cols() || model.W.cols() < 1) {
    fail("W and Z must share a positive latent dimension");
  }
  if (!model.W.allFinite() || !model.Z.allFinite()) fail("non-finite factor");
  auto check_len = [&](const std::optional<Eigen::VectorXd>& v, Eigen::Index n,
                       const char* name) {
    if (v && v->size() != n) fail(std::string(name) + " has wrong length");
  };
  check_len(model.user_bias, model.W.rows(), "user_bias");
  check_len(model.item_bias, model.Z.rows(), "item_bias");
  check_len(model.thresholds, model.Z.rows(), "thresholds");

  switch (model.kind) {
    case ModelKind::kEMF: {
      if (!model.user_bias) fail("missing user_bias");
      const Eigen::VectorXd& beta = *model.user_bias;
      if ((model.W.array() < 0.0).any()) fail("negative skill level");
      if ((beta.array() < 0.0).any()) fail("negative bias");
      for (Eigen::Index d = 0; d < model.W.rows(); ++d) {
        if (beta(d) + model.W.row(d).maxCoeff() > 1.0 + tol) {
          fail("bias + skill exceeds 1 in row " + std::to_string(d));
        }
      }
      if ((model.Z.array() < 0.0).any()) fail("negative item weight");
      for (Eigen::Index n = 0; n < model.Z.rows(); ++n) {
        if (std::abs(model.Z.row(n).sum() - 1.0) > tol) {
          fail("item row " + std::to_string(n) + " not on the simplex");
        }
      }
      break;
    }
    case ModelKind::kNMF:
    case ModelKind::kBMF:
      if ((model.W.array() < 0.0).any() || (model.Z.array() < 0.0).any()) {
        fail("negative factor entry");
      }
      break;
    case ModelKind::kSMF:
      if (!model.thresholds) fail("missing thresholds");
      if (!model.sigma || !(*model.sigma >= kSigmaMin)) fail("sigma below floor");
      break;
    case ModelKind::kLMF:
      if (!model.thresholds || !model.user_bias) fail("missing biases");
      break;
    case ModelKind::kMF:
      if (!model.user_bias || !model.item_bias || !model.global_mean) {
        fail("missing biases");
      }
      break;
    case ModelKind::kPMF:
      break;
  }
}

void Hyperparams::Validate() const {
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("Hyperparams: ") + what);
  };
  if (k < 1) fail("K must be >= 1");
  if (!(lambda_u >= 0.0) || !(lambda_i >= 0.0)) fail("penalties must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    fail("learning_rate must be positive");
  }
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (max_epochs < 1) fail("max_epochs must be >= 1");
  if (!(rel_tolerance > 0.0)) fail("rel_tolerance must be positive");
}

}  // namespace boundmf
