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

#ifndef BOUNDMF_EXPERIMENT_H_
#define BOUNDMF_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "boundmf/types.h"

// Does a strictly increasing change of scale make completing a random [0,1]
// matrix easier? Each cell of the experiment transforms the training entries,
// standardizes them, fits biased MF, maps the predictions back and scores
// them on the original scale.
namespace boundmf::experiment {

struct MonotoneMap {
  std::string name;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
};

// Throws std::invalid_argument unless `map` is strictly increasing on [0,1]
// and `inverse` undoes `forward` there (checked on a uniform grid).
void ValidateMap(const MonotoneMap& map);

// identity, affine onto [1,5], square, square root and the logit-like
// u -> log((u + 1e-3) / (1 - u + 1e-3)).
std::vector<MonotoneMap> DefaultMaps();

struct MonotoneConfig {
  int matrices = 5;
  int rows = 40;
  int cols = 30;
  std::vector<double> train_fractions = {0.2, 0.4, 0.6, 0.8};
  Hyperparams hp = DefaultHyperparams();
  int jobs = 1;

  // Hyperparameters of the MF fits in every cell.
  static Hyperparams DefaultHyperparams();
};

struct MonotoneRow {
  std::string mapping;
  double train_fraction = 0.0;
  double mean_rmse = 0.0;
  double std_error = 0.0;
  std::vector<double> rmse;  // one per matrix
};

// One row per (mapping, training fraction), mappings in the given order.
// Each random matrix is i.i.d. uniform on [0,1] and fully observed; the same
// train/test split is used for every mapping. Predictions are clamped to the
// image of [0,1] before inversion.
std::vector<MonotoneRow> RunMonotone(const MonotoneConfig& config,
                                     const std::vector<MonotoneMap>& maps,
                                     std::uint64_t seed);

}  // namespace boundmf::experiment

#endif  // BOUNDMF_EXPERIMENT_H_
