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

#include "boundmf/experiment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "boundmf/baselines.h"
#include "boundmf/eval.h"
#include "boundmf/random.h"
#include "parallel.h"

namespace boundmf::experiment {
namespace {

constexpr double kLogitEps = 1e-3;

}  // namespace

void ValidateMap(const MonotoneMap& map) {
  if (!map.forward || !map.inverse) {
    throw std::invalid_argument("mapping '" + map.name + "' is incomplete");
  }
  constexpr int kSteps = 1000;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSteps; ++i) {
    const double u = static_cast<double>(i) / kSteps;
    const double v = map.forward(u);
    if (!std::isfinite(v) || !(v > prev)) {
      throw std::invalid_argument("mapping '" + map.name +
                                  "' is not strictly increasing on [0,1]");
    }
    if (std::abs(map.inverse(v) - u) > 1e-9) {
      throw std::invalid_argument("mapping '" + map.name +
                                  "' has an inconsistent inverse");
    }
    prev = v;
  }
}

std::vector<MonotoneMap> DefaultMaps() {
  return {
      {"identity", [](double u) { return u; }, [](double v) { return v; }},
      {"affine_1_5", [](double u) { return 1.0 + 4.0 * u; },
       [](double v) { return (v - 1.0) / 4.0; }},
      {"square", [](double u) { return u * u; },
       [](double v) { return std::sqrt(v); }},
      {"sqrt", [](double u) { return std::sqrt(u); },
       [](double v) { return v * v; }},
      {"logit",
       [](double u) { return std::log((u + kLogitEps) / (1.0 - u + kLogitEps)); },
       [](double v) {
         const double e = std::exp(v);
         return (e * (1.0 + kLogitEps) - kLogitEps) / (1.0 + e);
       }},
  };
}

Hyperparams MonotoneConfig::DefaultHyperparams() {
  Hyperparams hp;
  hp.k = 2;
  hp.lambda_u = 0.2;
  hp.lambda_i = 0.2;
  hp.learning_rate = 0.05;
  hp.batch_size = 8;
  hp.max_epochs = 100;
  hp.rel_tolerance = 1e-6;
  return hp;
}

std::vector<MonotoneRow> RunMonotone(const MonotoneConfig& config,
                                     const std::vector<MonotoneMap>& maps,
                                     std::uint64_t seed) {
  if (config.matrices < 1 || config.rows < 1 || config.cols < 1) {
    throw std::invalid_argument("RunMonotone: bad matrix shape or count");
  }
  for (double f : config.train_fractions) {
    if (!(f > 0.0 && f < 1.0)) {
      throw std::invalid_argument("RunMonotone: training fractions must be in (0,1)");
    }
  }
  for (const MonotoneMap& map : maps) ValidateMap(map);

  const int rows = config.rows, cols = config.cols;
  const std::size_t total = static_cast<std::size_t>(rows) * cols;
  const Rng base(seed);

  std::vector<std::vector<double>> matrices(config.matrices);
  for (int m = 0; m < config.matrices; ++m) {
    Rng rng = base.Split(static_cast<std::uint64_t>(m));
    matrices[m].resize(total);
    for (double& x : matrices[m]) x = rng.Uniform();
  }

  const std::size_t fractions = config.train_fractions.size();
  const std::size_t cells = maps.size() * fractions * config.matrices;
  std::vector<double> rmse(cells);
  const auto errors = internal::ParallelFor(cells, config.jobs, [&](std::size_t c) {
    const std::size_t m = c % config.matrices;
    const std::size_t f = (c / config.matrices) % fractions;
    const MonotoneMap& map = maps[c / (config.matrices * fractions)];

    // Split depends on (matrix, fraction) only, so every mapping sees it.
    Rng split = base.Split(1000 + m).Split(f);
    const std::vector<std::size_t> perm = split.Permutation(total);
    const auto n_train = static_cast<std::size_t>(
        std::llround(config.train_fractions[f] * static_cast<double>(total)));

    // Transformed training values are standardized so that every mapping
    // meets the same hyperparameters at the same scale.
    std::vector<Entry> train;
    train.reserve(n_train);
    double mean = 0.0;
    for (std::size_t j = 0; j < n_train; ++j) {
      const std::size_t p = perm[j];
      const double v = map.forward(matrices[m][p]);
      mean += v / static_cast<double>(n_train);
      train.push_back({static_cast<int>(p / cols), static_cast<int>(p % cols), v, 1});
    }
    double var = 0.0;
    for (const Entry& e : train) var += (e.value - mean) * (e.value - mean);
    const double scale = std::sqrt(var / static_cast<double>(n_train));
    if (!(scale > 0.0)) throw std::runtime_error("RunMonotone: constant training data");
    for (Entry& e : train) e.value = (e.value - mean) / scale;
    Hyperparams hp = config.hp;
    hp.seed = base.Split(2000 + m).seed();
    const FitResult fit = mf::FitUnbounded(rows, cols, train, hp);

    const double lo = map.forward(0.0), hi = map.forward(1.0);
    std::vector<eval::PredictionPair> pairs;
    for (std::size_t j = n_train; j < total; ++j) {
      const std::size_t p = perm[j];
      const double v = mean + scale * mf::Predict(fit.model, static_cast<int>(p / cols),
                                                  static_cast<int>(p % cols));
      pairs.push_back({matrices[m][p],
                       std::clamp(map.inverse(std::clamp(v, lo, hi)), 0.0, 1.0)});
    }
    rmse[c] = eval::Rmse(pairs);
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<MonotoneRow> out;
  for (std::size_t mi = 0; mi < maps.size(); ++mi) {
    for (std::size_t f = 0; f < fractions; ++f) {
      MonotoneRow row;
      row.mapping = maps[mi].name;
      row.train_fraction = config.train_fractions[f];
      const std::size_t first = (mi * fractions + f) * config.matrices;
      row.rmse.assign(rmse.begin() + first, rmse.begin() + first + config.matrices);
      const double n = static_cast<double>(row.rmse.size());
      for (double r : row.rmse) row.mean_rmse += r / n;
      double ss = 0.0;
      for (double r : row.rmse) ss += (r - row.mean_rmse) * (r - row.mean_rmse);
      row.std_error = row.rmse.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace boundmf::experiment
