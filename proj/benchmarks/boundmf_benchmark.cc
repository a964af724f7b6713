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

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "boundmf/emf.h"
#include "boundmf/ingest.h"
#include "boundmf/projection.h"
#include "boundmf/random.h"
#include "boundmf/smf.h"

namespace boundmf {
namespace {

Eigen::VectorXd RandomVector(int k, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd v(k);
  for (int i = 0; i < k; ++i) v(i) = rng.Normal(0.3, 1.0);
  return v;
}

void BM_ProjectSimplex(benchmark::State& state) {
  const Eigen::VectorXd v = RandomVector(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(projection::ProjectSimplex(v));
}
BENCHMARK(BM_ProjectSimplex)->Arg(5)->Arg(20)->Arg(100);

void BM_ProjectBiasedRow(benchmark::State& state) {
  const Eigen::VectorXd v = RandomVector(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(projection::ProjectBiasedRow(0.4, v));
}
BENCHMARK(BM_ProjectBiasedRow)->Arg(5)->Arg(20)->Arg(100);

// One outer iteration (user block then item block) per run.
void BM_EmfEpoch(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const ingest::SyntheticData data = ingest::SynthEmf(rows, rows / 4, 5, 0.2, 3);
  Hyperparams hp;
  hp.k = 5;
  hp.max_epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(emf::Fit(data.observed, hp));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(data.observed.size()));
}
BENCHMARK(BM_EmfEpoch)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_SmfEpoch(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const ingest::SyntheticData data = ingest::SynthSmf(rows, rows / 4, 5, 0.5, 0.2, 4);
  Hyperparams hp;
  hp.k = 5;
  hp.max_epochs = 1;
  hp.batch_size = 128;
  for (auto _ : state) benchmark::DoNotOptimize(smf::Fit(data.observed, hp));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(data.observed.size()));
}
BENCHMARK(BM_SmfEpoch)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace boundmf

BENCHMARK_MAIN();
