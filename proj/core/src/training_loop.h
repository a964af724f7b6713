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

#ifndef BOUNDMF_SRC_TRAINING_LOOP_H_
#define BOUNDMF_SRC_TRAINING_LOOP_H_

#include <stdexcept>
#include <string>

#include "boundmf/loss.h"
#include "boundmf/types.h"

namespace boundmf::internal {

// Runs `step(epoch)` up to hp.max_epochs times, recording `objective()` after
// each one and stopping early on the relative-decrease rule.
template <typename Step, typename Objective>
TrainReport RunEpochs(const Hyperparams& hp, const FactorModel& model,
                      Step&& step, Objective&& objective,
                      const EpochObserver& observer) {
  TrainReport report;
  report.initial_objective = objective();
  double prev = report.initial_objective;
  for (int epoch = 1; epoch <= hp.max_epochs; ++epoch) {
    step(epoch);
    const double curr = objective();
    report.objective_trajectory.push_back(curr);
    report.epochs_run = epoch;
    if (observer) observer(model, epoch);
    if (Converged(prev, curr, hp.rel_tolerance)) {
      report.stop_reason = StopReason::kTolerance;
      return report;
    }
    prev = curr;
  }
  report.stop_reason = StopReason::kMaxEpochs;
  return report;
}

inline void RequireNonEmpty(const ObservedMatrix& observed, const char* who) {
  if (observed.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty observation set");
  }
}

}  // namespace boundmf::internal

#endif  // BOUNDMF_SRC_TRAINING_LOOP_H_
