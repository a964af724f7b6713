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

#ifndef BOUNDMF_CLI_CLI_H_
#define BOUNDMF_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "boundmf/eval.h"
#include "boundmf/types.h"

namespace boundmf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the `boundmf` command line. `args` excludes the program name.
// Returns the process exit code; nothing is thrown.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Hyperparameter grid from `name=v1,v2;name=v1,...`. Names are Hyperparams
// fields (k, lambda_u, lambda_i, learning_rate, batch_size, max_epochs,
// rel_tolerance). The result is the Cartesian product over `base`, with the
// first-named field varying slowest. Throws std::invalid_argument.
std::vector<Hyperparams> ParseGrid(const std::string& spec,
                                   const Hyperparams& base);

// `mc:<rounds>:<test fraction>` or `kfold:<k>`. Throws std::invalid_argument.
std::vector<eval::SplitPlan> MakeSplits(const std::string& spec,
                                        const ObservedMatrix& observed,
                                        std::uint64_t seed);

// Batch size used when --batch-size is not given.
int DefaultBatchSize(std::size_t observed_entries);

}  // namespace boundmf::cli

#endif  // BOUNDMF_CLI_CLI_H_
