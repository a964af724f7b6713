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

#ifndef BOUNDMF_IO_H_
#define BOUNDMF_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boundmf/eval.h"
#include "boundmf/types.h"

namespace boundmf::io {

// Malformed text input; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Splits one CSV line on commas and trims spaces / a trailing CR from each
// field. Quoting is not supported.
std::vector<std::string> SplitCsvLine(std::string_view line);

// Shortest text that reads back to the same double.
std::string FormatDouble(double v);

// Observed matrix CSV: header `row,col,value,support`, 0-based indices.
void WriteObservedCsv(std::ostream& out, const ObservedMatrix& m);
// Dimensions default to one past the largest index seen.
ObservedMatrix ReadObservedCsv(std::istream& in,
                               std::optional<int> rows = std::nullopt,
                               std::optional<int> cols = std::nullopt);

// Index sidecar: header `axis,index,id` with axis `row` or `col`.
void WriteIndexCsv(std::ostream& out, const std::vector<std::int64_t>& row_ids,
                   const std::vector<std::int64_t>& col_ids);

// Flat model format. First line `kind=<KIND> D=<rows> N=<cols> K=<rank>`,
// then `[W]` and `[Z]` as CSV blocks followed by the kind's optional sections
// (`[beta]`, `[item_bias]`, `[global_mean]`, `[gamma]`, `[sigma]`).
void WriteModel(std::ostream& out, const FactorModel& model);
FactorModel ReadModel(std::istream& in);

// `epoch,objective`; epoch 0 is the objective before training.
void WriteTrainReportCsv(std::ostream& out, const TrainReport& report);

// `metric,N,mean,stderr`; N is blank for RMSE and MAE.
void WriteEvalReportCsv(std::ostream& out, const eval::EvalReport& report);

}  // namespace boundmf::io

#endif  // BOUNDMF_IO_H_
