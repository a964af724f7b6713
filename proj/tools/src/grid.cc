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

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boundmf_cli/cli.h"

namespace boundmf::cli {
namespace {

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  text = Trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad value '" + std::string(text) + "' for " +
                                std::string(what));
  }
  return value;
}

// Sets field `name` of `hp` from `text`.
void SetField(Hyperparams& hp, std::string_view name, std::string_view text) {
  if (name == "k") hp.k = ParseNumber<int>(text, name);
  else if (name == "lambda_u") hp.lambda_u = ParseNumber<double>(text, name);
  else if (name == "lambda_i") hp.lambda_i = ParseNumber<double>(text, name);
  else if (name == "learning_rate") hp.learning_rate = ParseNumber<double>(text, name);
  else if (name == "batch_size") hp.batch_size = ParseNumber<int>(text, name);
  else if (name == "max_epochs") hp.max_epochs = ParseNumber<int>(text, name);
  else if (name == "rel_tolerance") hp.rel_tolerance = ParseNumber<double>(text, name);
  else throw std::invalid_argument("unknown grid field '" + std::string(name) + "'");
}

}  // namespace

std::vector<Hyperparams> ParseGrid(const std::string& spec,
                                   const Hyperparams& base) {
  std::vector<Hyperparams> grid = {base};
  if (Trim(spec).empty()) return grid;
  std::vector<std::string> seen;
  for (std::string_view axis : Split(spec, ';')) {
    axis = Trim(axis);
    if (axis.empty()) continue;
    const std::size_t eq = axis.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("grid axis '" + std::string(axis) +
                                  "' lacks '='");
    }
    const std::string name(Trim(axis.substr(0, eq)));
    for (const std::string& s : seen) {
      if (s == name) throw std::invalid_argument("grid field '" + name + "' repeated");
    }
    seen.push_back(name);
    std::vector<Hyperparams> next;
    for (const Hyperparams& hp : grid) {
      for (std::string_view v : Split(axis.substr(eq + 1), ',')) {
        Hyperparams point = hp;
        SetField(point, name, v);
        next.push_back(point);
      }
    }
    grid = std::move(next);
  }
  for (const Hyperparams& hp : grid) hp.Validate();
  return grid;
}

std::vector<eval::SplitPlan> MakeSplits(const std::string& spec,
                                        const ObservedMatrix& observed,
                                        std::uint64_t seed) {
  const std::vector<std::string_view> parts = Split(spec, ':');
  if (parts[0] == "mc") {
    if (parts.size() != 3) {
      throw std::invalid_argument("split spec must be mc:<rounds>:<fraction>");
    }
    const int rounds = ParseNumber<int>(parts[1], "rounds");
    const double fraction = ParseNumber<double>(parts[2], "test fraction");
    if (rounds < 1 || !(fraction > 0.0 && fraction < 1.0)) {
      throw std::invalid_argument("mc split needs rounds >= 1 and fraction in (0,1)");
    }
    return eval::SplitMonteCarlo(observed, rounds, fraction, seed);
  }
  if (parts[0] == "kfold") {
    if (parts.size() != 2) throw std::invalid_argument("split spec must be kfold:<k>");
    const int k = ParseNumber<int>(parts[1], "k");
    if (k < 2) throw std::invalid_argument("kfold needs k >= 2");
    return eval::SplitKFold(observed, k, seed);
  }
  throw std::invalid_argument("unknown split spec '" + spec + "'");
}

int DefaultBatchSize(std::size_t observed_entries) {
  return observed_entries < 5000 ? 8 : 128;
}

}  // namespace boundmf::cli
