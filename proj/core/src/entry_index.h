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

#ifndef BOUNDMF_SRC_ENTRY_INDEX_H_
#define BOUNDMF_SRC_ENTRY_INDEX_H_

#include <cstddef>
#include <vector>

#include "boundmf/types.h"

namespace boundmf::internal {

// Entry positions grouped by row and by column.
struct EntryIndex {
  std::vector<std::vector<std::size_t>> by_row;
  std::vector<std::vector<std::size_t>> by_col;

  explicit EntryIndex(const ObservedMatrix& m)
      : by_row(m.rows()), by_col(m.cols()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      by_row[m[i].row].push_back(i);
      by_col[m[i].col].push_back(i);
    }
  }
};

}  // namespace boundmf::internal

#endif  // BOUNDMF_SRC_ENTRY_INDEX_H_
