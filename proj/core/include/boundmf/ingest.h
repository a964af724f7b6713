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

#ifndef BOUNDMF_INGEST_H_
#define BOUNDMF_INGEST_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "boundmf/types.h"

namespace boundmf::ingest {

// One submitted claim of a work log.
struct ClaimRecord {
  std::int64_t job_id = 0;
  std::int64_t discipline_id = 0;
  std::int64_t task_id = 0;
  std::int64_t user_id = 0;
  std::int64_t claim_id = 0;
  bool approved = false;
};

struct ViewRecord {
  std::int64_t user_id = 0;
  std::int64_t item_id = 0;
  std::int64_t views = 0;
};

struct CtrRecord {
  std::int64_t ad_id = 0;
  std::int64_t category_id = 0;
  std::int64_t displays = 0;
  std::int64_t clicks = 0;
};

// A matrix together with the raw ids behind its dense row/column indices.
struct LabeledMatrix {
  ObservedMatrix matrix;
  std::vector<std::int64_t> row_ids;
  std::vector<std::int64_t> col_ids;
};

// Cold-start and minimum-support thresholds.
struct FilterConfig {
  int min_support = 10;
  int min_users_per_item = 10;
  int min_entries_per_user = 3;
  // Repeat the three filters until nothing changes. When false a single pass
  // is made, and dropping rows may leave columns under their threshold.
  bool until_stable = true;

  void Validate() const;
};

// x_dn = accepted / submitted claims of user d in discipline n, support =
// submitted claims. Users and disciplines are indexed in increasing id order.
// Throws on empty input or a claim id repeated within a (user, discipline).
LabeledMatrix BuildEfficiencyMatrix(std::span<const ClaimRecord> records);

// Drops entries with support < min_support, then columns with fewer than
// min_users_per_item entries, then rows with fewer than min_entries_per_user
// entries, and reindexes densely. Throws std::runtime_error with the
// intermediate counts if nothing survives.
LabeledMatrix ApplyFilters(const LabeledMatrix& input, const FilterConfig& cfg);
ObservedMatrix ApplyFilters(const ObservedMatrix& input, const FilterConfig& cfg);

// Views divided by the user's largest view count. Repeated (user, item) rows
// are summed; zero-count rows are not observations, and users without any
// positive count disappear.
LabeledMatrix BuildRateMatrix(std::span<const ViewRecord> views);

// clicks / displays per (ad, category), support = displays. Repeated pairs
// are summed. Throws on clicks > displays or displays < 1.
LabeledMatrix BuildCtrMatrix(std::span<const CtrRecord> events);

// CSV readers for the raw logs. Headers must be exactly
//   claims: jobId,disciplineId,taskId,userId,claimId,approved
//   views:  userId,itemId,views
//   ctr:    adId,categoryId,displays,clicks
// Malformed input throws ParseError (see io.h) carrying the 1-based line.
std::vector<ClaimRecord> ReadClaimsCsv(std::istream& in);
std::vector<ViewRecord> ReadViewsCsv(std::istream& in);
std::vector<CtrRecord> ReadCtrCsv(std::istream& in);

struct SyntheticData {
  ObservedMatrix observed;
  FactorModel truth;
};

// Random feasible EMF model (bias ~ U[0, 0.3], w_dk ~ U[0, 1 - bias], z_n
// uniform on the simplex) with round(density * D * N) entries revealed
// uniformly at random. Throws if no entry would be revealed.
SyntheticData SynthEmf(int rows, int cols, int k, double density,
                       std::uint64_t seed);

// Random SMF model: W, Z ~ U(0,1), gamma_n ~ N(K/4, 0.25^2) (centred on the
// typical mean quality), values = survival at gamma_n with spread sigma.
SyntheticData SynthSmf(int rows, int cols, int k, double sigma, double density,
                       std::uint64_t seed);

}  // namespace boundmf::ingest

#endif  // BOUNDMF_INGEST_H_
