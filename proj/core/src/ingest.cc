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

#include "boundmf/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "boundmf/io.h"
#include "boundmf/projection.h"
#include "boundmf/random.h"
#include "boundmf/smf.h"

namespace boundmf::ingest {
namespace {

using Key = std::pair<std::int64_t, std::int64_t>;

struct Cell {
  double value = 0.0;
  std::int64_t support = 0;
};

// Dense indexing of (row id, col id) cells in increasing id order.
LabeledMatrix Densify(const std::map<Key, Cell>& cells) {
  std::set<std::int64_t> row_set, col_set;
  for (const auto& [key, cell] : cells) {
    row_set.insert(key.first);
    col_set.insert(key.second);
  }
  std::vector<std::int64_t> row_ids(row_set.begin(), row_set.end());
  std::vector<std::int64_t> col_ids(col_set.begin(), col_set.end());
  auto index_of = [](const std::vector<std::int64_t>& ids, std::int64_t id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) -
                            ids.begin());
  };
  std::vector<Entry> entries;
  entries.reserve(cells.size());
  for (const auto& [key, cell] : cells) {
    entries.push_back({index_of(row_ids, key.first), index_of(col_ids, key.second),
                       cell.value, cell.support});
  }
  const int rows = static_cast<int>(row_ids.size());
  const int cols = static_cast<int>(col_ids.size());
  return {ObservedMatrix(rows, cols, std::move(entries)), std::move(row_ids),
          std::move(col_ids)};
}

std::int64_t ParseInt(const std::string& field, int line, const char* name) {
  std::int64_t v = 0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw io::ParseError(line, std::string("bad integer in ") + name + ": '" +
                                   field + "'");
  }
  return v;
}

bool ParseBool(const std::string& field, int line) {
  std::string lower = field;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "true" || lower == "1") return true;
  if (lower == "false" || lower == "0") return false;
  throw io::ParseError(line, "bad boolean in approved: '" + field + "'");
}

// Calls `row(fields, line_no)` for each data line after checking the header.
template <typename RowFn>
void ReadCsv(std::istream& in, const std::vector<std::string>& header,
             RowFn&& row) {
  std::string line;
  if (!std::getline(in, line)) throw io::ParseError(1, "missing header");
  if (io::SplitCsvLine(line) != header) {
    std::string joined;
    for (const auto& h : header) joined += (joined.empty() ? "" : ",") + h;
    throw io::ParseError(1, "expected header '" + joined + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = io::SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw io::ParseError(line_no, "expected " + std::to_string(header.size()) +
                                        " fields, got " +
                                        std::to_string(fields.size()));
    }
    row(fields, line_no);
  }
}

// Reveals round(density * rows * cols) cells chosen uniformly.
std::vector<std::pair<int, int>> RevealCells(int rows, int cols, double density,
                                             Rng& rng) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("synthetic data: density must be in (0,1]");
  }
  const std::size_t total = static_cast<std::size_t>(rows) * cols;
  const auto count = static_cast<std::size_t>(
      std::llround(density * static_cast<double>(total)));
  if (count == 0) {
    throw std::invalid_argument("synthetic data: density reveals no entries");
  }
  std::vector<std::size_t> perm = rng.Permutation(total);
  perm.resize(count);
  std::sort(perm.begin(), perm.end());
  std::vector<std::pair<int, int>> cells;
  cells.reserve(count);
  for (std::size_t p : perm) {
    cells.emplace_back(static_cast<int>(p / cols), static_cast<int>(p % cols));
  }
  return cells;
}

void CheckShape(int rows, int cols, int k) {
  if (rows < 1 || cols < 1 || k < 1) {
    throw std::invalid_argument("synthetic data: D, N and K must be positive");
  }
}

}  // namespace

void FilterConfig::Validate() const {
  if (min_support < 1 || min_users_per_item < 1 || min_entries_per_user < 1) {
    throw std::invalid_argument("FilterConfig: thresholds must be >= 1");
  }
}

LabeledMatrix BuildEfficiencyMatrix(std::span<const ClaimRecord> records) {
  if (records.empty()) {
    throw std::invalid_argument("BuildEfficiencyMatrix: no claim records");
  }
  std::map<Key, std::pair<std::int64_t, std::int64_t>> counts;  // accepted, total
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> claim_ids;
  for (const ClaimRecord& r : records) {
    if (!claim_ids.emplace(r.user_id, r.discipline_id, r.claim_id).second) {
      throw std::invalid_argument(
          "BuildEfficiencyMatrix: claim " + std::to_string(r.claim_id) +
          " repeated for user " + std::to_string(r.user_id) +
          " in discipline " + std::to_string(r.discipline_id));
    }
    auto& c = counts[{r.user_id, r.discipline_id}];
    c.first += r.approved ? 1 : 0;
    c.second += 1;
  }
  std::map<Key, Cell> cells;
  for (const auto& [key, c] : counts) {
    cells[key] = {static_cast<double>(c.first) / static_cast<double>(c.second),
                  c.second};
  }
  return Densify(cells);
}

LabeledMatrix ApplyFilters(const LabeledMatrix& input, const FilterConfig& cfg) {
  cfg.Validate();
  const ObservedMatrix& m = input.matrix;
  std::vector<char> keep(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) keep[i] = m[i].support >= cfg.min_support;
  const std::size_t after_support = std::count(keep.begin(), keep.end(), 1);
  std::size_t after_cols = after_support;

  bool changed = true;
  for (int pass = 0; changed && (pass == 0 || cfg.until_stable); ++pass) {
    changed = false;
    std::vector<int> col_count(m.cols(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) col_count[m[i].col] += keep[i];
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (keep[i] && col_count[m[i].col] < cfg.min_users_per_item) {
        keep[i] = 0;
        changed = true;
      }
    }
    if (pass == 0) after_cols = std::count(keep.begin(), keep.end(), 1);
    std::vector<int> row_count(m.rows(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) row_count[m[i].row] += keep[i];
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (keep[i] && row_count[m[i].row] < cfg.min_entries_per_user) {
        keep[i] = 0;
        changed = true;
      }
    }
  }

  std::map<Key, Cell> cells;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!keep[i]) continue;
    cells[{input.row_ids[m[i].row], input.col_ids[m[i].col]}] = {m[i].value,
                                                                m[i].support};
  }
  if (cells.empty()) {
    throw std::runtime_error(
        "ApplyFilters: no entries left (input " + std::to_string(m.size()) +
        ", after support filter " + std::to_string(after_support) +
        ", after column filter " + std::to_string(after_cols) +
        ", after row filter 0)");
  }
  return Densify(cells);
}

ObservedMatrix ApplyFilters(const ObservedMatrix& input, const FilterConfig& cfg) {
  LabeledMatrix labeled{input, {}, {}};
  for (int d = 0; d < input.rows(); ++d) labeled.row_ids.push_back(d);
  for (int n = 0; n < input.cols(); ++n) labeled.col_ids.push_back(n);
  return ApplyFilters(labeled, cfg).matrix;
}

LabeledMatrix BuildRateMatrix(std::span<const ViewRecord> views) {
  if (views.empty()) throw std::invalid_argument("BuildRateMatrix: no view records");
  std::map<Key, std::int64_t> totals;
  for (const ViewRecord& v : views) {
    if (v.views < 0) throw std::invalid_argument("BuildRateMatrix: negative view count");
    totals[{v.user_id, v.item_id}] += v.views;
  }
  std::map<std::int64_t, std::int64_t> user_max;
  for (const auto& [key, count] : totals) {
    auto& best = user_max[key.first];
    best = std::max(best, count);
  }
  std::map<Key, Cell> cells;
  for (const auto& [key, count] : totals) {
    if (count == 0) continue;
    cells[key] = {static_cast<double>(count) /
                      static_cast<double>(user_max[key.first]),
                  count};
  }
  if (cells.empty()) {
    throw std::invalid_argument("BuildRateMatrix: every view count is zero");
  }
  return Densify(cells);
}

LabeledMatrix BuildCtrMatrix(std::span<const CtrRecord> events) {
  if (events.empty()) throw std::invalid_argument("BuildCtrMatrix: no events");
  std::map<Key, std::pair<std::int64_t, std::int64_t>> totals;  // clicks, displays
  for (const CtrRecord& e : events) {
    if (e.displays < 1) {
      throw std::invalid_argument("BuildCtrMatrix: displays must be >= 1 (ad " +
                                  std::to_string(e.ad_id) + ")");
    }
    if (e.clicks < 0 || e.clicks > e.displays) {
      throw std::invalid_argument("BuildCtrMatrix: clicks exceed displays (ad " +
                                  std::to_string(e.ad_id) + ")");
    }
    auto& t = totals[{e.ad_id, e.category_id}];
    t.first += e.clicks;
    t.second += e.displays;
  }
  std::map<Key, Cell> cells;
  for (const auto& [key, t] : totals) {
    cells[key] = {static_cast<double>(t.first) / static_cast<double>(t.second),
                  t.second};
  }
  return Densify(cells);
}

std::vector<ClaimRecord> ReadClaimsCsv(std::istream& in) {
  std::vector<ClaimRecord> out;
  ReadCsv(in, {"jobId", "disciplineId", "taskId", "userId", "claimId", "approved"},
          [&](const std::vector<std::string>& f, int line) {
            out.push_back({ParseInt(f[0], line, "jobId"),
                           ParseInt(f[1], line, "disciplineId"),
                           ParseInt(f[2], line, "taskId"),
                           ParseInt(f[3], line, "userId"),
                           ParseInt(f[4], line, "claimId"), ParseBool(f[5], line)});
          });
  return out;
}

std::vector<ViewRecord> ReadViewsCsv(std::istream& in) {
  std::vector<ViewRecord> out;
  ReadCsv(in, {"userId", "itemId", "views"},
          [&](const std::vector<std::string>& f, int line) {
            ViewRecord r{ParseInt(f[0], line, "userId"),
                         ParseInt(f[1], line, "itemId"),
                         ParseInt(f[2], line, "views")};
            if (r.views < 0) throw io::ParseError(line, "negative view count");
            out.push_back(r);
          });
  return out;
}

std::vector<CtrRecord> ReadCtrCsv(std::istream& in) {
  std::vector<CtrRecord> out;
  ReadCsv(in, {"adId", "categoryId", "displays", "clicks"},
          [&](const std::vector<std::string>& f, int line) {
            CtrRecord r{ParseInt(f[0], line, "adId"),
                        ParseInt(f[1], line, "categoryId"),
                        ParseInt(f[2], line, "displays"),
                        ParseInt(f[3], line, "clicks")};
            if (r.displays < 1) throw io::ParseError(line, "displays must be >= 1");
            if (r.clicks < 0 || r.clicks > r.displays) {
              throw io::ParseError(line, "clicks must be in [0, displays]");
            }
            out.push_back(r);
          });
  return out;
}

SyntheticData SynthEmf(int rows, int cols, int k, double density,
                       std::uint64_t seed) {
  CheckShape(rows, cols, k);
  Rng rng = Rng(seed).Split(0);
  FactorModel truth;
  truth.kind = ModelKind::kEMF;
  truth.W.resize(rows, k);
  truth.Z.resize(cols, k);
  Eigen::VectorXd bias(rows);
  for (int d = 0; d < rows; ++d) {
    bias(d) = rng.Uniform(0.0, 0.3);
    for (int j = 0; j < k; ++j) truth.W(d, j) = rng.Uniform(0.0, 1.0 - bias(d));
  }
  // Gaps between sorted uniforms are uniform on the simplex.
  std::vector<double> cuts(k + 1);
  for (int n = 0; n < cols; ++n) {
    cuts[0] = 0.0;
    cuts[k] = 1.0;
    for (int j = 1; j < k; ++j) cuts[j] = rng.Uniform();
    std::sort(cuts.begin() + 1, cuts.begin() + k);
    for (int j = 0; j < k; ++j) truth.Z(n, j) = cuts[j + 1] - cuts[j];
    truth.Z.row(n) = projection::ProjectSimplex(truth.Z.row(n).transpose()).transpose();
  }
  truth.user_bias = bias;

  Rng reveal = Rng(seed).Split(1);
  std::vector<Entry> entries;
  for (const auto& [d, n] : RevealCells(rows, cols, density, reveal)) {
    const double x =
        ((truth.W.row(d).array() + bias(d)) * truth.Z.row(n).array()).sum();
    entries.push_back({d, n, std::clamp(x, 0.0, 1.0), 1});
  }
  return {ObservedMatrix(rows, cols, std::move(entries)), std::move(truth)};
}

SyntheticData SynthSmf(int rows, int cols, int k, double sigma, double density,
                       std::uint64_t seed) {
  CheckShape(rows, cols, k);
  if (!(sigma >= kSigmaMin)) {
    throw std::invalid_argument("SynthSmf: sigma below the floor");
  }
  Rng rng = Rng(seed).Split(0);
  FactorModel truth;
  truth.kind = ModelKind::kSMF;
  truth.W.resize(rows, k);
  truth.Z.resize(cols, k);
  for (int d = 0; d < rows; ++d)
    for (int j = 0; j < k; ++j) truth.W(d, j) = rng.Uniform();
  for (int n = 0; n < cols; ++n)
    for (int j = 0; j < k; ++j) truth.Z(n, j) = rng.Uniform();
  Eigen::VectorXd gamma(cols);
  for (int n = 0; n < cols; ++n) gamma(n) = rng.Normal(0.25 * k, 0.25);
  truth.thresholds = gamma;
  truth.sigma = sigma;

  Rng reveal = Rng(seed).Split(1);
  std::vector<Entry> entries;
  for (const auto& [d, n] : RevealCells(rows, cols, density, reveal)) {
    entries.push_back({d, n, smf::Predict(truth, d, n), 1});
  }
  return {ObservedMatrix(rows, cols, std::move(entries)), std::move(truth)};
}

}  // namespace boundmf::ingest
