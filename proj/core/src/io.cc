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

#include "boundmf/io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <system_error>

namespace boundmf::io {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T ParseNumber(const std::string& field, int line, const char* what) {
  T value{};
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line, std::string("bad ") + what + " '" + field + "'");
  }
  return value;
}

void ExpectHeader(std::istream& in, const std::vector<std::string>& expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (SplitCsvLine(line) != expected) {
    std::string joined;
    for (const auto& f : expected) joined += (joined.empty() ? "" : ",") + f;
    throw ParseError(1, "expected header '" + joined + "'");
  }
}

void WriteRows(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << FormatDouble(m(r, c));
    }
    out << '\n';
  }
}

void WriteVector(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << FormatDouble(v(i)) << '\n';
}

}  // namespace

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string_view field =
        line.substr(start, comma == std::string_view::npos ? line.npos
                                                           : comma - start);
    fields.emplace_back(Trim(field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string FormatDouble(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteObservedCsv(std::ostream& out, const ObservedMatrix& m) {
  out << "row,col,value,support\n";
  for (const Entry& e : m.entries()) {
    out << e.row << ',' << e.col << ',' << FormatDouble(e.value) << ','
        << e.support << '\n';
  }
}

ObservedMatrix ReadObservedCsv(std::istream& in, std::optional<int> rows,
                               std::optional<int> cols) {
  ExpectHeader(in, {"row", "col", "value", "support"});
  std::vector<Entry> entries;
  std::string line;
  int line_no = 1;
  int max_row = -1, max_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 4) throw ParseError(line_no, "expected 4 fields");
    Entry e;
    e.row = ParseNumber<int>(f[0], line_no, "row");
    e.col = ParseNumber<int>(f[1], line_no, "col");
    e.value = ParseNumber<double>(f[2], line_no, "value");
    e.support = ParseNumber<std::int64_t>(f[3], line_no, "support");
    if (e.row < 0 || e.col < 0) throw ParseError(line_no, "negative index");
    if (!(e.value >= 0.0 && e.value <= 1.0)) {
      throw ParseError(line_no, "value outside [0,1]");
    }
    if (e.support < 1) throw ParseError(line_no, "support must be >= 1");
    max_row = std::max(max_row, e.row);
    max_col = std::max(max_col, e.col);
    entries.push_back(e);
  }
  if (entries.empty() && (!rows || !cols)) {
    throw ParseError(line_no, "no entries");
  }
  return ObservedMatrix(rows.value_or(max_row + 1), cols.value_or(max_col + 1),
                        std::move(entries));
}

void WriteIndexCsv(std::ostream& out, const std::vector<std::int64_t>& row_ids,
                   const std::vector<std::int64_t>& col_ids) {
  out << "axis,index,id\n";
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    out << "row," << i << ',' << row_ids[i] << '\n';
  }
  for (std::size_t i = 0; i < col_ids.size(); ++i) {
    out << "col," << i << ',' << col_ids[i] << '\n';
  }
}

void WriteModel(std::ostream& out, const FactorModel& model) {
  out << "kind=" << ModelKindName(model.kind) << " D=" << model.rows()
      << " N=" << model.cols() << " K=" << model.rank() << '\n';
  out << "[W]\n";
  WriteRows(out, model.W);
  out << "[Z]\n";
  WriteRows(out, model.Z);
  if (model.user_bias) {
    out << "[beta]\n";
    WriteVector(out, *model.user_bias);
  }
  if (model.item_bias) {
    out << "[item_bias]\n";
    WriteVector(out, *model.item_bias);
  }
  if (model.global_mean) {
    out << "[global_mean]\n" << FormatDouble(*model.global_mean) << '\n';
  }
  if (model.thresholds) {
    out << "[gamma]\n";
    WriteVector(out, *model.thresholds);
  }
  if (model.sigma) out << "[sigma]\n" << FormatDouble(*model.sigma) << '\n';
}

FactorModel ReadModel(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty model file");
  char kind_buf[16] = {};
  int rows = 0, cols = 0, rank = 0;
  if (std::sscanf(line.c_str(), "kind=%15s D=%d N=%d K=%d", kind_buf, &rows,
                  &cols, &rank) != 4 ||
      rows < 1 || cols < 1 || rank < 1) {
    throw ParseError(1, "bad model header");
  }
  const auto kind = ParseModelKind(kind_buf);
  if (!kind) throw ParseError(1, std::string("unknown model kind ") + kind_buf);

  std::map<std::string, std::vector<std::vector<double>>> sections;
  std::vector<std::vector<double>>* current = nullptr;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = Trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(line_no, "bad section header");
      current = &sections[std::string(t.substr(1, t.size() - 2))];
      continue;
    }
    if (current == nullptr) throw ParseError(line_no, "data before a section");
    std::vector<double> row;
    for (const auto& f : SplitCsvLine(t)) {
      row.push_back(ParseNumber<double>(f, line_no, "number"));
    }
    current->push_back(std::move(row));
  }

  auto matrix = [&](const char* name, int r, int c) {
    const auto it = sections.find(name);
    if (it == sections.end()) throw ParseError(line_no, std::string("missing [") + name + "]");
    if (static_cast<int>(it->second.size()) != r) {
      throw ParseError(line_no, std::string("wrong row count in [") + name + "]");
    }
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(it->second[i].size()) != c) {
        throw ParseError(line_no, std::string("wrong width in [") + name + "]");
      }
      for (int j = 0; j < c; ++j) m(i, j) = it->second[i][j];
    }
    return m;
  };
  auto vector = [&](const char* name, int n) -> std::optional<Eigen::VectorXd> {
    if (!sections.count(name)) return std::nullopt;
    return Eigen::VectorXd(matrix(name, n, 1).col(0));
  };
  auto scalar = [&](const char* name) -> std::optional<double> {
    if (!sections.count(name)) return std::nullopt;
    return matrix(name, 1, 1)(0, 0);
  };

  FactorModel model;
  model.kind = *kind;
  model.W = matrix("W", rows, rank);
  model.Z = matrix("Z", cols, rank);
  model.user_bias = vector("beta", rows);
  model.item_bias = vector("item_bias", cols);
  model.global_mean = scalar("global_mean");
  model.thresholds = vector("gamma", cols);
  model.sigma = scalar("sigma");
  return model;
}

void WriteTrainReportCsv(std::ostream& out, const TrainReport& report) {
  out << "epoch,objective\n";
  out << 0 << ',' << FormatDouble(report.initial_objective) << '\n';
  for (std::size_t i = 0; i < report.objective_trajectory.size(); ++i) {
    out << i + 1 << ',' << FormatDouble(report.objective_trajectory[i]) << '\n';
  }
}

void WriteEvalReportCsv(std::ostream& out, const eval::EvalReport& report) {
  out << "metric,N,mean,stderr\n";
  for (const eval::MetricSummary& s : report.Summaries()) {
    out << s.metric << ',';
    if (s.n > 0) out << s.n;
    out << ',' << FormatDouble(s.mean) << ',' << FormatDouble(s.std_error) << '\n';
  }
}

}  // namespace boundmf::io
