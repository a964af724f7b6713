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

#include "boundmf_cli/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boundmf/eval.h"
#include "boundmf/experiment.h"
#include "boundmf/ingest.h"
#include "boundmf/io.h"
#include "boundmf/predict.h"
#include "nlohmann/json.hpp"

namespace boundmf::cli {
namespace {

// Validation failure that should map to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void Close(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// --- ingest ---------------------------------------------------------------

struct IngestOptions {
  std::string kind;
  std::string input;
  std::string output;
  std::optional<int> min_support;
  std::optional<int> min_users_per_item;
  std::optional<int> min_entries_per_user;
  bool single_pass = false;
};

ingest::FilterConfig DefaultFilters(const std::string& kind) {
  ingest::FilterConfig cfg;
  if (kind == "views") {
    cfg.min_support = 1;
    cfg.min_users_per_item = 15;
    cfg.min_entries_per_user = 10;
  } else if (kind == "ctr") {
    cfg.min_support = 1;
    cfg.min_users_per_item = 10;
    cfg.min_entries_per_user = 5;
  }
  return cfg;
}

int RunIngest(const IngestOptions& opt, std::ostream& out) {
  ingest::FilterConfig cfg = DefaultFilters(opt.kind);
  if (opt.min_support) cfg.min_support = *opt.min_support;
  if (opt.min_users_per_item) cfg.min_users_per_item = *opt.min_users_per_item;
  if (opt.min_entries_per_user) cfg.min_entries_per_user = *opt.min_entries_per_user;
  cfg.until_stable = !opt.single_pass;
  cfg.Validate();

  std::ifstream in = OpenIn(opt.input);
  std::optional<ingest::LabeledMatrix> raw;
  if (opt.kind == "claims") {
    raw = ingest::BuildEfficiencyMatrix(ingest::ReadClaimsCsv(in));
  } else if (opt.kind == "views") {
    raw = ingest::BuildRateMatrix(ingest::ReadViewsCsv(in));
  } else {
    raw = ingest::BuildCtrMatrix(ingest::ReadCtrCsv(in));
  }
  const ingest::LabeledMatrix filtered = ingest::ApplyFilters(*raw, cfg);
  const ObservedMatrix& m = filtered.matrix;

  std::ofstream matrix_out = OpenOut(opt.output);
  io::WriteObservedCsv(matrix_out, m);
  Close(matrix_out, opt.output);
  const std::string index_path = opt.output + ".index.csv";
  std::ofstream index_out = OpenOut(index_path);
  io::WriteIndexCsv(index_out, filtered.row_ids, filtered.col_ids);
  Close(index_out, index_path);

  out << "D=" << m.rows() << " N=" << m.cols() << " entries=" << m.size()
      << " sparsity=" << std::fixed << std::setprecision(2)
      << 100.0 * m.Sparsity() << "%\n";
  out.unsetf(std::ios::floatfield);
  return kExitOk;
}

// --- train ----------------------------------------------------------------

struct HyperOptions {
  int k = 10;
  double lambda_u = 0.0;
  double lambda_i = 0.0;
  double learning_rate = 0.05;
  std::optional<int> batch_size;
  int max_epochs = 100;
  double rel_tolerance = 1e-6;

  Hyperparams Resolve(std::size_t entries, std::uint64_t seed) const {
    Hyperparams hp;
    hp.k = k;
    hp.lambda_u = lambda_u;
    hp.lambda_i = lambda_i;
    hp.learning_rate = learning_rate;
    hp.batch_size = batch_size.value_or(DefaultBatchSize(entries));
    hp.max_epochs = max_epochs;
    hp.rel_tolerance = rel_tolerance;
    hp.seed = seed;
    hp.Validate();
    return hp;
  }
};

void AddHyperOptions(CLI::App* cmd, HyperOptions& h) {
  cmd->add_option("--k", h.k, "Latent dimension")->capture_default_str();
  cmd->add_option("--lambda-u", h.lambda_u, "User-side penalty")->capture_default_str();
  cmd->add_option("--lambda-i", h.lambda_i, "Item-side penalty")->capture_default_str();
  cmd->add_option("--learning-rate", h.learning_rate, "SGD step size")
      ->capture_default_str();
  cmd->add_option("--batch-size", h.batch_size,
                  "Minibatch size (default 8 if fewer than 5000 entries, else 128)");
  cmd->add_option("--max-epochs", h.max_epochs, "Epoch / outer iteration cap")
      ->capture_default_str();
  cmd->add_option("--rel-tolerance", h.rel_tolerance,
                  "Stop when the relative objective decrease falls below this")
      ->capture_default_str();
}

ModelKind ParseAlgo(const std::string& name) {
  const std::optional<ModelKind> kind = ParseModelKind(name);
  if (!kind) throw UsageError("unknown algorithm '" + name + "'");
  return *kind;
}

ObservedMatrix LoadMatrix(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return io::ReadObservedCsv(in);
}

struct TrainOptions {
  std::string algo;
  std::string matrix;
  std::string model_out;
  std::string report_out;
  std::uint64_t seed = 0;
  HyperOptions hyper;
};

int RunTrain(const TrainOptions& opt, std::ostream& out) {
  const ModelKind kind = ParseAlgo(opt.algo);
  const ObservedMatrix observed = LoadMatrix(opt.matrix);
  const Hyperparams hp = opt.hyper.Resolve(observed.size(), opt.seed);
  const FitResult fit = FitModel(kind, observed, hp);

  std::ofstream model_out = OpenOut(opt.model_out);
  io::WriteModel(model_out, fit.model);
  Close(model_out, opt.model_out);
  if (!opt.report_out.empty()) {
    std::ofstream report_out = OpenOut(opt.report_out);
    io::WriteTrainReportCsv(report_out, fit.report);
    Close(report_out, opt.report_out);
  }
  const double final_objective = fit.report.objective_trajectory.empty()
                                     ? fit.report.initial_objective
                                     : fit.report.objective_trajectory.back();
  out << ModelKindName(kind) << " epochs=" << fit.report.epochs_run
      << " stop="
      << (fit.report.stop_reason == StopReason::kTolerance ? "tolerance"
                                                             : "max_epochs")
      << " objective=" << io::FormatDouble(final_objective) << "\n";
  return kExitOk;
}

// --- cv -------------------------------------------------------------------

struct CvOptions {
  std::string algo;
  std::string matrix;
  std::string grid;
  std::string split = "mc:3:0.2";
  std::string report;
  std::string best_out;
  std::uint64_t seed = 0;
  int jobs = 1;
  HyperOptions hyper;
};

nlohmann::json HyperJson(const Hyperparams& hp) {
  return {{"k", hp.k},
          {"lambda_u", hp.lambda_u},
          {"lambda_i", hp.lambda_i},
          {"learning_rate", hp.learning_rate},
          {"batch_size", hp.batch_size},
          {"max_epochs", hp.max_epochs},
          {"rel_tolerance", hp.rel_tolerance},
          {"seed", hp.seed}};
}

int RunCv(const CvOptions& opt, std::ostream& out) {
  const ModelKind kind = ParseAlgo(opt.algo);
  if (opt.jobs < 1) throw UsageError("--jobs must be >= 1");
  const ObservedMatrix observed = LoadMatrix(opt.matrix);
  const Hyperparams base = opt.hyper.Resolve(observed.size(), opt.seed);
  std::vector<Hyperparams> grid;
  std::vector<eval::SplitPlan> plans;
  try {
    grid = ParseGrid(opt.grid, base);
    plans = MakeSplits(opt.split, observed, opt.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const eval::CrossValidationResult cv =
      eval::CrossValidate(kind, observed, grid, plans, opt.jobs);

  std::ofstream report_out = OpenOut(opt.report);
  io::WriteEvalReportCsv(report_out, cv.report);
  Close(report_out, opt.report);

  if (!opt.best_out.empty()) {
    nlohmann::json doc;
    doc["algorithm"] = std::string(ModelKindName(kind));
    doc["split"] = opt.split;
    doc["best_index"] = cv.best_index;
    doc["best"] = HyperJson(cv.best);
    doc["mean_rmse"] = cv.mean_rmse;
    std::ofstream best_out = OpenOut(opt.best_out);
    best_out << doc.dump(2) << "\n";
    Close(best_out, opt.best_out);
  }

  out << ModelKindName(kind) << " best grid point " << cv.best_index << " of "
      << grid.size() << ": " << HyperJson(cv.best).dump() << "\n";
  for (const eval::MetricSummary& s : cv.report.Summaries()) {
    std::string name = s.metric;
    if (s.n > 0) name += "@" + std::to_string(s.n);
    char line[128];
    std::snprintf(line, sizeof(line), "%-14s %.4f (%.4f)\n", name.c_str(), s.mean,
                  s.std_error);
    out << line;
  }
  return kExitOk;
}

// --- fig2 -----------------------------------------------------------------

struct Fig2Options {
  std::string output;
  std::uint64_t seed = 0;
  int jobs = 1;
  int matrices = 5;
};

int RunFig2(const Fig2Options& opt, std::ostream& out) {
  if (opt.jobs < 1 || opt.matrices < 1) {
    throw UsageError("--jobs and --matrices must be >= 1");
  }
  experiment::MonotoneConfig config;
  config.jobs = opt.jobs;
  config.matrices = opt.matrices;
  const std::vector<experiment::MonotoneRow> rows =
      experiment::RunMonotone(config, experiment::DefaultMaps(), opt.seed);

  std::ofstream table = OpenOut(opt.output);
  table << "mapping,train_fraction,mean_rmse,stderr\n";
  for (const experiment::MonotoneRow& r : rows) {
    table << r.mapping << ',' << io::FormatDouble(r.train_fraction) << ','
          << io::FormatDouble(r.mean_rmse) << ',' << io::FormatDouble(r.std_error)
          << '\n';
  }
  Close(table, opt.output);
  out << "wrote " << rows.size() << " rows to " << opt.output << "\n";
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Bounded matrix factorization toolkit", "boundmf"};
  app.require_subcommand(1);

  IngestOptions ingest_opt;
  CLI::App* ingest_cmd =
      app.add_subcommand("ingest", "Build a filtered matrix from a raw log CSV");
  ingest_cmd->add_option("--kind", ingest_opt.kind, "Log type")
      ->required()
      ->check(CLI::IsMember({"claims", "views", "ctr"}));
  ingest_cmd->add_option("--input", ingest_opt.input, "Raw CSV")->required();
  ingest_cmd->add_option("--output", ingest_opt.output,
                         "Matrix CSV; ids go to <output>.index.csv")
      ->required();
  ingest_cmd->add_option("--min-support", ingest_opt.min_support);
  ingest_cmd->add_option("--min-users-per-item", ingest_opt.min_users_per_item);
  ingest_cmd->add_option("--min-entries-per-user", ingest_opt.min_entries_per_user);
  ingest_cmd->add_flag("--single-pass", ingest_opt.single_pass,
                       "Apply each filter once instead of until stable");

  TrainOptions train_opt;
  CLI::App* train_cmd = app.add_subcommand("train", "Fit one model");
  train_cmd->add_option("--algo", train_opt.algo, "mf|nmf|bmf|pmf|lmf|emf|smf")
      ->required();
  train_cmd->add_option("--matrix", train_opt.matrix, "Matrix CSV")->required();
  train_cmd->add_option("--model-out", train_opt.model_out, "Model file")->required();
  train_cmd->add_option("--report-out", train_opt.report_out,
                        "Training report CSV (epoch,objective)");
  train_cmd->add_option("--seed", train_opt.seed)->capture_default_str();
  AddHyperOptions(train_cmd, train_opt.hyper);

  CvOptions cv_opt;
  CLI::App* cv_cmd = app.add_subcommand("cv", "Grid search with cross-validation");
  cv_cmd->add_option("--algo", cv_opt.algo)->required();
  cv_cmd->add_option("--matrix", cv_opt.matrix)->required();
  cv_cmd->add_option("--grid", cv_opt.grid, "e.g. 'k=5,10;lambda_u=0.01,0.1'");
  cv_cmd->add_option("--split", cv_opt.split, "mc:<rounds>:<fraction> or kfold:<k>")
      ->capture_default_str();
  cv_cmd->add_option("--report", cv_opt.report, "Evaluation report CSV")->required();
  cv_cmd->add_option("--best-out", cv_opt.best_out, "Selected hyperparameters (JSON)");
  cv_cmd->add_option("--seed", cv_opt.seed)->required();
  cv_cmd->add_option("--jobs", cv_opt.jobs)->capture_default_str();
  AddHyperOptions(cv_cmd, cv_opt.hyper);

  Fig2Options fig2_opt;
  CLI::App* fig2_cmd =
      app.add_subcommand("fig2", "Monotone mapping experiment on random matrices");
  fig2_cmd->add_option("--output", fig2_opt.output, "Table CSV")->required();
  fig2_cmd->add_option("--seed", fig2_opt.seed)->required();
  fig2_cmd->add_option("--jobs", fig2_opt.jobs)->capture_default_str();
  fig2_cmd->add_option("--matrices", fig2_opt.matrices, "Random matrices per cell")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest_cmd) return RunIngest(ingest_opt, out);
    if (*train_cmd) return RunTrain(train_opt, out);
    if (*cv_cmd) return RunCv(cv_opt, out);
    return RunFig2(fig2_opt, out);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace boundmf::cli
