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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "boundmf/io.h"
#include "boundmf/smf.h"
#include "boundmf_cli/cli.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace boundmf::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream s(text);
  for (std::string line; std::getline(s, line);) lines.push_back(line);
  return lines;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("boundmf_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Ingests the claims fixture with default filters into matrix.csv.
  std::string IngestFixture() {
    const Result r = Invoke({"ingest", "--kind", "claims", "--input",
                             testing::DataPath("claims_fixture.csv"), "--output",
                             Path("matrix.csv")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return Path("matrix.csv");
  }

  fs::path dir_;
};

TEST_F(CliTest, IngestPrintsShapeAndSparsity) {
  const Result r = Invoke({"ingest", "--kind", "claims", "--input",
                           testing::DataPath("claims_fixture.csv"), "--output",
                           Path("m.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  // 72 of 20 x 4 cells observed.
  EXPECT_EQ(r.out, "D=20 N=4 entries=72 sparsity=10.00%\n");
  std::ifstream in(Path("m.csv"));
  EXPECT_EQ(io::ReadObservedCsv(in).size(), 72u);
  const std::vector<std::string> index = Lines(Slurp(Path("m.csv.index.csv")));
  ASSERT_EQ(index.size(), 1u + 20u + 4u);
  EXPECT_EQ(index[0], "axis,index,id");
  EXPECT_EQ(index[21], "col,0,100");
}

TEST_F(CliTest, IngestSmallFixtureWithRelaxedFilters) {
  const Result r = Invoke({"ingest", "--kind", "claims", "--input",
                           testing::DataPath("claims_3x2.csv"), "--output", Path("m.csv"),
                           "--min-users-per-item", "1", "--min-entries-per-user", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "D=3 N=2 entries=6 sparsity=0.00%\n");
}

TEST_F(CliTest, IngestMalformedBooleanIsUsageError) {
  const Result r = Invoke({"ingest", "--kind", "claims", "--input",
                           testing::DataPath("claims_bad_bool.csv"), "--output",
                           Path("m.csv")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST_F(CliTest, IngestOtherKinds) {
  const Result ctr = Invoke({"ingest", "--kind", "ctr", "--input",
                             testing::DataPath("ctr_fixture.csv"), "--output", Path("c.csv")});
  EXPECT_EQ(ctr.code, kExitOk) << ctr.err;
  const Result views = Invoke({"ingest", "--kind", "views", "--input",
                               testing::DataPath("views_fixture.csv"), "--output",
                               Path("v.csv"), "--min-users-per-item", "5",
                               "--min-entries-per-user", "5"});
  EXPECT_EQ(views.code, kExitOk) << views.err;
  EXPECT_EQ(Invoke({"ingest", "--kind", "logs", "--input", "x", "--output", "y"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"ingest", "--kind", "ctr", "--input", Path("missing.csv"), "--output",
                    Path("y.csv")})
                .code,
            kExitFailure);
}

TEST_F(CliTest, TrainWritesModelAndReport) {
  const std::string matrix = IngestFixture();
  const Result r = Invoke({"train", "--algo", "emf", "--k", "20", "--matrix", matrix,
                           "--model-out", Path("emf.model"), "--report-out",
                           Path("emf.csv"), "--max-epochs", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Lines(Slurp(Path("emf.model")))[0], "kind=EMF D=20 N=4 K=20");
  const std::vector<std::string> report = Lines(Slurp(Path("emf.csv")));
  EXPECT_EQ(report[0], "epoch,objective");
  EXPECT_LE(report.size(), 1u + 1u + 5u);
}

TEST_F(CliTest, TrainSmfReportStartsFromUnitSigma) {
  const std::string matrix = IngestFixture();
  const std::vector<std::string> args = {"train", "--algo", "SMF", "--matrix", matrix,
                                         "--model-out", Path("smf.model"), "--report-out",
                                         Path("smf.csv"), "--k", "3", "--seed", "4",
                                         "--max-epochs", "10"};
  ASSERT_EQ(Invoke(args).code, kExitOk);
  std::ifstream in(matrix);
  const ObservedMatrix observed = io::ReadObservedCsv(in);
  Hyperparams hp;
  hp.k = 3;
  hp.seed = 4;
  const FactorModel init = smf::Initialize(observed.rows(), observed.cols(), hp);
  ASSERT_EQ(*init.sigma, 1.0);
  const std::vector<std::string> report = Lines(Slurp(Path("smf.csv")));
  EXPECT_EQ(report[1], "0," + io::FormatDouble(smf::Objective(observed, init, hp)));

  const std::string first = Slurp(Path("smf.model"));
  ASSERT_EQ(Invoke(args).code, kExitOk);
  EXPECT_EQ(Slurp(Path("smf.model")), first);
}

TEST_F(CliTest, TrainRejectsUnknownAlgorithm) {
  const std::string matrix = IngestFixture();
  const Result r = Invoke({"train", "--algo", "svd", "--matrix", matrix, "--model-out",
                           Path("x.model")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("svd"), std::string::npos);
}

TEST_F(CliTest, CrossValidationReportsAndSelection) {
  const std::string matrix = IngestFixture();
  for (const std::string split : {"mc:3:0.2", "kfold:3"}) {
    const Result r = Invoke({"cv", "--algo", "emf", "--matrix", matrix, "--grid",
                             "k=1,2;lambda_u=0,0.01", "--split", split, "--report",
                             Path("cv.csv"), "--best-out", Path("best.json"), "--seed",
                             "3", "--max-epochs", "10", "--jobs", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::vector<std::string> report = Lines(Slurp(Path("cv.csv")));
    ASSERT_EQ(report.size(), 11u);
    EXPECT_EQ(report[0], "metric,N,mean,stderr");
    EXPECT_EQ(report[1].rfind("RMSE,,", 0), 0u);
    EXPECT_EQ(report[3].rfind("Precision,2,", 0), 0u);
    EXPECT_EQ(report[10].rfind("Recall,10,", 0), 0u);
    const std::string best = Slurp(Path("best.json"));
    EXPECT_NE(best.find("\"best_index\""), std::string::npos);
    EXPECT_NE(best.find("\"mean_rmse\""), std::string::npos);
  }
}

TEST_F(CliTest, CrossValidationUsageErrors) {
  const std::string matrix = IngestFixture();
  auto cv = [&](const std::string& grid, const std::string& split) {
    return Invoke({"cv", "--algo", "emf", "--matrix", matrix, "--grid", grid, "--split",
                   split, "--report", Path("cv.csv"), "--seed", "1"})
        .code;
  };
  EXPECT_EQ(cv("k=1,x", "mc:3:0.2"), kExitUsage);
  EXPECT_EQ(cv("depth=3", "mc:3:0.2"), kExitUsage);
  EXPECT_EQ(cv("k=1", "holdout"), kExitUsage);
  EXPECT_EQ(cv("k=1", "mc:3"), kExitUsage);
  EXPECT_EQ(Invoke({"cv", "--algo", "emf", "--matrix", matrix, "--report", "r.csv"}).code,
            kExitUsage);  // --seed is required
}

TEST_F(CliTest, Fig2TableIsDeterministic) {
  const std::vector<std::string> args = {"fig2", "--output", Path("fig2.csv"), "--seed",
                                         "5", "--matrices", "2"};
  ASSERT_EQ(Invoke(args).code, kExitOk);
  const std::string first = Slurp(Path("fig2.csv"));
  const std::vector<std::string> lines = Lines(first);
  ASSERT_EQ(lines.size(), 1u + 5u * 4u);
  EXPECT_EQ(lines[0], "mapping,train_fraction,mean_rmse,stderr");
  std::vector<std::string> parallel = args;
  parallel.insert(parallel.end(), {"--jobs", "3"});
  ASSERT_EQ(Invoke(parallel).code, kExitOk);
  EXPECT_EQ(Slurp(Path("fig2.csv")), first);
}

TEST(CliParseTest, HelpAndMissingSubcommand) {
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitUsage);
}

TEST(GridTest, CartesianProductOrder) {
  const std::vector<Hyperparams> g = ParseGrid("k=5,10;lambda_u=0.1,0.2,0.3", Hyperparams{});
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g[0].k, 5);
  EXPECT_EQ(g[2].lambda_u, 0.3);
  EXPECT_EQ(g[3].k, 10);
  EXPECT_EQ(ParseGrid("", Hyperparams{}).size(), 1u);
  EXPECT_THROW(ParseGrid("k=5;k=6", Hyperparams{}), std::invalid_argument);
  EXPECT_THROW(ParseGrid("k=0", Hyperparams{}), std::invalid_argument);
}

TEST(GridTest, DefaultBatchSizeRegimes) {
  EXPECT_EQ(DefaultBatchSize(4999), 8);
  EXPECT_EQ(DefaultBatchSize(5000), 128);
}

}  // namespace
}  // namespace boundmf::cli
