// Copyright 2026 The shapreg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "json.hpp"
#include "shapreg/diagnostics.h"
#include "shapreg/games.h"
#include "shapreg/io.h"

namespace shapreg::cli {
namespace {

const std::filesystem::path kData = SHAPREG_TEST_DATA_DIR;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = Run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Path(const char* name) { return (kData / name).string(); }

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Eigen::VectorXd Values(const nlohmann::json& j, const char* key) {
  const auto v = j.at(key).get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

TEST(CliTest, ExactUnanimity) {
  const Result r = Invoke({"exact", "--game", "unanimity:d=3,T=1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["values"], nlohmann::json({0.5, 0.5, 0.0}));
  EXPECT_EQ(j["converged"], true);
}

TEST(CliTest, ExactOverCapIsInputError) {
  const Result r = Invoke({"exact", "--game", "random:d=21,seed=1"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("capped"), std::string::npos);
}

TEST(CliTest, InputErrors) {
  EXPECT_EQ(Invoke({"exact", "--game", "banzhaf:d=3"}).code, kExitInput);
  EXPECT_EQ(Invoke({"exact", "--game", "no-such-file.json"}).code, kExitInput);
  EXPECT_EQ(Invoke({"explain", "--game", "random:d=3", "--bogus"}).code, kExitInput);
  EXPECT_EQ(Invoke({"explain"}).code, kExitInput);
  EXPECT_EQ(Invoke({}).code, kExitInput);
  EXPECT_EQ(Invoke({"explain", "--game", "random:d=3", "--threshold", "2"}).code,
            kExitInput);
  EXPECT_EQ(Invoke({"explain", "--game", "random:d=3", "--estimator", "fast"}).code,
            kExitInput);
  EXPECT_EQ(Invoke({"explain", "--game", Path("linear_model.json"), "--instance", "6"}).code,
            kExitInput);
  // Without --labels the label column stays, giving five columns for four features.
  EXPECT_EQ(Invoke({"explain", "--game", Path("linear_model.json"), "--data",
                    Path("labeled.csv")})
                .code,
            kExitInput);
  EXPECT_EQ(Invoke({"sage", "--game", Path("linear_model.json"), "--data",
                    Path("labeled.csv")})
                .code,
            kExitInput);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST(CliTest, NonConvergenceAtCap) {
  const Result r = Invoke({"explain", "--game", "random:d=8,seed=1", "--estimator",
                           "unbiased", "--max-samples", "300", "--format", "csv"});
  EXPECT_EQ(r.code, kExitNotConverged);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(CliTest, ExplainLinearModelMatchesClosedForm) {
  const TabularModel model = LoadModel(kData / "linear_model.json");
  const int row = 2;
  const Eigen::VectorXd x = model.background.row(row).transpose();
  const Eigen::VectorXd mean = model.background.colwise().mean().transpose();
  const Eigen::VectorXd expected = model.coefficients.cwiseProduct(x - mean);
  for (const char* estimator : {"original", "unbiased"}) {
    const Result r = Invoke({"explain", "--game", Path("linear_model.json"), "--instance",
                             std::to_string(row), "--estimator", estimator, "--seed", "5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    const Eigen::VectorXd values = Values(j, "values");
    const Eigen::VectorXd errors = Values(j, "std_errors");
    for (int i = 0; i < 4; ++i) {
      EXPECT_LE(std::abs(values[i] - expected[i]), 3.0 * errors[i] + 1e-12)
          << estimator << " feature " << i;
    }
  }
}

TEST(CliTest, SageMatchesStochasticOracle) {
  const TabularModel model = LoadModel(kData / "linear_model.json");
  const LabeledData data = SplitLabels(ReadCsv(kData / "labeled.csv"), 2);
  const SageGame game(model, data.features, data.labels, Loss::kSquared);
  const Eigen::VectorXd oracle = ShapleyExactStochastic(game);
  const Result r = Invoke({"sage", "--game", Path("linear_model.json"), "--data",
                           Path("labeled.csv"), "--labels", "y", "--seed", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const Eigen::VectorXd values = Values(j, "values");
  const Eigen::VectorXd errors = Values(j, "std_errors");
  for (int i = 0; i < 4; ++i) {
    EXPECT_LE(std::abs(values[i] - oracle[i]), 3.0 * errors[i] + 1e-12) << i;
  }
}

TEST(CliTest, EffectsDummyFeatureCiContainsZero) {
  const Result r = Invoke({"effects", "--game", Path("linear_model.json"), "--data",
                           Path("labeled.csv"), "--labels", "y", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CsvTable t = ParseCsv(r.out);
  ASSERT_EQ(t.data.rows(), 4);
  EXPECT_LE(t.data(3, 3), 0.0);
  EXPECT_GE(t.data(3, 4), 0.0);
}

TEST(CliTest, ConstantModelGivesZeros) {
  for (const char* command : {"sage", "effects"}) {
    const Result r = Invoke({command, "--game", Path("constant_model.json"), "--data",
                             Path("labeled.csv"), "--labels", "y"});
    ASSERT_EQ(r.code, kExitOk) << command << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const double v : j["values"]) EXPECT_NEAR(v, 0.0, 1e-12);
    EXPECT_LE(j["n_samples"].get<std::int64_t>(), 4 * DefaultBatchSize(4));
  }
}

TEST(CliTest, LogisticCrossEntropy) {
  const Result sage = Invoke({"sage", "--game", Path("logistic_model.json"), "--data",
                              Path("binary.csv"), "--labels", "y", "--loss",
                              "cross_entropy", "--threshold", "0.05"});
  EXPECT_EQ(sage.code, kExitOk) << sage.err;
  const Result effects = Invoke({"effects", "--game", Path("logistic_model.json"),
                                 "--loss", "cross_entropy", "--threshold", "0.05"});
  EXPECT_EQ(effects.code, kExitOk) << effects.err;
}

TEST(CliTest, GvReport) {
  const Result r = Invoke({"gv", "--game", "random:d=6,seed=4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j["min_diag"].get<double>(), -1e-10);
  EXPECT_EQ(j["g"].size(), 6u);
  EXPECT_EQ(Invoke({"gv", "--game", "random:d=13,seed=4"}).code, kExitInput);
}

TEST(CliTest, BenchCsvRows) {
  const Result r = Invoke({"bench", "--game", "random:d=4,seed=1", "--runs", "10", "--n",
                           "256", "--threshold", "0.05", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::map<std::string, int> sections;
  std::getline(lines, line);
  const auto columns = std::count(line.begin(), line.end(), ',');
  while (std::getline(lines, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), columns) << line;
    ++sections[line.substr(0, line.find(','))];
  }
  EXPECT_EQ(sections["variant"], 4);
  EXPECT_EQ(sections["sweep"], 4);
  EXPECT_EQ(sections["ratio"], 6);
  EXPECT_EQ(sections["forecast"], 1);
}

TEST(CliTest, ByteIdenticalOutputUnderSeed) {
  const auto dir = std::filesystem::path(::testing::TempDir());
  const std::vector<std::vector<std::string>> commands = {
      {"explain", "--game", "random:d=7,seed=3", "--seed", "11", "--covariance"},
      {"explain", "--game", "random:d=7,seed=3", "--seed", "11", "--estimator", "unbiased",
       "--no-paired", "--format", "csv"},
      {"sage", "--game", Path("linear_model.json"), "--data", Path("labeled.csv"),
       "--labels", "y", "--seed", "4"},
      {"effects", "--game", Path("linear_model.json"), "--seed", "4", "--estimator",
       "unbiased"},
      {"exact", "--game", "majority:d=5"},
      {"gv", "--game", "random:d=5,seed=2", "--format", "csv"},
      {"bench", "--game", "random:d=4,seed=1", "--runs", "5", "--n", "128", "--threshold",
       "0.05", "--seed", "3"}};
  int index = 0;
  for (auto args : commands) {
    const auto a = dir / ("shapreg_det_a_" + std::to_string(index) + ".out");
    const auto b = dir / ("shapreg_det_b_" + std::to_string(index) + ".out");
    ++index;
    auto with_a = args;
    with_a.insert(with_a.end(), {"--out", a.string()});
    auto with_b = args;
    with_b.insert(with_b.end(), {"--out", b.string()});
    ASSERT_EQ(Invoke(with_a).code, kExitOk) << args[0];
    ASSERT_EQ(Invoke(with_b).code, kExitOk) << args[0];
    const std::string first = ReadFile(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, ReadFile(b)) << args[0];
  }
}

TEST(CliTest, SeedChangesOutput) {
  const Result a = Invoke({"explain", "--game", "random:d=6,seed=3", "--seed", "1"});
  const Result b = Invoke({"explain", "--game", "random:d=6,seed=3", "--seed", "2"});
  EXPECT_NE(a.out, b.out);
}

TEST(CliTest, VerboseLogsBatches) {
  const Result r = Invoke({"explain", "--game", "random:d=6,seed=3", "--verbose",
                           "--estimator", "unbiased"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("n=512 ratio="), std::string::npos) << r.err;
}

}  // namespace
}  // namespace shapreg::cli
