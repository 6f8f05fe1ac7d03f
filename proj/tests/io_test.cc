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

#include "json.hpp"
#include "shapreg/error.h"
#include "shapreg/io.h"
#include "shapreg/report.h"
#include "test_util.h"

namespace shapreg {
namespace {

using testing::Vec;

const std::filesystem::path kData = SHAPREG_TEST_DATA_DIR;

TEST(CsvTest, ParsesHeaderAndRows) {
  const CsvTable t = ParseCsv("a, b\n1,2.5\n\n-3,4e-1\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.data.rows(), 2);
  EXPECT_EQ(t.data(0, 1), 2.5);
  EXPECT_EQ(t.data(1, 0), -3.0);
  EXPECT_EQ(t.data(1, 1), 0.4);
}

TEST(CsvTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseCsv(""), Error);
  EXPECT_THROW(ParseCsv("a,b\n1\n"), Error);
  EXPECT_THROW(ParseCsv("a,b\n1,x\n"), Error);
  try {
    ReadCsv(kData / "missing.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(CsvTest, LabelColumnByNameOrIndex) {
  const CsvTable t = ReadCsv(kData / "labeled.csv");
  EXPECT_EQ(ColumnIndex(t, "y"), 2);
  EXPECT_EQ(ColumnIndex(t, "4"), 4);
  EXPECT_THROW(ColumnIndex(t, "z"), Error);
  EXPECT_THROW(ColumnIndex(t, "5"), Error);
  const LabeledData split = SplitLabels(t, 2);
  EXPECT_EQ(split.features.cols(), 4);
  EXPECT_EQ(split.labels[0], 1.5);
  EXPECT_EQ(split.features(0, 2), 2.0);
}

TEST(ModelIoTest, LoadsRelativeBackground) {
  const TabularModel m = LoadModel(kData / "linear_model.json");
  EXPECT_EQ(m.kind, TabularModel::Kind::kLinear);
  EXPECT_EQ(m.features(), 4);
  EXPECT_EQ(m.background.rows(), 6);
  EXPECT_EQ(m.intercept, 0.25);
  const TabularModel l = LoadModel(kData / "logistic_model.json");
  EXPECT_EQ(l.kind, TabularModel::Kind::kLogistic);
  EXPECT_EQ(l.background.rows(), 4);
}

TEST(ModelIoTest, RejectsBadModels) {
  EXPECT_THROW(ParseModel("{", "."), Error);
  EXPECT_THROW(ParseModel(R"({"kind":"tree","coefficients":[1],"background":[[0]]})", "."),
               Error);
  EXPECT_THROW(ParseModel(R"({"coefficients":[1,2],"background":[[0]]})", "."), Error);
  EXPECT_THROW(ParseModel(R"({"coefficients":[1]})", "."), Error);
  EXPECT_THROW(ParseModel(R"({"coefficients":"x","background":[[0]]})", "."), Error);
}

Estimate SampleEstimate() {
  Estimate e;
  e.values = Vec({0.5, -0.25});
  e.std_errors = Vec({0.1, 0.2});
  e.covariance = Eigen::MatrixXd::Identity(2, 2);
  e.has_covariance = true;
  e.n = 100;
  e.game_evals = 200;
  e.converged = true;
  e.forecasts.push_back({50, 120});
  return e;
}

TEST(ReportTest, EstimateJsonSchema) {
  const auto j = nlohmann::json::parse(FormatEstimate(SampleEstimate(), Format::kJson, true));
  for (const char* key : {"values", "std_errors", "ci95", "covariance", "n_samples",
                          "game_evals", "converged", "forecasts"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["values"][1].get<double>(), -0.25);
  EXPECT_NEAR(j["ci95"][0][0].get<double>(), 0.5 - 1.96 * 0.1, 1e-15);
  EXPECT_NEAR(j["ci95"][1][1].get<double>(), -0.25 + 1.96 * 0.2, 1e-15);
  EXPECT_EQ(j["n_samples"], 100);
  EXPECT_EQ(j["forecasts"][0]["forecast"], 120);
  EXPECT_EQ(j["covariance"][0][0], 1.0);
  const auto no_cov =
      nlohmann::json::parse(FormatEstimate(SampleEstimate(), Format::kJson, false));
  EXPECT_TRUE(no_cov["covariance"].is_null());
}

TEST(ReportTest, FullPrecisionAndNan) {
  Estimate e = SampleEstimate();
  e.values[0] = 0.1 + 0.2;
  e.std_errors[1] = std::nan("");
  const auto j = nlohmann::json::parse(FormatEstimate(e, Format::kJson, false));
  EXPECT_EQ(j["values"][0].get<double>(), 0.1 + 0.2);
  EXPECT_TRUE(j["std_errors"][1].is_null());
}

TEST(ReportTest, EstimateCsv) {
  const std::string csv = FormatEstimate(SampleEstimate(), Format::kCsv, false);
  const CsvTable t = ParseCsv(csv);
  EXPECT_EQ(t.header,
            (std::vector<std::string>{"index", "value", "std_error", "ci_lo", "ci_hi"}));
  ASSERT_EQ(t.data.rows(), 2);
  EXPECT_EQ(t.data(1, 1), -0.25);
  EXPECT_NEAR(t.data(0, 4), 0.5 + 1.96 * 0.1, 1e-15);
}

TEST(ReportTest, ExactEstimateHasZeroErrors) {
  const Estimate e = ExactEstimate(Vec({1.0, 2.0}), 4);
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.std_errors, Eigen::VectorXd::Zero(2));
  EXPECT_EQ(e.CiLower(), e.values);
}

TEST(IoTest, WriteFileRoundTrip) {
  const auto path = std::filesystem::path(::testing::TempDir()) / "shapreg_io_test.txt";
  WriteFile(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "hello");
  EXPECT_THROW(WriteFile("/nonexistent-dir/x.txt", "x"), Error);
}

}  // namespace
}  // namespace shapreg
