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

#ifndef SHAPREG_IO_H_
#define SHAPREG_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shapreg/model.h"

namespace shapreg {

// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> header;
  RowMatrix data;
};

// Throws kIo when the file is missing and kConfiguration on malformed rows.
CsvTable ReadCsv(const std::filesystem::path& path);
CsvTable ParseCsv(const std::string& text, const std::string& source = "<csv>");

// Resolves a label column given by name or by 0-based index.
int ColumnIndex(const CsvTable& table, const std::string& column);

struct LabeledData {
  RowMatrix features;
  Eigen::VectorXd labels;
};

// Splits the label column off the table.
LabeledData SplitLabels(const CsvTable& table, int label_column);

// Model JSON:
//   {"kind": "linear" | "logistic", "coefficients": [...], "intercept": x,
//    "background_csv": "path"}   or   "background": [[...], ...]
// A relative background path is resolved against the JSON file's directory.
TabularModel LoadModel(const std::filesystem::path& path);
TabularModel ParseModel(const std::string& json_text,
                        const std::filesystem::path& base_dir);

void WriteFile(const std::filesystem::path& path, const std::string& content);

}  // namespace shapreg

#endif  // SHAPREG_IO_H_
