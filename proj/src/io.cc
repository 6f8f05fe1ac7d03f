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

#include "shapreg/io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "shapreg/error.h"

namespace shapreg {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string_view rest(line);
  while (true) {
    const auto comma = rest.find(',');
    fields.push_back(Trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return fields;
}

double ParseNumber(const std::string& field, const std::string& where) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::kConfiguration,
                where + ": '" + field + "' is not a number");
  }
  return value;
}

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

CsvTable ParseCsv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  CsvTable table;
  std::vector<std::vector<double>> rows;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    auto fields = SplitFields(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorKind::kConfiguration,
                  source + ":" + std::to_string(line_number) + ": expected " +
                      std::to_string(table.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      row.push_back(ParseNumber(f, source + ":" + std::to_string(line_number)));
    }
    rows.push_back(std::move(row));
  }
  if (table.header.empty()) {
    throw Error(ErrorKind::kConfiguration, source + ": missing header row");
  }
  table.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      table.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return table;
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  return ParseCsv(ReadAll(path), path.string());
}

int ColumnIndex(const CsvTable& table, const std::string& column) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == column) return static_cast<int>(i);
  }
  int index = -1;
  const auto [ptr, ec] =
      std::from_chars(column.data(), column.data() + column.size(), index);
  if (ec == std::errc() && ptr == column.data() + column.size() && index >= 0 &&
      index < static_cast<int>(table.header.size())) {
    return index;
  }
  throw Error(ErrorKind::kConfiguration, "unknown column '" + column + "'");
}

LabeledData SplitLabels(const CsvTable& table, int label_column) {
  const auto cols = table.data.cols();
  if (label_column < 0 || label_column >= cols) {
    throw Error(ErrorKind::kConfiguration, "label column out of range");
  }
  LabeledData out;
  out.labels = table.data.col(label_column);
  out.features.resize(table.data.rows(), cols - 1);
  for (Eigen::Index c = 0, k = 0; c < cols; ++c) {
    if (c == label_column) continue;
    out.features.col(k++) = table.data.col(c);
  }
  return out;
}

TabularModel ParseModel(const std::string& json_text,
                        const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kConfiguration, std::string("model JSON: ") + e.what());
  }
  try {
    TabularModel model;
    const std::string kind = j.value("kind", std::string("linear"));
    if (kind == "linear") {
      model.kind = TabularModel::Kind::kLinear;
    } else if (kind == "logistic") {
      model.kind = TabularModel::Kind::kLogistic;
    } else {
      throw Error(ErrorKind::kConfiguration, "model kind must be linear or logistic");
    }
    const auto coefficients = j.at("coefficients").get<std::vector<double>>();
    model.coefficients =
        Eigen::Map<const Eigen::VectorXd>(coefficients.data(),
                                          static_cast<Eigen::Index>(coefficients.size()));
    model.intercept = j.value("intercept", 0.0);
    if (j.contains("background_csv")) {
      std::filesystem::path p = j.at("background_csv").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      model.background = ReadCsv(p).data;
    } else if (j.contains("background")) {
      const auto rows = j.at("background").get<std::vector<std::vector<double>>>();
      model.background.resize(static_cast<Eigen::Index>(rows.size()),
                              static_cast<Eigen::Index>(coefficients.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != coefficients.size()) {
          throw Error(ErrorKind::kConfiguration, "background row width mismatch");
        }
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          model.background(static_cast<Eigen::Index>(r),
                           static_cast<Eigen::Index>(c)) = rows[r][c];
        }
      }
    } else {
      throw Error(ErrorKind::kConfiguration,
                  "model JSON needs background_csv or background");
    }
    model.Validate();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfiguration, std::string("model JSON: ") + e.what());
  }
}

TabularModel LoadModel(const std::filesystem::path& path) {
  return ParseModel(ReadAll(path), path.parent_path());
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace shapreg
