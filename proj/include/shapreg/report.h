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

#ifndef SHAPREG_REPORT_H_
#define SHAPREG_REPORT_H_

#include <string>

#include <Eigen/Core>

#include "shapreg/diagnostics.h"
#include "shapreg/estimators.h"

namespace shapreg {

enum class Format { kJson, kCsv };

// Wraps exact values as an Estimate with zero standard errors.
Estimate ExactEstimate(const Eigen::VectorXd& values, std::int64_t game_evals);

// JSON object with values, std_errors, ci95 ([lo, hi] per player),
// covariance (null unless requested), n_samples, game_evals, converged and
// forecasts. NaN is written as null. Ends with a newline.
std::string FormatEstimate(const Estimate& estimate, Format format,
                           bool include_covariance);

std::string FormatGvReport(const GvReport& report,
                           const Eigen::VectorXd& closed_form_diag, Format format);

// CSV: one row per variant, sweep size, speedup ratio and the forecast
// summary, distinguished by the section column.
std::string FormatBenchReport(const BenchReport& report, Format format);

}  // namespace shapreg

#endif  // SHAPREG_REPORT_H_
