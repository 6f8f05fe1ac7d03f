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

#include "shapreg/report.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace shapreg {
namespace {

using json = nlohmann::ordered_json;

json Vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json Matrix(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

// Shortest representation that round-trips; empty for NaN.
std::string Number(double x) {
  if (std::isnan(x)) return "";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

json BiasVarianceJson(const BiasVarianceReport& r) {
  return {{"oracle", Vector(r.oracle)},   {"mean", Vector(r.mean)},
          {"bias", Vector(r.bias)},       {"variance", Vector(r.variance)},
          {"bias_sq", r.bias_sq},         {"total_variance", r.total_variance},
          {"mse", r.mse},                 {"scale", r.scale},
          {"runs", r.runs},               {"n", r.n},
          {"game_evals", r.game_evals}};
}

}  // namespace

Estimate ExactEstimate(const Eigen::VectorXd& values, std::int64_t game_evals) {
  Estimate e;
  e.values = values;
  e.std_errors = Eigen::VectorXd::Zero(values.size());
  e.covariance = Eigen::MatrixXd::Zero(values.size(), values.size());
  e.has_covariance = true;
  e.game_evals = game_evals;
  e.converged = true;
  e.total = values.sum();
  return e;
}

std::string FormatEstimate(const Estimate& estimate, Format format,
                           bool include_covariance) {
  const Eigen::VectorXd lo = estimate.CiLower();
  const Eigen::VectorXd hi = estimate.CiUpper();
  if (format == Format::kCsv) {
    std::ostringstream out;
    out << "index,value,std_error,ci_lo,ci_hi\n";
    for (Eigen::Index i = 0; i < estimate.values.size(); ++i) {
      out << i << ',' << Number(estimate.values[i]) << ','
          << Number(estimate.std_errors[i]) << ',' << Number(lo[i]) << ','
          << Number(hi[i]) << '\n';
    }
    return out.str();
  }
  json ci = json::array();
  for (Eigen::Index i = 0; i < lo.size(); ++i) ci.push_back({lo[i], hi[i]});
  json forecasts = json::array();
  for (const auto& f : estimate.forecasts) {
    forecasts.push_back({{"n", f.n}, {"forecast", f.forecast}});
  }
  json j = {{"values", Vector(estimate.values)},
            {"std_errors", Vector(estimate.std_errors)},
            {"ci95", std::move(ci)},
            {"covariance", include_covariance && estimate.has_covariance
                               ? Matrix(estimate.covariance)
                               : json(nullptr)},
            {"n_samples", estimate.n},
            {"game_evals", estimate.game_evals},
            {"converged", estimate.converged},
            {"forecasts", std::move(forecasts)}};
  return Dump(j);
}

std::string FormatGvReport(const GvReport& report,
                           const Eigen::VectorXd& closed_form_diag, Format format) {
  if (format == Format::kCsv) {
    std::ostringstream out;
    out << "index,diag,closed_form_diag\n";
    for (Eigen::Index i = 0; i < report.g.rows(); ++i) {
      out << i << ',' << Number(report.g(i, i)) << ',' << Number(closed_form_diag[i])
          << '\n';
    }
    return out.str();
  }
  json j = {{"g", Matrix(report.g)},
            {"diag", Vector(report.g.diagonal())},
            {"closed_form_diag", Vector(closed_form_diag)},
            {"min_diag", report.min_diag},
            {"min_eigenvalue", report.min_eigenvalue},
            {"max_asymmetry", report.max_asymmetry},
            {"psd", report.psd}};
  return Dump(j);
}

std::string FormatBenchReport(const BenchReport& report, Format format) {
  const auto variants = AllVariants();
  if (format == Format::kCsv) {
    std::ostringstream out;
    out << "section,label,baseline,n,runs,bias_sq,total_variance,mse";
    for (const auto& v : variants) out << ",n_trace_" << v.Name();
    out << ",ratio,fraction_half_within_2x,median_log_error_quarter,"
           "median_log_error_half,median_log_error_three_quarters\n";
    const std::string blank4 = ",,,,";
    for (const auto& [spec, bv] : report.variants) {
      out << "variant," << spec.Name() << ",," << bv.n << ',' << bv.runs << ','
          << Number(bv.bias_sq) << ',' << Number(bv.total_variance) << ','
          << Number(bv.mse) << blank4 << ",,,,,\n";
    }
    for (const auto& [size, products] : report.sweep) {
      out << "sweep,,," << size << ',' << report.runs << ",,,";
      for (const double p : products) out << ',' << Number(p);
      out << ",,,,,\n";
    }
    for (const auto& r : report.ratios) {
      out << "ratio," << r.candidate.Name() << ',' << r.baseline.Name() << ','
          << report.n << ',' << report.runs << ",,," << blank4 << ','
          << Number(r.ratio) << ",,,,\n";
    }
    const auto& f = report.forecast;
    out << "forecast," << report.forecast_variant.Name() << ",,,"
        << f.runs.size() << ",,," << blank4 << ",," << Number(f.fraction_half_within_2x)
        << ',' << Number(f.median_log_error_quarter) << ','
        << Number(f.median_log_error_half) << ','
        << Number(f.median_log_error_three_quarters) << '\n';
    return out.str();
  }
  json rows = json::array();
  for (const auto& [spec, bv] : report.variants) {
    json row = BiasVarianceJson(bv);
    row["variant"] = spec.Name();
    rows.push_back(std::move(row));
  }
  json sweep = json::array();
  for (const auto& [size, products] : report.sweep) {
    json row = {{"n", size}};
    for (std::size_t v = 0; v < variants.size(); ++v) {
      row["n_trace"][variants[v].Name()] = products[v];
    }
    sweep.push_back(std::move(row));
  }
  json ratios = json::array();
  for (const auto& r : report.ratios) {
    ratios.push_back({{"candidate", r.candidate.Name()},
                      {"baseline", r.baseline.Name()},
                      {"ratio", r.ratio}});
  }
  const auto& f = report.forecast;
  json forecast = {{"variant", report.forecast_variant.Name()},
                   {"threshold", report.forecast_threshold},
                   {"runs", f.runs.size()},
                   {"fraction_half_within_2x", f.fraction_half_within_2x},
                   {"median_log_error_quarter", f.median_log_error_quarter},
                   {"median_log_error_half", f.median_log_error_half},
                   {"median_log_error_three_quarters", f.median_log_error_three_quarters}};
  json j = {{"game", report.game},   {"n", report.n},         {"runs", report.runs},
            {"variants", rows},      {"sweep", sweep},        {"ratios", ratios},
            {"forecast", forecast}};
  return Dump(j);
}

}  // namespace shapreg
