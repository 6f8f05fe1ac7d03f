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

#include "shapreg/model.h"

#include <algorithm>
#include <cmath>

#include "shapreg/error.h"

namespace shapreg {
namespace {

double Link(TabularModel::Kind kind, double score) {
  if (kind == TabularModel::Kind::kLogistic) {
    return 1.0 / (1.0 + std::exp(-score));
  }
  return score;
}

}  // namespace

void TabularModel::Validate() const {
  if (coefficients.size() == 0) {
    throw Error(ErrorKind::kConfiguration, "model has no coefficients");
  }
  if (background.cols() != coefficients.size()) {
    throw Error(ErrorKind::kConfiguration,
                "background has " + std::to_string(background.cols()) +
                    " columns but the model has " +
                    std::to_string(coefficients.size()) + " coefficients");
  }
  if (background.rows() < 1 || background.rows() > kMaxBackgroundRows) {
    throw Error(ErrorKind::kConfiguration,
                "background must have between 1 and " +
                    std::to_string(kMaxBackgroundRows) + " rows");
  }
  if (!coefficients.allFinite() || !std::isfinite(intercept) ||
      !background.allFinite()) {
    throw Error(ErrorKind::kConfiguration, "model contains non-finite values");
  }
}

double TabularModel::Predict(std::span<const double> x) const {
  double score = intercept;
  for (int i = 0; i < features(); ++i) score += coefficients[i] * x[i];
  return Link(kind, score);
}

double TabularModel::ImputedPrediction(const Coalition& z,
                                       std::span<const double> x) const {
  const int p = features();
  if (z.size() == p) return Predict(x);

  // Features in the coalition contribute the same score to every row.
  double fixed = intercept;
  for (int i = 0; i < p; ++i) {
    if (z.contains(i)) fixed += coefficients[i] * x[i];
  }
  double total = 0.0;
  for (Eigen::Index r = 0; r < background.rows(); ++r) {
    const double* row = background.row(r).data();
    double score = fixed;
    for (int i = 0; i < p; ++i) {
      if (!z.contains(i)) score += coefficients[i] * row[i];
    }
    total += Link(kind, score);
  }
  return total / static_cast<double>(background.rows());
}

const char* ModelKindName(TabularModel::Kind kind) {
  return kind == TabularModel::Kind::kLogistic ? "logistic" : "linear";
}

const char* LossName(Loss loss) {
  switch (loss) {
    case Loss::kSquared:
      return "squared";
    case Loss::kCrossEntropy:
      return "cross_entropy";
    case Loss::kSoftCrossEntropy:
      return "soft_cross_entropy";
  }
  return "unknown";
}

double EvaluateLoss(Loss loss, double prediction, double target) {
  if (loss == Loss::kSquared) {
    const double diff = prediction - target;
    return diff * diff;
  }
  constexpr double kEps = 1e-12;
  const double p = std::clamp(prediction, kEps, 1.0 - kEps);
  return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

}  // namespace shapreg
