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

#ifndef SHAPREG_MODEL_H_
#define SHAPREG_MODEL_H_

#include <span>
#include <string>

#include <Eigen/Core>

#include "shapreg/coalition.h"

namespace shapreg {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Marginal imputation averages over every background row, so the row count is
// capped to keep a single game evaluation cheap.
inline constexpr int kMaxBackgroundRows = 512;

// A fixed linear or logistic model with the background sample used to
// marginalize out removed features.
struct TabularModel {
  enum class Kind { kLinear, kLogistic };

  Kind kind = Kind::kLinear;
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  RowMatrix background;

  int features() const { return static_cast<int>(coefficients.size()); }

  // Throws a configuration error when the coefficients and background disagree.
  void Validate() const;

  double Predict(std::span<const double> x) const;

  // Mean over background rows r of f(x where z_i = 1, r where z_i = 0).
  // The full coalition returns Predict(x) exactly.
  double ImputedPrediction(const Coalition& z, std::span<const double> x) const;
};

const char* ModelKindName(TabularModel::Kind kind);

enum class Loss { kSquared, kCrossEntropy, kSoftCrossEntropy };

const char* LossName(Loss loss);

// Cross entropy variants clamp the prediction to [1e-12, 1 - 1e-12].
double EvaluateLoss(Loss loss, double prediction, double target);

}  // namespace shapreg

#endif  // SHAPREG_MODEL_H_
