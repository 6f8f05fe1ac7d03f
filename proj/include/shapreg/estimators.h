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

#ifndef SHAPREG_ESTIMATORS_H_
#define SHAPREG_ESTIMATORS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shapreg/coalition.h"
#include "shapreg/game.h"

namespace shapreg {

// kOriginal is KernelSHAP: the sampled moment matrix A_n is solved exactly.
// kUnbiased keeps the exact A and estimates only b.
enum class Variant { kOriginal, kUnbiased };

const char* VariantName(Variant variant);

// Snapshot handed to EstimatorConfig::on_batch once per batch of samples.
struct BatchProgress {
  std::int64_t n = 0;
  double ratio = 0.0;
  std::optional<std::int64_t> forecast;
  const Eigen::VectorXd* values = nullptr;
  const Eigen::VectorXd* std_errors = nullptr;
};

struct EstimatorConfig {
  Variant variant = Variant::kOriginal;
  bool paired = true;
  // Stop once max std error < threshold * (max value - min value).
  double threshold = 0.01;
  // Samples per intermediate estimate (original) and per progress/forecast
  // record (both variants). Defaults to DefaultBatchSize(d).
  std::optional<std::int64_t> batch;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> max_samples;
  // The original variant may only stop once this many intermediate
  // estimates back its covariance.
  int min_intermediates = 4;
  // When false the run consumes exactly max_samples samples and never
  // evaluates the stopping rule.
  bool stop_on_convergence = true;
  std::function<void(const BatchProgress&)> on_batch;

  std::int64_t BatchSize(int players) const;
  // Throws a configuration error for invalid settings.
  void Validate() const;
};

std::int64_t DefaultBatchSize(int players);

struct ForecastPoint {
  std::int64_t n = 0;
  std::int64_t forecast = 0;
};

struct Estimate {
  Eigen::VectorXd values;
  // NaN entries when has_covariance is false.
  Eigen::VectorXd std_errors;
  // Estimated Cov(values), i.e. Sigma_beta / n.
  Eigen::MatrixXd covariance;
  bool has_covariance = false;
  std::int64_t n = 0;
  std::int64_t game_evals = 0;
  bool converged = false;
  bool degenerate_spread = false;
  std::int64_t intermediates = 0;
  std::int64_t skipped_intermediates = 0;
  std::vector<ForecastPoint> forecasts;
  // The efficiency constraint the values sum to.
  double total = 0.0;

  Eigen::VectorXd CiLower(double z = 1.96) const { return values - z * std_errors; }
  Eigen::VectorXd CiUpper(double z = 1.96) const { return values + z * std_errors; }
};

struct ConvergenceStatus {
  // max_i std_error_i / (max_i value_i - min_i value_i). Zero when every std
  // error is at or below the noise floor; infinite when only the spread
  // vanishes.
  double ratio = 0.0;
  bool degenerate_spread = false;

  bool Converged(double threshold) const { return ratio < threshold; }
};

// Relative size of the roundoff floor used by the estimators: std errors
// below kNoiseFloor * (largest |game value| seen) count as zero.
inline constexpr double kNoiseFloor = 1e-12;

ConvergenceStatus ConvergenceRatio(const Eigen::VectorXd& values,
                                   const Eigen::VectorXd& std_errors,
                                   double noise_floor = 0.0);

// N = n (ratio / t)^2, the total sample count at which the current ratio
// would reach t under 1/n variance decay. Empty when the spread is zero.
std::optional<std::int64_t> ForecastSamples(const Eigen::VectorXd& values,
                                            const Eigen::VectorXd& std_errors,
                                            std::int64_t n, double threshold);
std::optional<std::int64_t> ForecastSamples(const Estimate& estimate,
                                            double threshold);

// One sample's contribution to the running b estimate.
//   paired (both variants): (z v(z) + (1 - z) v(1 - z) - 1 v0) / 2
//   unpaired original:      z (v(z) - v0)
//   unpaired unbiased:      z v(z) - v0 / 2 * 1
// `complement_value` is ignored when unpaired.
Eigen::VectorXd SampleBContribution(Variant variant, const Coalition& z,
                                    double value, double complement_value,
                                    double v0, bool paired);
Eigen::VectorXd SampleBContribution(const DeterministicGame& game, Variant variant,
                                    const Coalition& z, bool paired, double v0);

// Deterministic games: constraint total v(1) - v(0).
Estimate RunOriginal(const DeterministicGame& game, const EstimatorConfig& config);
Estimate RunUnbiased(const DeterministicGame& game, const EstimatorConfig& config);
// Stochastic games: constraint total E_U[V(1, U)] - E_U[V(0, U)]. Each sample
// draws (z, u); the paired complement reuses u.
Estimate RunOriginalStochastic(const StochasticGame& game,
                               const EstimatorConfig& config);
Estimate RunUnbiasedStochastic(const StochasticGame& game,
                               const EstimatorConfig& config);

// Dispatch on config.variant.
Estimate RunEstimator(const DeterministicGame& game, const EstimatorConfig& config);
Estimate RunEstimator(const StochasticGame& game, const EstimatorConfig& config);

}  // namespace shapreg

#endif  // SHAPREG_ESTIMATORS_H_
