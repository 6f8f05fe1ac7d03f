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

#include "shapreg/estimators.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shapreg/error.h"
#include "shapreg/kernel.h"
#include "shapreg/rng.h"
#include "shapreg/solver.h"

namespace shapreg {

const char* VariantName(Variant variant) {
  return variant == Variant::kUnbiased ? "unbiased" : "original";
}

std::int64_t DefaultBatchSize(int players) {
  return std::max<std::int64_t>(32 * static_cast<std::int64_t>(players), 512);
}

std::int64_t EstimatorConfig::BatchSize(int players) const {
  return batch ? *batch : DefaultBatchSize(players);
}

void EstimatorConfig::Validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::kConfiguration, "threshold must lie in (0, 1)");
  }
  if (batch && *batch < 1) {
    throw Error(ErrorKind::kConfiguration, "batch size must be positive");
  }
  if (max_samples && *max_samples < 1) {
    throw Error(ErrorKind::kConfiguration, "max_samples must be positive");
  }
  if (!stop_on_convergence && !max_samples) {
    throw Error(ErrorKind::kConfiguration,
                "a fixed-budget run needs max_samples");
  }
  if (min_intermediates < 2) {
    throw Error(ErrorKind::kConfiguration, "min_intermediates must be at least 2");
  }
}

ConvergenceStatus ConvergenceRatio(const Eigen::VectorXd& values,
                                   const Eigen::VectorXd& std_errors,
                                   double noise_floor) {
  ConvergenceStatus status;
  const double spread = values.maxCoeff() - values.minCoeff();
  const double max_error = std_errors.maxCoeff();
  status.degenerate_spread = !(spread > 0.0);
  if (max_error <= noise_floor) {
    status.ratio = 0.0;
  } else if (status.degenerate_spread) {
    status.ratio = std::numeric_limits<double>::infinity();
  } else {
    status.ratio = max_error / spread;
  }
  return status;
}

std::optional<std::int64_t> ForecastSamples(const Eigen::VectorXd& values,
                                            const Eigen::VectorXd& std_errors,
                                            std::int64_t n, double threshold) {
  const double spread = values.maxCoeff() - values.minCoeff();
  if (!(spread > 0.0) || !(threshold > 0.0)) return std::nullopt;
  // max_i sqrt(Sigma_ii) with Sigma = n * Cov(values).
  const double root_sigma = std_errors.maxCoeff() * std::sqrt(static_cast<double>(n));
  const double scaled = root_sigma / (threshold * spread);
  return std::llround(scaled * scaled);
}

std::optional<std::int64_t> ForecastSamples(const Estimate& estimate,
                                            double threshold) {
  if (!estimate.has_covariance) return std::nullopt;
  return ForecastSamples(estimate.values, estimate.std_errors, estimate.n,
                         threshold);
}

Eigen::VectorXd SampleBContribution(Variant variant, const Coalition& z,
                                    double value, double complement_value,
                                    double v0, bool paired) {
  const Eigen::VectorXd zv = z.AsVector();
  if (paired) {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(z.players());
    return 0.5 * (zv * value + (ones - zv) * complement_value - ones * v0);
  }
  if (variant == Variant::kOriginal) return zv * (value - v0);
  return zv * value - Eigen::VectorXd::Constant(z.players(), 0.5 * v0);
}

Eigen::VectorXd SampleBContribution(const DeterministicGame& game, Variant variant,
                                    const Coalition& z, bool paired, double v0) {
  const double value = game.Value(z);
  const double complement = paired ? game.Value(z.Complement()) : 0.0;
  return SampleBContribution(variant, z, value, complement, v0, paired);
}

namespace {

Estimate SinglePlayer(double v0, double v1) {
  Estimate out;
  out.values = Eigen::VectorXd::Constant(1, v1 - v0);
  out.std_errors = Eigen::VectorXd::Zero(1);
  out.covariance = Eigen::MatrixXd::Zero(1, 1);
  out.has_covariance = true;
  out.converged = true;
  out.total = v1 - v0;
  return out;
}

void EmitProgress(const EstimatorConfig& config, std::int64_t n,
                  const ConvergenceStatus& status,
                  std::optional<std::int64_t> forecast,
                  const Eigen::VectorXd& values,
                  const Eigen::VectorXd& std_errors) {
  if (!config.on_batch) return;
  BatchProgress progress;
  progress.n = n;
  progress.ratio = status.ratio;
  progress.forecast = forecast;
  progress.values = &values;
  progress.std_errors = &std_errors;
  config.on_batch(progress);
}

// Draws coalitions and fills the indicator vectors for z and 1 - z. `eval`
// receives (z, complement, paired) and returns {v(z), v(1 - z)}.
class CoalitionSampler {
 public:
  CoalitionSampler(int players, std::uint64_t seed)
      : dist_(players),
        rng_(seed, Stream::kCoalitions),
        z_(players),
        complement_(players),
        z_vec_(players),
        complement_vec_(players) {}

  void Next(bool paired) {
    dist_.Sample(rng_, z_, scratch_);
    for (int i = 0; i < z_.players(); ++i) {
      const bool in = z_.contains(i);
      z_vec_[i] = in ? 1.0 : 0.0;
      complement_vec_[i] = in ? 0.0 : 1.0;
      if (paired) complement_.set(i, !in);
    }
  }

  const Coalition& z() const { return z_; }
  const Coalition& complement() const { return complement_; }
  const Eigen::VectorXd& z_vec() const { return z_vec_; }
  const Eigen::VectorXd& complement_vec() const { return complement_vec_; }

 private:
  SubsetDistribution dist_;
  Rng rng_;
  Coalition z_;
  Coalition complement_;
  Eigen::VectorXd z_vec_;
  Eigen::VectorXd complement_vec_;
  std::vector<int> scratch_;
};

// Dataset sampling with intermediate estimates for the covariance.
template <typename Eval>
Estimate RunOriginalImpl(int d, double v0, double v1, Eval&& eval,
                         const EstimatorConfig& config) {
  config.Validate();
  if (d == 1) return SinglePlayer(v0, v1);

  const double total = v1 - v0;
  const std::int64_t m = config.BatchSize(d);
  const bool paired = config.paired;
  CoalitionSampler sampler(d, config.seed);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd a_temp = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd a_sample(d, d);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd b_temp = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd b_sample(d);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);

  // Welford over intermediate estimates.
  std::int64_t k = 0;
  Eigen::VectorXd est_mean = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd est_m2 = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd delta(d);

  Estimate out;
  out.total = total;
  std::int64_t n = 0;
  std::int64_t counter = 0;
  Eigen::VectorXd values;
  Eigen::VectorXd std_errors;
  double value_scale = std::max(std::abs(v0), std::abs(v1));

  while (!config.max_samples || n < *config.max_samples) {
    sampler.Next(paired);
    const auto& zv = sampler.z_vec();
    const auto& cv = sampler.complement_vec();
    const auto [value, complement_value] =
        eval(sampler.z(), sampler.complement(), paired);
    value_scale = std::max({value_scale, std::abs(value), std::abs(complement_value)});
    if (paired) {
      a_sample.noalias() = 0.5 * (zv * zv.transpose());
      a_sample.noalias() += 0.5 * (cv * cv.transpose());
      b_sample = 0.5 * (zv * value + cv * complement_value - ones * v0);
      out.game_evals += 2;
    } else {
      a_sample.noalias() = zv * zv.transpose();
      b_sample = zv * (value - v0);
      out.game_evals += 1;
    }

    ++n;
    ++counter;
    const double inv_n = 1.0 / static_cast<double>(n);
    const double inv_c = 1.0 / static_cast<double>(counter);
    a += (a_sample - a) * inv_n;
    b += (b_sample - b) * inv_n;
    a_temp += (a_sample - a_temp) * inv_c;
    b_temp += (b_sample - b_temp) * inv_c;

    if (counter != m) continue;

    try {
      const Eigen::VectorXd beta_m = SolveConstrained(a_temp, b_temp, total);
      ++k;
      delta = beta_m - est_mean;
      est_mean += delta / static_cast<double>(k);
      est_m2.noalias() += delta * (beta_m - est_mean).transpose();
    } catch (const DegenerateSystemError&) {
      ++out.skipped_intermediates;
    }
    counter = 0;
    a_temp.setZero();
    b_temp.setZero();

    if (!config.stop_on_convergence || k < 2) continue;
    try {
      values = SolveConstrained(a, b, total);
    } catch (const DegenerateSystemError&) {
      continue;
    }
    // Sigma_beta = m Cov(intermediates); std error = sqrt(diag / n).
    const Eigen::VectorXd sigma_diag =
        static_cast<double>(m) * est_m2.diagonal() / static_cast<double>(k - 1);
    std_errors = (sigma_diag * inv_n).cwiseMax(0.0).cwiseSqrt();
    const ConvergenceStatus status =
        ConvergenceRatio(values, std_errors, kNoiseFloor * value_scale);
    const auto forecast =
        ForecastSamples(values, std_errors, n, config.threshold);
    if (forecast) out.forecasts.push_back({n, *forecast});
    EmitProgress(config, n, status, forecast, values, std_errors);
    if (k >= config.min_intermediates && status.Converged(config.threshold)) {
      out.converged = true;
      break;
    }
  }

  try {
    out.values = SolveConstrained(a, b, total);
  } catch (const DegenerateSystemError& e) {
    throw Error(ErrorKind::kInsufficientSamples,
                std::string("sampled moment matrix is not invertible after ") +
                    std::to_string(n) + " samples: " + e.what());
  }
  out.n = n;
  out.intermediates = k;
  const double nd = static_cast<double>(n);
  if (k >= 2) {
    Eigen::MatrixXd cov = static_cast<double>(m) * est_m2 /
                          (static_cast<double>(k - 1) * nd);
    out.covariance = 0.5 * (cov + cov.transpose());
    out.std_errors = out.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
    out.has_covariance = true;
  } else {
    out.covariance = Eigen::MatrixXd::Constant(
        d, d, std::numeric_limits<double>::quiet_NaN());
    out.std_errors =
        Eigen::VectorXd::Constant(d, std::numeric_limits<double>::quiet_NaN());
  }
  if (out.has_covariance) {
    out.degenerate_spread = ConvergenceRatio(out.values, out.std_errors).degenerate_spread;
  }
  return out;
}

// Exact A with a Welford-tracked b and its covariance.
template <typename Eval>
Estimate RunUnbiasedImpl(int d, double v0, double v1, Eval&& eval,
                         const EstimatorConfig& config) {
  config.Validate();
  if (d == 1) return SinglePlayer(v0, v1);

  const double total = v1 - v0;
  const std::int64_t m = config.BatchSize(d);
  const bool paired = config.paired;
  const MomentMatrix a = ExactA(d);
  const ExactC c = ComputeC(a);
  CoalitionSampler sampler(d, config.seed);

  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd b_ssq = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd b_sample(d);
  Eigen::VectorXd diff(d);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
  const Eigen::VectorXd half_v0 = Eigen::VectorXd::Constant(d, 0.5 * v0);

  Estimate out;
  out.total = total;
  std::int64_t n = 0;
  Eigen::VectorXd values;
  Eigen::VectorXd std_errors;
  double value_scale = std::max(std::abs(v0), std::abs(v1));

  while (!config.max_samples || n < *config.max_samples) {
    sampler.Next(paired);
    const auto& zv = sampler.z_vec();
    const auto& cv = sampler.complement_vec();
    const auto [value, complement_value] =
        eval(sampler.z(), sampler.complement(), paired);
    value_scale = std::max({value_scale, std::abs(value), std::abs(complement_value)});
    if (paired) {
      b_sample = 0.5 * (zv * value + cv * complement_value - ones * v0);
      out.game_evals += 2;
    } else {
      b_sample = zv * value - half_v0;
      out.game_evals += 1;
    }

    ++n;
    const double nd = static_cast<double>(n);
    diff = b_sample - b;
    b += diff / nd;
    b_ssq.noalias() += diff * (b_sample - b).transpose();

    // Require one batch of samples before trusting the covariance estimate.
    if (!config.stop_on_convergence || n < m) continue;
    values = SolveConstrained(a, b, total);
    std_errors = (c.SandwichDiagonal(b_ssq / nd) / nd).cwiseMax(0.0).cwiseSqrt();
    const ConvergenceStatus status =
        ConvergenceRatio(values, std_errors, kNoiseFloor * value_scale);
    const bool converged = status.Converged(config.threshold);
    if (n % m == 0 || converged) {
      const auto forecast =
          ForecastSamples(values, std_errors, n, config.threshold);
      if (forecast) out.forecasts.push_back({n, *forecast});
      EmitProgress(config, n, status, forecast, values, std_errors);
    }
    if (converged) {
      out.converged = true;
      break;
    }
  }

  const double nd = static_cast<double>(n);
  out.n = n;
  out.values = SolveConstrained(a, b, total);
  // b_ssq / n is Sigma_b; Cov(beta_n) = C Sigma_b C^T / n.
  const Eigen::MatrixXd sigma_b = 0.5 * (b_ssq + b_ssq.transpose()) / nd;
  out.covariance = c.Sandwich(sigma_b) / nd;
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  out.std_errors = c.SandwichDiagonal(sigma_b).cwiseMax(0.0).cwiseSqrt() /
                   std::sqrt(nd);
  out.has_covariance = true;
  out.degenerate_spread = ConvergenceRatio(out.values, out.std_errors).degenerate_spread;
  return out;
}

struct DeterministicEval {
  const DeterministicGame& game;

  std::pair<double, double> operator()(const Coalition& z,
                                       const Coalition& complement,
                                       bool paired) const {
    return {game.Value(z), paired ? game.Value(complement) : 0.0};
  }
};

// Exogenous draws come from their own stream, so coalition sequences match
// the deterministic estimators under the same seed.
struct StochasticEval {
  const StochasticGame& game;
  Rng rng;

  std::pair<double, double> operator()(const Coalition& z,
                                       const Coalition& complement,
                                       bool paired) {
    const std::size_t u = game.SampleExogenous(rng);
    return {game.Value(z, u), paired ? game.Value(complement, u) : 0.0};
  }
};

double EmptyValue(const DeterministicGame& game) {
  return game.Value(Coalition::Empty(game.players()));
}

double FullValue(const DeterministicGame& game) {
  return game.Value(Coalition::Full(game.players()));
}

}  // namespace

Estimate RunOriginal(const DeterministicGame& game, const EstimatorConfig& config) {
  return RunOriginalImpl(game.players(), EmptyValue(game), FullValue(game),
                         DeterministicEval{game}, config);
}

Estimate RunUnbiased(const DeterministicGame& game, const EstimatorConfig& config) {
  return RunUnbiasedImpl(game.players(), EmptyValue(game), FullValue(game),
                         DeterministicEval{game}, config);
}

Estimate RunOriginalStochastic(const StochasticGame& game,
                               const EstimatorConfig& config) {
  StochasticEval eval{game, Rng(config.seed, Stream::kExogenous)};
  return RunOriginalImpl(game.players(), game.empty_mean(), game.grand_mean(),
                         eval, config);
}

Estimate RunUnbiasedStochastic(const StochasticGame& game,
                               const EstimatorConfig& config) {
  StochasticEval eval{game, Rng(config.seed, Stream::kExogenous)};
  return RunUnbiasedImpl(game.players(), game.empty_mean(), game.grand_mean(),
                         eval, config);
}

Estimate RunEstimator(const DeterministicGame& game, const EstimatorConfig& config) {
  return config.variant == Variant::kUnbiased ? RunUnbiased(game, config)
                                              : RunOriginal(game, config);
}

Estimate RunEstimator(const StochasticGame& game, const EstimatorConfig& config) {
  return config.variant == Variant::kUnbiased ? RunUnbiasedStochastic(game, config)
                                              : RunOriginalStochastic(game, config);
}

}  // namespace shapreg
