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

#ifndef SHAPREG_DIAGNOSTICS_H_
#define SHAPREG_DIAGNOSTICS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shapreg/estimators.h"
#include "shapreg/game.h"

namespace shapreg {

// Enumeration caps.
inline constexpr int kMaxExactPlayers = 20;
inline constexpr int kMaxStochasticExactPlayers = 16;
inline constexpr int kMaxWlsPlayers = 16;
inline constexpr int kMaxGvPlayers = 12;

// v(z) for every z, indexed by bitmask. Parallel over coalitions.
std::vector<double> ValueTable(const DeterministicGame& game);
// E_U[V(z, U)] for every z, indexed by bitmask.
std::vector<double> ExpectedValueTable(const StochasticGame& game);

// phi_i = sum over S not containing i of |S|! (d - |S| - 1)! / d!
// (v(S + i) - v(S)), from a value table. Parallel over players.
Eigen::VectorXd ShapleyFromTable(int players, const std::vector<double>& table);

// Brute-force Shapley values. Throws kTooLarge beyond kMaxExactPlayers.
Eigen::VectorXd ShapleyExact(const DeterministicGame& game);
// Shapley values of the expected game E_U[V(., U)].
Eigen::VectorXd ShapleyExactStochastic(const StochasticGame& game);

// b = sum_z p(z) z (v(z) - v(0)) by enumeration.
Eigen::VectorXd ExactB(const DeterministicGame& game);
// The constrained regression solved with exact A and exact b.
Eigen::VectorXd ExactWls(const DeterministicGame& game);

struct GvReport {
  Eigen::MatrixXd g;
  double min_diag = 0.0;
  double min_eigenvalue = 0.0;
  double max_asymmetry = 0.0;
  // Reported, never asserted: G_v need not be PSD in general.
  bool psd = false;
};

// G_v = -Cov(Z v(Z), (1 - Z) v(1 - Z)) under p(Z), by enumeration.
GvReport GvMatrix(const DeterministicGame& game);
// Closed form of the diagonal: (G_v)_ii = E[Z_i v(Z)]^2
// = (P(Z_i = 1) E[v(Z) | Z_i = 1])^2 = E[v(Z) | Z_i = 1]^2 / 4.
Eigen::VectorXd GvDiagonalClosedForm(const DeterministicGame& game);
// E[v(Z) | Z_i = 1] under p(Z).
Eigen::VectorXd ConditionalMeans(const DeterministicGame& game);

struct VariantSpec {
  Variant variant = Variant::kOriginal;
  bool paired = false;

  std::string Name() const;
};

// The four estimators in reporting order: unbiased, unbiased + paired,
// original, original + paired.
std::array<VariantSpec, 4> AllVariants();

// Config for a run that consumes exactly `samples` samples.
EstimatorConfig FixedBudgetConfig(VariantSpec spec, std::int64_t samples,
                                  std::uint64_t seed);

// Independent runs; run r uses seed DeriveSeed(base.seed, r). Parallel over
// runs, results in run order.
std::vector<Estimate> RunMany(const DeterministicGame& game,
                              const EstimatorConfig& base, int runs);
std::vector<Estimate> RunMany(const StochasticGame& game,
                              const EstimatorConfig& base, int runs);

// Sample covariance (runs - 1 denominator) of the estimates' values.
Eigen::MatrixXd EmpiricalCovariance(const std::vector<Estimate>& estimates);
Eigen::VectorXd MeanValues(const std::vector<Estimate>& estimates);

struct BiasVarianceReport {
  Eigen::VectorXd oracle;
  Eigen::VectorXd mean;
  Eigen::VectorXd bias;      // mean - oracle
  Eigen::VectorXd variance;  // per coordinate, runs denominator
  double bias_sq = 0.0;      // ||mean - oracle||^2
  double total_variance = 0.0;
  double mse = 0.0;          // mean ||estimate - oracle||^2
  double scale = 1.0;        // value-spread normalization applied to the game
  int runs = 0;
  std::int64_t n = 0;
  std::int64_t game_evals = 0;  // per run
};

// Runs the estimator `runs` times at n samples against the exact oracle.
// With `normalize`, the game is first rescaled to unit value spread
// (max_z v - min_z v = 1) so thresholds are comparable across games.
BiasVarianceReport BiasVariance(const DeterministicGame& game, VariantSpec spec,
                                std::int64_t n, int runs, std::uint64_t seed,
                                bool normalize = true);

// tr(Cov(values)) at a budget of `game_evals` evaluations per run (paired
// variants get half as many samples).
double TraceCovarianceAtBudget(const DeterministicGame& game, VariantSpec spec,
                               std::int64_t game_evals, int runs,
                               std::uint64_t seed);

// Speedup of `candidate` over `baseline`: tr(Cov(baseline)) / tr(Cov(candidate))
// at matched evaluation budgets, i.e. how many times more samples the baseline
// needs for the same mean squared error.
double SpeedupRatio(const DeterministicGame& game, VariantSpec candidate,
                    VariantSpec baseline, std::int64_t game_evals, int runs,
                    std::uint64_t seed);

struct ForecastRun {
  std::int64_t n_true = 0;
  bool converged = false;
  // Forecast / n_true using the last forecast at or before the given
  // fraction of n_true. NaN when no forecast was recorded by then.
  double ratio_quarter = 0.0;
  double ratio_half = 0.0;
  double ratio_three_quarters = 0.0;
};

struct ForecastSummary {
  std::vector<ForecastRun> runs;
  double fraction_half_within_2x = 0.0;
  double median_log_error_quarter = 0.0;
  double median_log_error_half = 0.0;
  double median_log_error_three_quarters = 0.0;
};

// Runs to convergence `runs` times and scores the recorded forecasts against
// the realized sample counts.
ForecastSummary ForecastStudy(const DeterministicGame& game,
                              const EstimatorConfig& config, int runs);

struct BenchReport {
  std::string game;
  std::int64_t n = 0;
  int runs = 0;
  std::vector<std::pair<VariantSpec, BiasVarianceReport>> variants;
  // n_i * tr(Cov) for each sweep size and each entry of AllVariants().
  std::vector<std::pair<std::int64_t, std::array<double, 4>>> sweep;
  struct Ratio {
    VariantSpec candidate;
    VariantSpec baseline;
    double ratio = 0.0;
  };
  std::vector<Ratio> ratios;
  VariantSpec forecast_variant;
  double forecast_threshold = 0.0;
  ForecastSummary forecast;
};

// Bias/variance for the four variants at n, an n-sweep over
// {n/2, n, 2n, 4n}, the six pairwise speedup ratios at a budget of n
// evaluations and a forecast study at `threshold`.
BenchReport RunBenchSuite(const DeterministicGame& game, const std::string& name,
                          std::int64_t n, int runs, std::uint64_t seed,
                          double threshold);

}  // namespace shapreg

#endif  // SHAPREG_DIAGNOSTICS_H_
