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

#include "shapreg/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "shapreg/error.h"
#include "shapreg/kernel.h"
#include "shapreg/parallel.h"
#include "shapreg/rng.h"
#include "shapreg/solver.h"

namespace shapreg {
namespace {

void CheckEnumerable(int players, int cap, const char* what) {
  if (players > cap) {
    throw Error(ErrorKind::kTooLarge,
                std::string(what) + " enumerates all 2^d coalitions and is capped at d = " +
                    std::to_string(cap) + " (got d = " + std::to_string(players) +
                    "); use a sampling estimator instead");
  }
}

// Collects the first exception thrown inside a parallel loop.
class ExceptionSlot {
 public:
  void Capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!error_) error_ = std::current_exception();
  }
  void Rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

template <typename Fill>
std::vector<double> ParallelTable(int d, Fill&& fill) {
  const std::int64_t count = std::int64_t{1} << d;
  std::vector<double> table(static_cast<std::size_t>(count));
  ExceptionSlot slot;
  const int threads = MaxThreads();
  (void)threads;
  SHAPREG_OMP_PRAGMA("omp parallel num_threads(threads)")
  {
    Coalition z(d);
    SHAPREG_OMP_PRAGMA("omp for schedule(static)")
    for (std::int64_t mask = 0; mask < count; ++mask) {
      try {
        for (int i = 0; i < d; ++i) z.set(i, (mask >> i) & 1);
        table[static_cast<std::size_t>(mask)] = fill(z);
      } catch (...) {
        slot.Capture();
      }
    }
  }
  slot.Rethrow();
  return table;
}

// Shapley weight |S|! (d - |S| - 1)! / d! = 1 / (d C(d - 1, |S|)).
std::vector<double> MarginalWeights(int d) {
  std::vector<double> w(d);
  for (int s = 0; s < d; ++s) {
    w[s] = std::exp(-std::log(static_cast<double>(d)) - LogBinomial(d - 1, s));
  }
  if (d <= 50) {
    double c = 1.0;  // C(d - 1, s)
    for (int s = 0; s < d; ++s) {
      w[s] = 1.0 / (d * std::round(c));
      c = c * (d - 1 - s) / (s + 1);
    }
  }
  return w;
}

int PopCount(std::uint64_t x) { return __builtin_popcountll(x); }

std::vector<Estimate> RunManyImpl(int runs, const EstimatorConfig& base,
                                  const std::function<Estimate(const EstimatorConfig&)>& run) {
  if (runs < 1) throw Error(ErrorKind::kConfiguration, "runs must be positive");
  std::vector<Estimate> out(static_cast<std::size_t>(runs));
  ExceptionSlot slot;
  const int threads = MaxThreads();
  (void)threads;
  SHAPREG_OMP_PRAGMA("omp parallel for schedule(dynamic) num_threads(threads)")
  for (int r = 0; r < runs; ++r) {
    try {
      EstimatorConfig config = base;
      config.on_batch = nullptr;
      config.seed = DeriveSeed(base.seed, static_cast<std::uint64_t>(r));
      out[static_cast<std::size_t>(r)] = run(config);
    } catch (...) {
      slot.Capture();
    }
  }
  slot.Rethrow();
  return out;
}

double Median(std::vector<double> xs) {
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](double x) { return std::isnan(x); }),
           xs.end());
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  double m = xs[mid];
  if (xs.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(xs.begin(), xs.begin() + mid));
  }
  return m;
}

}  // namespace

std::vector<double> ValueTable(const DeterministicGame& game) {
  CheckEnumerable(game.players(), kMaxExactPlayers, "the value table");
  return ParallelTable(game.players(),
                       [&game](const Coalition& z) { return game.Value(z); });
}

std::vector<double> ExpectedValueTable(const StochasticGame& game) {
  CheckEnumerable(game.players(), kMaxStochasticExactPlayers,
                  "the expected value table");
  return ParallelTable(game.players(), [&game](const Coalition& z) {
    return game.ExpectedValue(z);
  });
}

Eigen::VectorXd ShapleyFromTable(int players, const std::vector<double>& table) {
  const int d = players;
  const std::uint64_t count = std::uint64_t{1} << d;
  if (table.size() != count) {
    throw Error(ErrorKind::kDomain, "value table size is not 2^d");
  }
  const std::vector<double> weights = MarginalWeights(d);
  Eigen::VectorXd phi(d);
  const int threads = MaxThreads();
  (void)threads;
  SHAPREG_OMP_PRAGMA("omp parallel for schedule(static) num_threads(threads)")
  for (int i = 0; i < d; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (mask & bit) continue;
      sum += weights[PopCount(mask)] * (table[mask | bit] - table[mask]);
    }
    phi[i] = sum;
  }
  return phi;
}

Eigen::VectorXd ShapleyExact(const DeterministicGame& game) {
  return ShapleyFromTable(game.players(), ValueTable(game));
}

Eigen::VectorXd ShapleyExactStochastic(const StochasticGame& game) {
  return ShapleyFromTable(game.players(), ExpectedValueTable(game));
}

Eigen::VectorXd ExactB(const DeterministicGame& game) {
  const int d = game.players();
  CheckEnumerable(d, kMaxWlsPlayers, "the exact regression");
  const SubsetDistribution dist(d);
  const std::vector<double> table = ValueTable(game);
  const double v0 = table.front();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  const std::uint64_t full = (std::uint64_t{1} << d) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const double weight =
        dist.Probability(Coalition::FromMask(d, mask)) * (table[mask] - v0);
    for (int i = 0; i < d; ++i) {
      if ((mask >> i) & 1) b[i] += weight;
    }
  }
  return b;
}

Eigen::VectorXd ExactWls(const DeterministicGame& game) {
  const int d = game.players();
  CheckEnumerable(d, kMaxWlsPlayers, "the exact regression");
  const double v0 = game.Value(Coalition::Empty(d));
  const double v1 = game.Value(Coalition::Full(d));
  if (d == 1) return Eigen::VectorXd::Constant(1, v1 - v0);
  return SolveConstrained(ExactA(d), ExactB(game), v1 - v0);
}

GvReport GvMatrix(const DeterministicGame& game) {
  const int d = game.players();
  CheckEnumerable(d, kMaxGvPlayers, "G_v");
  const SubsetDistribution dist(d);
  const std::vector<double> table = ValueTable(game);
  const std::uint64_t full = (std::uint64_t{1} << d) - 1;

  // X = Z v(Z), Y = (1 - Z) v(1 - Z).
  Eigen::VectorXd mean_x = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd mean_y = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd x(d), y(d);
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const Coalition z = Coalition::FromMask(d, mask);
    const double p = dist.Probability(z);
    const double vz = table[mask];
    const double vc = table[full ^ mask];
    for (int i = 0; i < d; ++i) {
      const bool in = (mask >> i) & 1;
      x[i] = in ? vz : 0.0;
      y[i] = in ? 0.0 : vc;
    }
    mean_x += p * x;
    mean_y += p * y;
    cross.noalias() += p * (x * y.transpose());
  }
  GvReport report;
  report.g = -(cross - mean_x * mean_y.transpose());
  report.max_asymmetry = (report.g - report.g.transpose()).cwiseAbs().maxCoeff();
  report.min_diag = report.g.diagonal().minCoeff();
  const Eigen::MatrixXd sym = 0.5 * (report.g + report.g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = eig.eigenvalues().minCoeff();
  report.psd = report.min_eigenvalue >= -1e-8;
  return report;
}

Eigen::VectorXd ConditionalMeans(const DeterministicGame& game) {
  const int d = game.players();
  CheckEnumerable(d, kMaxGvPlayers, "conditional means");
  const SubsetDistribution dist(d);
  const std::vector<double> table = ValueTable(game);
  const std::uint64_t full = (std::uint64_t{1} << d) - 1;
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(d);
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const double p = dist.Probability(Coalition::FromMask(d, mask));
    for (int i = 0; i < d; ++i) {
      if ((mask >> i) & 1) {
        mass[i] += p;
        weighted[i] += p * table[mask];
      }
    }
  }
  return weighted.cwiseQuotient(mass);
}

Eigen::VectorXd GvDiagonalClosedForm(const DeterministicGame& game) {
  // E[Z_i v(Z)] = P(Z_i = 1) E[v | Z_i = 1] with P(Z_i = 1) = 1/2.
  const Eigen::VectorXd first_moment = 0.5 * ConditionalMeans(game);
  return first_moment.cwiseProduct(first_moment);
}

std::string VariantSpec::Name() const {
  return std::string(VariantName(variant)) + (paired ? "+paired" : "");
}

std::array<VariantSpec, 4> AllVariants() {
  return {VariantSpec{Variant::kUnbiased, false}, VariantSpec{Variant::kUnbiased, true},
          VariantSpec{Variant::kOriginal, false}, VariantSpec{Variant::kOriginal, true}};
}

EstimatorConfig FixedBudgetConfig(VariantSpec spec, std::int64_t samples,
                                  std::uint64_t seed) {
  EstimatorConfig config;
  config.variant = spec.variant;
  config.paired = spec.paired;
  config.seed = seed;
  config.max_samples = samples;
  config.stop_on_convergence = false;
  return config;
}

std::vector<Estimate> RunMany(const DeterministicGame& game,
                              const EstimatorConfig& base, int runs) {
  return RunManyImpl(runs, base, [&game](const EstimatorConfig& config) {
    return RunEstimator(game, config);
  });
}

std::vector<Estimate> RunMany(const StochasticGame& game,
                              const EstimatorConfig& base, int runs) {
  return RunManyImpl(runs, base, [&game](const EstimatorConfig& config) {
    return RunEstimator(game, config);
  });
}

Eigen::VectorXd MeanValues(const std::vector<Estimate>& estimates) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(estimates.front().values.size());
  for (const auto& e : estimates) mean += e.values;
  return mean / static_cast<double>(estimates.size());
}

Eigen::MatrixXd EmpiricalCovariance(const std::vector<Estimate>& estimates) {
  if (estimates.size() < 2) {
    throw Error(ErrorKind::kDomain, "covariance needs at least two runs");
  }
  const Eigen::VectorXd mean = MeanValues(estimates);
  const auto d = mean.size();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& e : estimates) {
    const Eigen::VectorXd centered = e.values - mean;
    cov.noalias() += centered * centered.transpose();
  }
  return cov / static_cast<double>(estimates.size() - 1);
}

BiasVarianceReport BiasVariance(const DeterministicGame& game, VariantSpec spec,
                                std::int64_t n, int runs, std::uint64_t seed,
                                bool normalize) {
  CheckEnumerable(game.players(), kMaxWlsPlayers, "bias/variance");
  double scale = 1.0;
  double offset = 0.0;
  if (normalize) {
    const std::vector<double> table = ValueTable(game);
    const auto [lo, hi] = std::minmax_element(table.begin(), table.end());
    if (*hi > *lo) scale = 1.0 / (*hi - *lo);
    offset = *lo;
  }
  const AffineGame scaled(game, scale, offset);

  BiasVarianceReport report;
  report.scale = scale;
  report.runs = runs;
  report.n = n;
  report.oracle = ShapleyExact(scaled);
  const auto estimates = RunMany(scaled, FixedBudgetConfig(spec, n, seed), runs);
  report.game_evals = estimates.front().game_evals;
  report.mean = MeanValues(estimates);
  report.bias = report.mean - report.oracle;
  report.variance = Eigen::VectorXd::Zero(report.mean.size());
  double mse = 0.0;
  for (const auto& e : estimates) {
    report.variance += (e.values - report.mean).cwiseAbs2();
    mse += (e.values - report.oracle).squaredNorm();
  }
  report.variance /= static_cast<double>(runs);
  report.bias_sq = report.bias.squaredNorm();
  report.total_variance = report.variance.sum();
  report.mse = mse / static_cast<double>(runs);
  return report;
}

double TraceCovarianceAtBudget(const DeterministicGame& game, VariantSpec spec,
                               std::int64_t game_evals, int runs,
                               std::uint64_t seed) {
  const std::int64_t samples = spec.paired ? game_evals / 2 : game_evals;
  return EmpiricalCovariance(
             RunMany(game, FixedBudgetConfig(spec, samples, seed), runs))
      .trace();
}

double SpeedupRatio(const DeterministicGame& game, VariantSpec candidate,
                    VariantSpec baseline, std::int64_t game_evals, int runs,
                    std::uint64_t seed) {
  const double base = TraceCovarianceAtBudget(game, baseline, game_evals, runs,
                                              DeriveSeed(seed, 1));
  const double cand = TraceCovarianceAtBudget(game, candidate, game_evals, runs,
                                              DeriveSeed(seed, 2));
  return base / cand;
}

ForecastSummary ForecastStudy(const DeterministicGame& game,
                              const EstimatorConfig& config, int runs) {
  const auto estimates = RunMany(game, config, runs);
  ForecastSummary summary;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> err_q, err_h, err_t;
  int within = 0;
  for (const auto& e : estimates) {
    ForecastRun run;
    run.n_true = e.n;
    run.converged = e.converged;
    auto at = [&](double fraction) {
      const double limit = fraction * static_cast<double>(e.n);
      double ratio = nan;
      for (const auto& point : e.forecasts) {
        if (static_cast<double>(point.n) > limit) break;
        ratio = static_cast<double>(point.forecast) / static_cast<double>(e.n);
      }
      return ratio;
    };
    run.ratio_quarter = at(0.25);
    run.ratio_half = at(0.5);
    run.ratio_three_quarters = at(0.75);
    if (run.ratio_half >= 0.5 && run.ratio_half <= 2.0) ++within;
    err_q.push_back(std::abs(std::log(run.ratio_quarter)));
    err_h.push_back(std::abs(std::log(run.ratio_half)));
    err_t.push_back(std::abs(std::log(run.ratio_three_quarters)));
    summary.runs.push_back(run);
  }
  summary.fraction_half_within_2x = static_cast<double>(within) / runs;
  summary.median_log_error_quarter = Median(err_q);
  summary.median_log_error_half = Median(err_h);
  summary.median_log_error_three_quarters = Median(err_t);
  return summary;
}

BenchReport RunBenchSuite(const DeterministicGame& game, const std::string& name,
                          std::int64_t n, int runs, std::uint64_t seed,
                          double threshold) {
  if (n < 4) throw Error(ErrorKind::kConfiguration, "bench needs n >= 4");
  BenchReport report;
  report.game = name;
  report.n = n;
  report.runs = runs;
  const auto variants = AllVariants();

  for (std::size_t v = 0; v < variants.size(); ++v) {
    report.variants.emplace_back(
        variants[v], BiasVariance(game, variants[v], n, runs, DeriveSeed(seed, 10 + v)));
  }

  for (const std::int64_t size : {n / 2, n, 2 * n, 4 * n}) {
    std::array<double, 4> products{};
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const auto estimates =
          RunMany(game, FixedBudgetConfig(variants[v], size, DeriveSeed(DeriveSeed(seed, 100 + v), static_cast<std::uint64_t>(size))),
                  runs);
      products[v] = static_cast<double>(size) * EmpiricalCovariance(estimates).trace();
    }
    report.sweep.emplace_back(size, products);
  }

  std::array<double, 4> traces{};
  for (std::size_t v = 0; v < variants.size(); ++v) {
    traces[v] = TraceCovarianceAtBudget(game, variants[v], n, runs, DeriveSeed(seed, 200 + v));
  }
  for (std::size_t i = 0; i < variants.size(); ++i) {
    for (std::size_t j = i + 1; j < variants.size(); ++j) {
      // Later entries of AllVariants() are the expected faster estimators.
      report.ratios.push_back({variants[j], variants[i], traces[i] / traces[j]});
    }
  }

  report.forecast_variant = {Variant::kUnbiased, true};
  report.forecast_threshold = threshold;
  EstimatorConfig config;
  config.variant = report.forecast_variant.variant;
  config.paired = report.forecast_variant.paired;
  config.threshold = threshold;
  config.seed = DeriveSeed(seed, 300);
  config.max_samples = std::int64_t{1} << 22;
  report.forecast = ForecastStudy(game, config, runs);
  return report;
}

}  // namespace shapreg
