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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "shapreg/diagnostics.h"
#include "shapreg/error.h"
#include "shapreg/estimators.h"
#include "shapreg/games.h"
#include "shapreg/kernel.h"
#include "test_util.h"

namespace shapreg {
namespace {

using testing::Vec;
using testing::VectorNear;

EstimatorConfig Config(Variant variant, bool paired, std::uint64_t seed = 1) {
  EstimatorConfig config;
  config.variant = variant;
  config.paired = paired;
  config.seed = seed;
  config.max_samples = 200000;
  return config;
}

const VariantSpec kVariants[] = {{Variant::kUnbiased, false},
                                 {Variant::kUnbiased, true},
                                 {Variant::kOriginal, false},
                                 {Variant::kOriginal, true}};

TEST(SampleBContributionTest, Formulas) {
  const Coalition z = Coalition::FromMask(3, 0b101);
  const double vz = 2.0, vc = -1.0, v0 = 0.5;
  EXPECT_TRUE(VectorNear(SampleBContribution(Variant::kOriginal, z, vz, vc, v0, false),
                         Vec({1.5, 0.0, 1.5}), 0.0));
  EXPECT_TRUE(VectorNear(SampleBContribution(Variant::kUnbiased, z, vz, vc, v0, false),
                         Vec({1.75, -0.25, 1.75}), 0.0));
  const Eigen::VectorXd paired = Vec({0.75, -0.75, 0.75});
  EXPECT_TRUE(VectorNear(SampleBContribution(Variant::kOriginal, z, vz, vc, v0, true),
                         paired, 0.0));
  EXPECT_TRUE(VectorNear(SampleBContribution(Variant::kUnbiased, z, vz, vc, v0, true),
                         paired, 0.0));
}

TEST(SampleBContributionTest, UnbiasedForExactB) {
  // E[sample] over p(z) equals b = E[z (v(z) - v0)] for every variant.
  const RandomGame game(5, 4);
  const SubsetDistribution dist(5);
  const double v0 = game.Value(Coalition::Empty(5));
  const Eigen::VectorXd exact_b = ExactB(game);
  for (const auto& spec : kVariants) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(5);
    for (std::uint64_t mask = 1; mask < 31; ++mask) {
      const Coalition z = Coalition::FromMask(5, mask);
      mean += dist.Probability(z) *
              SampleBContribution(game, spec.variant, z, spec.paired, v0);
    }
    EXPECT_TRUE(VectorNear(mean, exact_b, 1e-14)) << spec.Name();
  }
}

TEST(EstimatorConfigTest, Validate) {
  EstimatorConfig config;
  EXPECT_NO_THROW(config.Validate());
  EXPECT_EQ(config.threshold, 0.01);
  EXPECT_TRUE(config.paired);
  config.threshold = 0.0;
  EXPECT_THROW(config.Validate(), Error);
  config = EstimatorConfig{};
  config.batch = 0;
  EXPECT_THROW(config.Validate(), Error);
  config = EstimatorConfig{};
  config.stop_on_convergence = false;
  EXPECT_THROW(config.Validate(), Error);
  config.max_samples = 10;
  EXPECT_NO_THROW(config.Validate());
  EXPECT_EQ(DefaultBatchSize(4), 512);
  EXPECT_EQ(DefaultBatchSize(100), 3200);
}

TEST(ConvergenceTest, RatioAndForecast) {
  const Eigen::VectorXd values = Vec({0.0, 1.0, 3.0});
  const Eigen::VectorXd errors = Vec({0.01, 0.06, 0.02});
  const ConvergenceStatus status = ConvergenceRatio(values, errors);
  EXPECT_DOUBLE_EQ(status.ratio, 0.02);
  EXPECT_FALSE(status.Converged(0.02));
  EXPECT_TRUE(status.Converged(0.021));
  // N = n (ratio / t)^2.
  EXPECT_EQ(ForecastSamples(values, errors, 1000, 0.01), 4000);
  EXPECT_EQ(ForecastSamples(Vec({1.0, 1.0}), Vec({0.1, 0.1}), 10, 0.01), std::nullopt);

  const ConvergenceStatus flat = ConvergenceRatio(Vec({2.0, 2.0}), Vec({0.0, 0.0}));
  EXPECT_EQ(flat.ratio, 0.0);
  EXPECT_TRUE(flat.degenerate_spread);
  EXPECT_TRUE(std::isinf(ConvergenceRatio(Vec({2.0, 2.0}), Vec({0.1, 0.0})).ratio));
}

TEST(EstimatorTest, SinglePlayerShortCircuit) {
  const InessentialGame game(1.0, Vec({2.5}));
  for (const auto& spec : kVariants) {
    const Estimate e = RunEstimator(game, Config(spec.variant, spec.paired));
    EXPECT_EQ(e.values[0], 2.5);
    EXPECT_TRUE(e.converged);
    EXPECT_EQ(e.game_evals, 0);
  }
}

TEST(EstimatorTest, OriginalIsExactOnInessentialGames) {
  const InessentialGame game(0.5, Vec({1.0, -2.0, 0.5, 0.0, 3.0, -1.0}));
  for (const bool paired : {false, true}) {
    const Estimate e = RunOriginal(game, Config(Variant::kOriginal, paired));
    EXPECT_TRUE(VectorNear(e.values, game.coefficients(), 1e-9));
    EXPECT_TRUE(e.converged);
  }
}

TEST(EstimatorTest, EfficiencyHoldsExactly) {
  const RandomGame game(7, 5);
  const double total = game.Value(Coalition::Full(7)) - game.Value(Coalition::Empty(7));
  for (const auto& spec : kVariants) {
    const Estimate e = RunEstimator(game, Config(spec.variant, spec.paired));
    EXPECT_NEAR(e.values.sum(), total, 1e-10) << spec.Name();
    EXPECT_EQ(e.total, total);
  }
}

TEST(EstimatorTest, ConvergesWithinThreeSigmaOfOracle) {
  const RandomGame game(8, 2);
  const Eigen::VectorXd oracle = ShapleyExact(game);
  for (const auto& spec : kVariants) {
    EstimatorConfig config = Config(spec.variant, spec.paired, 3);
    config.max_samples = 2'000'000;
    const Estimate e = RunEstimator(game, config);
    ASSERT_TRUE(e.converged) << spec.Name();
    const ConvergenceStatus status = ConvergenceRatio(e.values, e.std_errors);
    EXPECT_LT(status.ratio, 0.01 * 1.05) << spec.Name();
    for (int i = 0; i < 8; ++i) {
      EXPECT_LT(std::abs(e.values[i] - oracle[i]), 4.0 * e.std_errors[i] + 1e-12)
          << spec.Name() << " player " << i;
    }
  }
}

TEST(EstimatorTest, DeterministicUnderSeed) {
  const RandomGame game(6, 8);
  for (const auto& spec : kVariants) {
    const Estimate a = RunEstimator(game, Config(spec.variant, spec.paired, 17));
    const Estimate b = RunEstimator(game, Config(spec.variant, spec.paired, 17));
    const Estimate c = RunEstimator(game, Config(spec.variant, spec.paired, 18));
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.std_errors, b.std_errors);
    EXPECT_EQ(a.n, b.n);
    EXPECT_NE(a.values, c.values);
  }
}

TEST(EstimatorTest, FixedBudgetAndEvalCounts) {
  const RandomGame game(5, 1);
  for (const auto& spec : kVariants) {
    const Estimate e = RunEstimator(game, FixedBudgetConfig(spec, 3000, 2));
    EXPECT_EQ(e.n, 3000);
    EXPECT_EQ(e.game_evals, spec.paired ? 6000 : 3000);
    EXPECT_FALSE(e.converged);
    EXPECT_TRUE(e.has_covariance);
  }
}

TEST(EstimatorTest, SampleCapWithoutConvergence) {
  const RandomGame game(10, 1);
  EstimatorConfig config = Config(Variant::kUnbiased, false);
  config.threshold = 1e-4;
  config.max_samples = 2000;
  const Estimate e = RunEstimator(game, config);
  EXPECT_FALSE(e.converged);
  EXPECT_EQ(e.n, 2000);
  EXPECT_FALSE(e.forecasts.empty());
  EXPECT_GT(e.forecasts.back().forecast, 2000);
}

TEST(EstimatorTest, OriginalNeedsTwoIntermediatesForCovariance) {
  const RandomGame game(4, 1);
  EstimatorConfig config = FixedBudgetConfig({Variant::kOriginal, false}, 600, 1);
  const Estimate e = RunEstimator(game, config);
  EXPECT_EQ(e.intermediates, 1);
  EXPECT_FALSE(e.has_covariance);
  EXPECT_TRUE(std::isnan(e.std_errors[0]));
}

TEST(EstimatorTest, OriginalTooFewSamplesThrows) {
  const RandomGame game(6, 1);
  EstimatorConfig config = FixedBudgetConfig({Variant::kOriginal, false}, 2, 1);
  try {
    RunEstimator(game, config);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientSamples);
  }
}

TEST(EstimatorTest, ConstantGameConverges) {
  // Every sample contribution vanishes except for unpaired unbiased, whose
  // z v(z) - v0 / 2 term stays noisy, so it is checked separately.
  const FunctionGame game(5, [](const Coalition&) { return 3.0; });
  for (const auto& spec : kVariants) {
    if (spec.variant == Variant::kUnbiased && !spec.paired) continue;
    const Estimate e = RunEstimator(game, Config(spec.variant, spec.paired));
    EXPECT_TRUE(e.converged) << spec.Name();
    EXPECT_TRUE(e.degenerate_spread);
    EXPECT_TRUE(VectorNear(e.values, Eigen::VectorXd::Zero(5), 1e-12));
  }
  const Estimate noisy =
      RunEstimator(game, FixedBudgetConfig({Variant::kUnbiased, false}, 5000, 1));
  for (int i = 0; i < 5; ++i) EXPECT_LT(std::abs(noisy.values[i]), 4.0 * noisy.std_errors[i]);
}

TEST(EstimatorTest, BatchCallbackAndForecasts) {
  const RandomGame game(6, 3);
  EstimatorConfig config = Config(Variant::kUnbiased, true);
  config.batch = 256;
  std::vector<std::int64_t> seen;
  config.on_batch = [&seen](const BatchProgress& p) {
    seen.push_back(p.n);
    EXPECT_NE(p.values, nullptr);
  };
  const Estimate e = RunEstimator(game, config);
  ASSERT_FALSE(seen.empty());
  EXPECT_EQ(seen.front(), 256);
  EXPECT_EQ(seen.size(), e.forecasts.size());
}

TEST(StochasticEstimatorTest, DegenerateExogenousMatchesDeterministic) {
  const RandomGame game(6, 4);
  const FunctionStochasticGame stochastic(
      6, 1, [&game](const Coalition& z, std::size_t) { return game.Value(z); });
  for (const auto& spec : kVariants) {
    const EstimatorConfig config = Config(spec.variant, spec.paired, 5);
    const Estimate a = RunEstimator(game, config);
    const Estimate b = RunEstimator(stochastic, config);
    EXPECT_EQ(a.values, b.values) << spec.Name();
    EXPECT_EQ(a.std_errors, b.std_errors) << spec.Name();
    EXPECT_EQ(a.n, b.n);
  }
}

TEST(StochasticEstimatorTest, ConvergesToExpectedGame) {
  const FunctionStochasticGame game(4, 5, [](const Coalition& z, std::size_t u) {
    const double scale = 1.0 + static_cast<double>(u);
    return scale * (z.contains(0) ? 1.0 : 0.0) + (z.contains(1) && z.contains(2) ? 2.0 : 0.0) -
           0.5 * static_cast<double>(u) * (z.contains(3) ? 1.0 : 0.0);
  });
  const Eigen::VectorXd oracle = ShapleyExactStochastic(game);
  for (const auto& spec : kVariants) {
    // The wide spread stops this game within a few batches, so a small batch
    // gives the original variant enough intermediates for a stable sigma.
    EstimatorConfig config = Config(spec.variant, spec.paired, 9);
    config.batch = 128;
    const Estimate e = RunEstimator(game, config);
    ASSERT_TRUE(e.converged) << spec.Name();
    for (int i = 0; i < 4; ++i) {
      EXPECT_LT(std::abs(e.values[i] - oracle[i]), 4.0 * e.std_errors[i] + 1e-12)
          << spec.Name() << " player " << i;
    }
  }
}

}  // namespace
}  // namespace shapreg
