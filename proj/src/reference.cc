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

#include "shapreg/reference.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shapreg/coalition.h"
#include "shapreg/diagnostics.h"
#include "shapreg/error.h"
#include "shapreg/kernel.h"
#include "shapreg/rng.h"

namespace shapreg::reference {

Eigen::VectorXd PermutationShapley(const DeterministicGame& game) {
  const int d = game.players();
  if (d > kMaxPermutationPlayers) {
    throw Error(ErrorKind::kTooLarge, "permutation oracle is capped at d = 9");
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(d);
  long count = 0;
  do {
    Coalition z(d);
    double previous = game.Value(z);
    for (const int player : order) {
      z.set(player, true);
      const double current = game.Value(z);
      phi[player] += current - previous;
      previous = current;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return phi / static_cast<double>(count);
}

std::vector<double> ValueTable(const DeterministicGame& game) {
  const int d = game.players();
  if (d > kMaxExactPlayers) {
    throw Error(ErrorKind::kTooLarge, "value table is capped at d = 20");
  }
  const std::uint64_t count = std::uint64_t{1} << d;
  std::vector<double> table(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    table[mask] = game.Value(Coalition::FromMask(d, mask));
  }
  return table;
}

Eigen::VectorXd ShapleyFromTable(int players, const std::vector<double>& table) {
  const int d = players;
  const std::uint64_t count = std::uint64_t{1} << d;
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (mask & bit) continue;
      const int s = __builtin_popcountll(mask);
      const double weight = std::exp(-std::log(static_cast<double>(d)) -
                                     LogBinomial(d - 1, s));
      sum += weight * (table[mask | bit] - table[mask]);
    }
    phi[i] = sum;
  }
  return phi;
}

Eigen::VectorXd ShapleyExact(const DeterministicGame& game) {
  return reference::ShapleyFromTable(game.players(), reference::ValueTable(game));
}

Eigen::MatrixXd EnumeratedA(int players) {
  const int d = players;
  const SubsetDistribution dist(d);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  const std::uint64_t full = (std::uint64_t{1} << d) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const Coalition z = Coalition::FromMask(d, mask);
    const Eigen::VectorXd x = z.AsVector();
    a.noalias() += dist.Probability(z) * (x * x.transpose());
  }
  return a;
}

std::vector<Estimate> RunMany(const DeterministicGame& game,
                              const EstimatorConfig& base, int runs) {
  std::vector<Estimate> out;
  out.reserve(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r) {
    EstimatorConfig config = base;
    config.on_batch = nullptr;
    config.seed = DeriveSeed(base.seed, static_cast<std::uint64_t>(r));
    out.push_back(RunEstimator(game, config));
  }
  return out;
}

}  // namespace shapreg::reference
