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

#ifndef SHAPREG_GAMES_H_
#define SHAPREG_GAMES_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shapreg/game.h"
#include "shapreg/model.h"

namespace shapreg {

// Local explanation game: v(z) = E[f(x_S, X_{D\S})] with X drawn from the
// model's background rows.
class ShapGame : public DeterministicGame {
 public:
  ShapGame(TabularModel model, Eigen::VectorXd instance);

  int players() const override { return model_.features(); }
  double Value(const Coalition& z) const override;

  const TabularModel& model() const { return model_; }
  const Eigen::VectorXd& instance() const { return instance_; }

 private:
  TabularModel model_;
  Eigen::VectorXd instance_;
};

// SAGE: V(z, (x, y)) = -loss(E[f(x_S, X_{D\S})], y), with (x, y) drawn
// uniformly from the dataset rows.
class SageGame : public StochasticGame {
 public:
  SageGame(TabularModel model, RowMatrix dataset, Eigen::VectorXd labels,
           Loss loss);

  int players() const override { return model_.features(); }
  std::size_t exogenous_count() const override {
    return static_cast<std::size_t>(dataset_.rows());
  }
  double Value(const Coalition& z, std::size_t u) const override;

 private:
  TabularModel model_;
  RowMatrix dataset_;
  Eigen::VectorXd labels_;
  Loss loss_;
};

// Shapley Effects: V(z, x) = -loss(E[f(x_S, X_{D\S})], f(x)). With a logistic
// model and a cross entropy loss the full-model probability is a soft label.
class ShapleyEffectsGame : public StochasticGame {
 public:
  ShapleyEffectsGame(TabularModel model, RowMatrix dataset, Loss loss);

  int players() const override { return model_.features(); }
  std::size_t exogenous_count() const override {
    return static_cast<std::size_t>(dataset_.rows());
  }
  double Value(const Coalition& z, std::size_t u) const override;

 private:
  TabularModel model_;
  RowMatrix dataset_;
  Eigen::VectorXd full_predictions_;
  Loss loss_;
};

// v(z) = intercept + sum of coefficients over members.
class InessentialGame : public DeterministicGame {
 public:
  InessentialGame(double intercept, Eigen::VectorXd coefficients);

  int players() const override { return static_cast<int>(coefficients_.size()); }
  double Value(const Coalition& z) const override;

  const Eigen::VectorXd& coefficients() const { return coefficients_; }

 private:
  double intercept_;
  Eigen::VectorXd coefficients_;
};

// v(z) = 1 iff every member of the carrier T is present.
class UnanimityGame : public DeterministicGame {
 public:
  UnanimityGame(int players, std::vector<int> carrier);

  int players() const override { return players_; }
  double Value(const Coalition& z) const override;

 private:
  int players_;
  std::vector<int> carrier_;
};

// v(z) = 1 iff |z| > d / 2.
class MajorityGame : public DeterministicGame {
 public:
  explicit MajorityGame(int players);

  int players() const override { return players_; }
  double Value(const Coalition& z) const override;

 private:
  int players_;
};

// v(z) ~ Uniform[0, 1), i.i.d. across coalitions. Each value is a hash of
// (seed, z), so the game is a pure function without a memo table.
class RandomGame : public DeterministicGame {
 public:
  RandomGame(int players, std::uint64_t seed);

  int players() const override { return players_; }
  double Value(const Coalition& z) const override;

 private:
  int players_;
  std::uint64_t seed_;
};

// Parsed form of the `kind:key=value,...` synthetic game mini-language.
//
//   inessential:d=3,intercept=0.5,beta=1,2,3   (or seed=<u64> for random beta)
//   unanimity:d=3,T=1,2                       (1-based players)
//   majority:d=5
//   random:d=8,seed=7
struct SyntheticSpec {
  enum class Kind { kInessential, kUnanimity, kMajority, kRandom };

  Kind kind = Kind::kRandom;
  int players = 0;
  double intercept = 0.0;
  std::vector<double> coefficients;
  std::vector<int> carrier;  // 0-based
  std::uint64_t seed = 0;
};

// Throws a configuration error on unknown kinds, keys or malformed values.
SyntheticSpec ParseSyntheticSpec(const std::string& text);

std::unique_ptr<DeterministicGame> MakeSyntheticGame(const SyntheticSpec& spec);

}  // namespace shapreg

#endif  // SHAPREG_GAMES_H_
