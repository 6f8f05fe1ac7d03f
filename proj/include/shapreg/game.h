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

#ifndef SHAPREG_GAME_H_
#define SHAPREG_GAME_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "shapreg/coalition.h"
#include "shapreg/rng.h"

namespace shapreg {

// A cooperative game v: {0,1}^d -> R. Implementations are immutable after
// construction and may be evaluated concurrently.
class DeterministicGame {
 public:
  virtual ~DeterministicGame() = default;

  virtual int players() const = 0;
  virtual double Value(const Coalition& z) const = 0;

  double operator()(const Coalition& z) const { return Value(z); }
};

// A stochastic cooperative game V(z, u) whose exogenous variable u is drawn
// uniformly from a finite set {0, ..., exogenous_count() - 1}. The constraint
// means E_U[V(1, U)] and E_U[V(0, U)] are computed once by a full pass.
class StochasticGame {
 public:
  virtual ~StochasticGame() = default;

  virtual int players() const = 0;
  virtual std::size_t exogenous_count() const = 0;
  virtual double Value(const Coalition& z, std::size_t u) const = 0;

  std::size_t SampleExogenous(Rng& rng) const {
    return static_cast<std::size_t>(rng.UniformIndex(exogenous_count()));
  }

  double grand_mean() const { return grand_mean_; }
  double empty_mean() const { return empty_mean_; }

  // E_U[V(z, U)], summed in exogenous-index order.
  double ExpectedValue(const Coalition& z) const;

 protected:
  // Derived constructors call this once their state is complete.
  void InitializeMeans();

 private:
  double grand_mean_ = 0.0;
  double empty_mean_ = 0.0;
};

// Wraps an arbitrary callable as a deterministic game.
class FunctionGame : public DeterministicGame {
 public:
  using Fn = std::function<double(const Coalition&)>;
  FunctionGame(int players, Fn fn);

  int players() const override { return players_; }
  double Value(const Coalition& z) const override { return fn_(z); }

 private:
  int players_;
  Fn fn_;
};

// Wraps a callable (z, u) -> value over a finite exogenous set.
class FunctionStochasticGame : public StochasticGame {
 public:
  using Fn = std::function<double(const Coalition&, std::size_t)>;
  FunctionStochasticGame(int players, std::size_t exogenous_count, Fn fn);

  int players() const override { return players_; }
  std::size_t exogenous_count() const override { return count_; }
  double Value(const Coalition& z, std::size_t u) const override {
    return fn_(z, u);
  }

 private:
  int players_;
  std::size_t count_;
  Fn fn_;
};

// The expected game z -> E_U[V(z, U)]. Holds a reference; `game` must
// outlive the adaptor.
class ExpectedGame : public DeterministicGame {
 public:
  explicit ExpectedGame(const StochasticGame& game) : game_(game) {}

  int players() const override { return game_.players(); }
  double Value(const Coalition& z) const override {
    return game_.ExpectedValue(z);
  }

 private:
  const StochasticGame& game_;
};

// The deterministic slice z -> V(z, u) for one fixed exogenous value.
class ExogenousSlice : public DeterministicGame {
 public:
  ExogenousSlice(const StochasticGame& game, std::size_t u)
      : game_(game), u_(u) {}

  int players() const override { return game_.players(); }
  double Value(const Coalition& z) const override { return game_.Value(z, u_); }

 private:
  const StochasticGame& game_;
  std::size_t u_;
};

// z -> scale * (v(z) - offset).
class AffineGame : public DeterministicGame {
 public:
  AffineGame(const DeterministicGame& game, double scale, double offset)
      : game_(game), scale_(scale), offset_(offset) {}

  int players() const override { return game_.players(); }
  double Value(const Coalition& z) const override {
    return scale_ * (game_.Value(z) - offset_);
  }

 private:
  const DeterministicGame& game_;
  double scale_;
  double offset_;
};

}  // namespace shapreg

#endif  // SHAPREG_GAME_H_
